"""Immutable undirected simple graphs with canonical edge storage.

Nodes are 0-based integers. Edges are stored once each as (u, v) with u < v.
Adjacency is kept in CSR form (int64 indptr/indices with sorted neighbor
lists) so the refinement and census kernels can run directly on the arrays.
"""

from __future__ import annotations

import numpy as np

from .errors import LabelLengthError, NodeIndexError, SelfLoopError


class Graph:
    """An undirected simple graph, frozen after construction.

    Instances should be created through :func:`build_graph`, which
    canonicalizes the edge list. Graphs are safe to share across threads.
    """

    __slots__ = ("node_count", "edges", "node_labels", "graph_id",
                 "indptr", "indices", "_adjacency")

    def __init__(self, node_count, edges, node_labels, graph_id,
                 indptr, indices):
        object.__setattr__(self, "node_count", node_count)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "node_labels", node_labels)
        object.__setattr__(self, "graph_id", graph_id)
        object.__setattr__(self, "indptr", indptr)
        object.__setattr__(self, "indices", indices)
        object.__setattr__(self, "_adjacency", None)

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    @property
    def edge_count(self):
        return len(self.edges)

    @property
    def has_labels(self):
        return self.node_labels is not None

    def neighbors(self, v):
        """Sorted neighbor indices of ``v`` as a list."""
        return self.indices[self.indptr[v]:self.indptr[v + 1]].tolist()

    def degree(self, v):
        return int(self.indptr[v + 1] - self.indptr[v])

    @property
    def adjacency(self):
        """Per-node sorted neighbor tuples (the adjacency view)."""
        if self._adjacency is None:
            adj = tuple(
                tuple(self.indices[self.indptr[v]:self.indptr[v + 1]].tolist())
                for v in range(self.node_count)
            )
            object.__setattr__(self, "_adjacency", adj)
        return self._adjacency

    def relabel(self, node_labels):
        """Copy of this graph with different node labels (or None)."""
        if node_labels is not None:
            node_labels = tuple(int(x) for x in node_labels)
            if len(node_labels) != self.node_count:
                raise LabelLengthError(len(node_labels), self.node_count)
        return Graph(self.node_count, self.edges, node_labels, self.graph_id,
                     self.indptr, self.indices)

    def permuted(self, perm):
        """Graph with node i renamed to perm[i] (a test/diagnostic helper)."""
        edges = [(perm[u], perm[v]) for u, v in self.edges]
        labels = None
        if self.node_labels is not None:
            labels = [0] * self.node_count
            for i, lab in enumerate(self.node_labels):
                labels[perm[i]] = lab
        return build_graph(self.node_count, edges, labels, graph_id=self.graph_id)

    def __repr__(self):
        lab = "labeled" if self.has_labels else "unlabeled"
        return (f"Graph(id={self.graph_id!r}, n={self.node_count}, "
                f"m={self.edge_count}, {lab})")


def build_graph(node_count, edge_list, node_labels=None, graph_id=None):
    """Construct a canonical :class:`Graph`.

    Duplicate edges and reversed duplicates collapse to a single undirected
    edge stored as (min, max). Raises ``SelfLoopError``, ``NodeIndexError``
    or ``LabelLengthError`` on invalid input.
    """
    node_count = int(node_count)
    if node_count < 0:
        raise NodeIndexError(node_count, 0)

    canonical = set()
    for u, v in edge_list:
        u = int(u)
        v = int(v)
        if u == v:
            raise SelfLoopError(u)
        for w in (u, v):
            if not 0 <= w < node_count:
                raise NodeIndexError(w, node_count)
        if u > v:
            u, v = v, u
        canonical.add((u, v))
    edges = tuple(sorted(canonical))

    if node_labels is not None:
        node_labels = tuple(int(x) for x in node_labels)
        if len(node_labels) != node_count:
            raise LabelLengthError(len(node_labels), node_count)

    indptr, indices = _build_csr(node_count, edges)
    return Graph(node_count, edges, node_labels, graph_id, indptr, indices)


def _build_csr(node_count, edges):
    if not edges:
        indptr = np.zeros(node_count + 1, dtype=np.int64)
        indices = np.zeros(0, dtype=np.int64)
        return indptr, indices
    arr = np.asarray(edges, dtype=np.int64)
    src = np.concatenate([arr[:, 0], arr[:, 1]])
    dst = np.concatenate([arr[:, 1], arr[:, 0]])
    order = np.lexsort((dst, src))
    src = src[order]
    dst = dst[order]
    counts = np.bincount(src, minlength=node_count)
    indptr = np.zeros(node_count + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    return indptr, np.ascontiguousarray(dst)


def degree_sequence(g):
    """Non-decreasing sequence of node degrees."""
    degs = np.diff(g.indptr)
    return tuple(int(d) for d in np.sort(degs))
