"""Exact graph isomorphism and dataset isomorphism classes.

The pairwise refinement test is a sound non-isomorphism certificate; the
backtracking matcher settles the pairs refinement cannot separate. Stable
refinement colors are used both as the bucketing key over a dataset and as
the candidate-filtering invariant inside the matcher, which is safe because
isomorphic graphs always receive identical color histograms.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import IsomorphismTimeout, MissingLabelsError
from .graph import degree_sequence
from .refine import ColorTable, _histogram, initial_coloring, stable_dataset_signatures

DEFAULT_NODE_BUDGET = 10_000_000


@dataclass(frozen=True)
class WlTestResult:
    """Outcome of the pairwise refinement test.

    ``distinguished`` with ``iteration`` k means the histograms first differ
    at iteration k (the graphs are certainly non-isomorphic). Otherwise the
    histograms agreed through ``iteration``; ``stabilized`` tells whether the
    joint coloring reached a fixed partition or the iteration cap.
    """

    distinguished: bool
    iteration: int
    stabilized: bool = True

    @property
    def verdict(self):
        if self.distinguished:
            return f"distinguished at k={self.iteration}"
        how = "stable at" if self.stabilized else "iteration cap"
        return f"indistinguishable ({how} k={self.iteration})"


def wl_test(g, h, use_labels=False, max_k=None):
    """Joint refinement of two graphs under a shared fresh color table.

    Returns Distinguished at the first iteration whose histograms differ,
    else Indistinguishable once both partitions are stable (or max_k is hit).
    """
    if max_k is None:
        max_k = g.node_count + h.node_count + 1
    if max_k < 1:
        raise ValueError("max_k must be >= 1")
    table = ColorTable()
    cols = []
    for x in (g, h):
        if use_labels and x.node_labels is None:
            raise MissingLabelsError(x.graph_id)
        cols.append(np.asarray(initial_coloring(x, use_labels, table).colors,
                               dtype=np.int64))
    prev_classes = [len(np.unique(c)) if len(c) else 0 for c in cols]
    if _histogram(0, cols[0]) != _histogram(0, cols[1]):
        return WlTestResult(True, 0)
    for k in range(1, max_k + 1):
        cols = [table.refine_colors(x, c) for x, c in zip((g, h), cols)]
        if _histogram(k, cols[0]) != _histogram(k, cols[1]):
            return WlTestResult(True, k)
        classes = [len(np.unique(c)) if len(c) else 0 for c in cols]
        if classes == prev_classes:
            return WlTestResult(False, k - 1, stabilized=True)
        prev_classes = classes
    return WlTestResult(False, max_k, stabilized=False)


def _pairs(colors):
    return _histogram(0, colors).pairs


def _stable_pair_colors(g, h, use_labels):
    """Stable joint colors for both graphs, or None if histograms separate."""
    table = ColorTable()
    cols = [
        np.asarray(initial_coloring(x, use_labels, table).colors, dtype=np.int64)
        for x in (g, h)
    ]
    prev = [len(np.unique(c)) if len(c) else 0 for c in cols]
    for _ in range(g.node_count + h.node_count + 2):
        if _pairs(cols[0]) != _pairs(cols[1]):
            return None
        cols = [table.refine_colors(x, c) for x, c in zip((g, h), cols)]
        classes = [len(np.unique(c)) if len(c) else 0 for c in cols]
        if classes == prev:
            break
        prev = classes
    if _pairs(cols[0]) != _pairs(cols[1]):
        return None
    return cols


def _resolve_use_labels(g, h, use_labels):
    if use_labels is None:
        return g.has_labels and h.has_labels
    return use_labels


def exact_isomorphic(g, h, use_labels=None, budget=DEFAULT_NODE_BUDGET):
    """True iff an edge-preserving (and, when labels are in play,
    label-preserving) bijection exists.

    ``use_labels=None`` respects labels when both graphs carry them. Raises
    :class:`IsomorphismTimeout` when the search exceeds ``budget`` node
    expansions; a timeout means unknown, never false.
    """
    return isomorphism_witness(g, h, use_labels=use_labels, budget=budget) is not None


def isomorphism_witness(g, h, use_labels=None, budget=DEFAULT_NODE_BUDGET):
    """Node bijection g -> h as a list (index = g node), or None."""
    use_labels = _resolve_use_labels(g, h, use_labels)
    if use_labels and (g.node_labels is None or h.node_labels is None):
        raise MissingLabelsError()
    n = g.node_count
    if n != h.node_count or g.edge_count != h.edge_count:
        return None
    if degree_sequence(g) != degree_sequence(h):
        return None
    if use_labels and sorted(g.node_labels) != sorted(h.node_labels):
        return None
    if n == 0:
        return []

    cols = _stable_pair_colors(g, h, use_labels)
    if cols is None:
        return None
    gcol, hcol = cols[0].tolist(), cols[1].tolist()

    pools = {}
    for v in range(n):
        pools.setdefault(hcol[v], []).append(v)
    # smallest candidate pools first, ties to high degree: fail fast
    order = sorted(range(n), key=lambda u: (len(pools.get(gcol[u], ())), -g.degree(u), u))

    gadj = [set(g.neighbors(u)) for u in range(n)]
    hadj = [set(h.neighbors(v)) for v in range(n)]
    mapping = [-1] * n
    inverse = [-1] * n
    used = [False] * n
    expansions = 0

    def consistent(u, v):
        for w in gadj[u]:
            t = mapping[w]
            if t >= 0 and t not in hadj[v]:
                return False
        # reverse direction: mapped neighbors of v must map back into N(u)
        for t in hadj[v]:
            if used[t] and inverse[t] not in gadj[u]:
                return False
        return True

    # iterative depth-first search (graphs can exceed the recursion limit)
    cand = [None] * n
    pos = 0
    cand[0] = iter(pools.get(gcol[order[0]], ()))
    while pos >= 0:
        if pos == n:
            return mapping
        u = order[pos]
        advanced = False
        for v in cand[pos]:
            if used[v]:
                continue
            expansions += 1
            if expansions > budget:
                raise IsomorphismTimeout(budget, pair=(g.graph_id, h.graph_id))
            if consistent(u, v):
                mapping[u] = v
                inverse[v] = u
                used[v] = True
                pos += 1
                if pos < n:
                    cand[pos] = iter(pools.get(gcol[order[pos]], ()))
                advanced = True
                break
        if not advanced:
            pos -= 1
            if pos >= 0:
                v = mapping[order[pos]]
                used[v] = False
                inverse[v] = -1
                mapping[order[pos]] = -1
    return None


@dataclass(frozen=True)
class IsoClassIndex:
    """Partition of a dataset's graph indices into exact-isomorphism classes."""

    classes: tuple          # tuple of tuples of graph indices, each sorted
    class_of: tuple         # graph index -> class index

    @property
    def num_classes(self):
        return len(self.classes)

    @property
    def singleton_count(self):
        return sum(1 for c in self.classes if len(c) == 1)

    def representatives(self):
        """Smallest graph index of each class."""
        return tuple(c[0] for c in self.classes)

    def as_partition(self):
        return frozenset(frozenset(c) for c in self.classes)


def isomorphism_classes(dataset, use_labels=None, budget=DEFAULT_NODE_BUDGET):
    """Group a dataset's graphs into exact-isomorphism classes.

    Graphs are bucketed by (node count, edge count, stable refinement
    histogram); the backtracking matcher splits each bucket into true
    classes. ``use_labels=None`` means use labels when the dataset has them.
    """
    graphs = dataset.graphs
    if use_labels is None:
        use_labels = dataset.has_node_labels
    sigs, _ = stable_dataset_signatures(graphs, use_labels)
    buckets = {}
    for i, g in enumerate(graphs):
        key = (g.node_count, g.edge_count, sigs[i].pairs)
        buckets.setdefault(key, []).append(i)

    class_of = [-1] * len(graphs)
    classes = []
    for key in sorted(buckets):
        members = buckets[key]
        reps = []  # (class index, representative graph index)
        for i in members:
            placed = False
            for ci, rep in reps:
                if exact_isomorphic(graphs[i], graphs[rep],
                                    use_labels=use_labels, budget=budget):
                    classes[ci].append(i)
                    class_of[i] = ci
                    placed = True
                    break
            if not placed:
                ci = len(classes)
                classes.append([i])
                class_of[i] = ci
                reps.append((ci, i))
    ordered = sorted(range(len(classes)), key=lambda ci: classes[ci][0])
    remap = {old: new for new, old in enumerate(ordered)}
    final = tuple(tuple(sorted(classes[old])) for old in ordered)
    return IsoClassIndex(final, tuple(remap[c] for c in class_of))


def unique_fraction(index, n):
    """Fraction of the n graphs whose class is a singleton."""
    if n <= 0:
        return 0.0
    return index.singleton_count / n
