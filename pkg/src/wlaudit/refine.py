"""Color refinement with a dataset-global interner.

Every color is a dense integer id handed out by a :class:`ColorTable`.
Interning is exact: a new color id is an injective function of (previous
color, sorted multiset of neighbor colors), so equal ids mean equal refinement
histories and histograms from graphs sharing a table are directly comparable.
Because the key embeds the previous color, every node is renamed on every
pass; ids from different iterations never collide.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import DimensionError, MissingLabelsError


class ColorTable:
    """Interner mapping refinement keys and raw node labels to dense ids.

    Ids are assigned in first-seen order, so two runs that process the same
    graphs in the same order produce identical ids. Not thread-safe while
    interning; freeze (stop writing) before sharing.
    """

    def __init__(self):
        self._interner = {}
        self._label_seed = {}
        self._next_id = 0

    @property
    def num_colors(self):
        return self._next_id

    def seed_label(self, raw_label):
        """Color id for a raw node label (iteration-0 seeding)."""
        cid = self._label_seed.get(raw_label)
        if cid is None:
            cid = self._next_id
            self._label_seed[raw_label] = cid
            self._next_id += 1
        return cid

    def refine_colors(self, g, colors):
        """One refinement pass over graph ``g``; returns the new color array."""
        new, self._next_id = kernels.refine_pass(
            g.indptr, g.indices, colors, self._interner, self._next_id
        )
        return new

    def rotate(self):
        """Forget refinement keys from completed iterations.

        Refinement keys embed the parent color, and every node is renamed on
        every pass, so a key can never recur in a later iteration: dropping
        the stored keys loses no dedup provided all graphs have finished the
        current iteration (the lockstep dataset drivers guarantee that).
        Keeps label seeds and the id counter.
        """
        self._interner.clear()


@dataclass(frozen=True)
class Coloring:
    """Node colors of one graph at one refinement iteration."""

    iteration: int
    colors: tuple

    @property
    def node_count(self):
        return len(self.colors)

    def class_count(self):
        return len(set(self.colors))

    def partition(self):
        """Canonical partition of node indices by color (a frozenset of frozensets)."""
        groups = {}
        for v, c in enumerate(self.colors):
            groups.setdefault(c, []).append(v)
        return frozenset(frozenset(g) for g in groups.values())


@dataclass(frozen=True)
class WlSignature:
    """Sparse histogram of node colors at one iteration.

    ``pairs`` is a tuple of (color id, count) sorted by color id; it is the
    hashable comparison key used throughout the audit.
    """

    iteration: int
    pairs: tuple

    @property
    def node_count(self):
        return sum(c for _, c in self.pairs)

    def counts_sorted(self):
        return tuple(sorted(c for _, c in self.pairs))

    def text(self):
        """Stable textual form: ``color:count`` joined by commas."""
        return ",".join(f"{c}:{k}" for c, k in self.pairs)


def _histogram(iteration, colors):
    vals, counts = np.unique(np.asarray(colors), return_counts=True)
    pairs = tuple((int(v), int(c)) for v, c in zip(vals, counts))
    return WlSignature(iteration, pairs)


def initial_coloring(g, use_labels, table):
    """Iteration-0 coloring: constant color 0 for all nodes, or colors seeded
    from the graph's node labels."""
    if use_labels:
        if g.node_labels is None:
            raise MissingLabelsError(g.graph_id)
        colors = [table.seed_label(lab) for lab in g.node_labels]
    else:
        colors = [table.seed_label(0)] * g.node_count if g.node_count else []
    return Coloring(0, tuple(colors))


def refine_step(g, coloring, table):
    """One refinement pass; returns the iteration k+1 coloring."""
    arr = np.asarray(coloring.colors, dtype=np.int64)
    new = table.refine_colors(g, arr)
    return Coloring(coloring.iteration + 1, tuple(int(c) for c in new))


def signature(g, k, use_labels, table):
    """Histogram per iteration 0..k.

    Runs exactly k passes with no early stop, so iteration-k ids stay
    comparable across graphs sharing ``table`` (a graph whose partition is
    already stable keeps being renamed consistently).
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    coloring = initial_coloring(g, use_labels, table)
    colors = np.asarray(coloring.colors, dtype=np.int64)
    sigs = [_histogram(0, colors)]
    for it in range(1, k + 1):
        colors = table.refine_colors(g, colors)
        sigs.append(_histogram(it, colors))
    return sigs


def to_vector(sig, dim):
    """Dense count vector: entry j = count of color j in the histogram."""
    needed = 1 + max((c for c, _ in sig.pairs), default=-1)
    if dim < needed:
        raise DimensionError(dim, needed)
    vec = [0] * dim
    for c, k in sig.pairs:
        vec[c] = k
    return vec


def stable_iteration(g, use_labels, table, max_k):
    """Smallest k <= max_k whose partition equals the next iteration's, or
    max_k if the coloring is still refining.

    A refinement pass can only split classes, so the partitions are equal iff
    the class counts are.
    """
    if max_k < 1:
        raise ValueError("max_k must be >= 1")
    coloring = initial_coloring(g, use_labels, table)
    colors = np.asarray(coloring.colors, dtype=np.int64)
    prev_classes = len(np.unique(colors)) if g.node_count else 0
    for k in range(max_k + 1):
        colors = table.refine_colors(g, colors)
        classes = len(np.unique(colors)) if g.node_count else 0
        if classes == prev_classes:
            return k
        if k == max_k:
            break
        prev_classes = classes
    return max_k


def dataset_signatures(graphs, k, use_labels, table=None):
    """Per-graph signatures for iterations 0..k, processed in dataset order.

    Returns a list (one entry per graph) of lists of :class:`WlSignature`.
    Graphs are refined in lockstep per iteration; because interning is
    injective, call order only affects id values, never id equality, but the
    lockstep order keeps runs byte-reproducible.
    """
    own_table = table is None
    if own_table:
        table = ColorTable()
    colors = []
    sigs = []
    for g in graphs:
        c = np.asarray(initial_coloring(g, use_labels, table).colors, dtype=np.int64)
        colors.append(c)
        sigs.append([_histogram(0, c)])
    for it in range(1, k + 1):
        for i, g in enumerate(graphs):
            colors[i] = table.refine_colors(g, colors[i])
            sigs[i].append(_histogram(it, colors[i]))
        if own_table:
            table.rotate()
    return sigs


def stable_dataset_signatures(graphs, use_labels, table=None, max_iterations=None):
    """Refine every graph until no graph's partition changes; return the
    final-iteration signature per graph plus the number of passes run.

    The final histograms decide indistinguishability for any pair in the
    set: equal final histograms imply equal histograms at every earlier
    iteration because each color id determines its parent.
    """
    own_table = table is None
    if own_table:
        table = ColorTable()
    colors = []
    n_classes = []
    for g in graphs:
        c = np.asarray(initial_coloring(g, use_labels, table).colors, dtype=np.int64)
        colors.append(c)
        n_classes.append(len(np.unique(c)) if len(c) else 0)
    if max_iterations is None:
        max_iterations = max((g.node_count for g in graphs), default=0) + 1
    it = 0
    while it < max_iterations:
        it += 1
        changed = False
        for i, g in enumerate(graphs):
            colors[i] = table.refine_colors(g, colors[i])
            classes = len(np.unique(colors[i])) if len(colors[i]) else 0
            if classes != n_classes[i]:
                n_classes[i] = classes
                changed = True
        if own_table:
            table.rotate()
        if not changed:
            break
    return [_histogram(it, c) for c in colors], it
