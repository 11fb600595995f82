"""Connected induced subgraph (graphlet) counts up to 4 nodes.

Counts are exact and purely structural; node labels never enter a motif
vector. Enumeration cost is capped by a per-graph budget because dense
graphs can have combinatorially many connected 4-sets.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import kernels
from .audit import _group, pct
from .errors import CountingInfeasible, EmptyDatasetError
from .iso import isomorphism_classes

DEFAULT_CENSUS_BUDGET = 100_000_000

MOTIF_FIELDS = ("node_count", "edge_count", "p3", "triangle",
                "p4", "claw", "c4", "paw", "diamond", "k4")


@dataclass(frozen=True)
class MotifVector:
    """Exact induced counts of the connected graphlets on <= 4 nodes.

    Fields beyond ``max_size`` are None (absent), not zero, so vectors from
    different census sizes never compare equal by accident.
    """

    node_count: int
    edge_count: int
    p3: int = None
    triangle: int = None
    p4: int = None
    claw: int = None
    c4: int = None
    paw: int = None
    diamond: int = None
    k4: int = None

    @property
    def max_size(self):
        if self.p4 is not None:
            return 4
        return 3 if self.p3 is not None else 2

    def key(self):
        """Grouping key: the tuple of present counts in fixed field order."""
        vals = (self.node_count, self.edge_count, self.p3, self.triangle,
                self.p4, self.claw, self.c4, self.paw, self.diamond, self.k4)
        return tuple(v for v in vals if v is not None)

    def as_dict(self):
        return {f: getattr(self, f) for f in MOTIF_FIELDS
                if getattr(self, f) is not None}


def motif_vector(g, max_size=4, budget=DEFAULT_CENSUS_BUDGET):
    """Census of graph ``g``. Raises :class:`CountingInfeasible` when the
    enumeration budget is exhausted."""
    if max_size not in (2, 3, 4):
        raise ValueError("max_size must be 2, 3, or 4")
    result = kernels.motif_census(g.indptr, g.indices, g.node_count,
                                  max_size, budget)
    if result is None:
        raise CountingInfeasible(budget, graph_id=g.graph_id)
    _, counts = result
    edge, p3, tri, p4, claw, c4, paw, diamond, k4 = counts
    vec = {"node_count": g.node_count, "edge_count": edge}
    if max_size >= 3:
        vec.update(p3=p3, triangle=tri)
    if max_size == 4:
        vec.update(p4=p4, claw=claw, c4=c4, paw=paw, diamond=diamond, k4=k4)
    return MotifVector(**vec)


def motif_identifiability(dataset, max_size=4, budget=DEFAULT_CENSUS_BUDGET,
                          iso_index=None):
    """(identifiable %, upper-bound %) with motif vectors as the
    representation: identifiability over isomorphism classes, majority-vote
    bound over raw graphs.

    The class index follows the dataset's default convention (node labels
    respected when present) even though the vectors themselves are
    structure-only. Raises :class:`CountingInfeasible` naming the first
    offending graph when counting is over budget.
    """
    if len(dataset.graphs) == 0:
        raise EmptyDatasetError(dataset.name)
    keys = []
    for i, g in enumerate(dataset.graphs):
        try:
            keys.append(motif_vector(g, max_size=max_size, budget=budget).key())
        except CountingInfeasible:
            raise CountingInfeasible(budget, graph_id=i)
    if iso_index is None:
        iso_index = isomorphism_classes(dataset)

    rep_groups = _group(keys, iso_index.representatives())
    ident = pct(sum(1 for _, m in rep_groups if len(m) == 1), iso_index.num_classes)

    raw_groups = _group(keys, range(len(dataset.graphs)))
    correct = 0
    for _, members in raw_groups:
        votes = {}
        for i in members:
            lab = dataset.class_labels[i]
            votes[lab] = votes.get(lab, 0) + 1
        correct += max(votes.values())
    ub = pct(correct, len(dataset.graphs))
    return ident, ub
