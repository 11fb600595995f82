"""Exception types shared across the package."""


class WlAuditError(Exception):
    """Base class for all errors raised by this package."""


# graph construction


class GraphBuildError(WlAuditError):
    pass


class SelfLoopError(GraphBuildError):
    def __init__(self, node):
        self.node = node
        super().__init__(f"self-loop on node {node}")


class NodeIndexError(GraphBuildError):
    def __init__(self, node, node_count):
        self.node = node
        self.node_count = node_count
        super().__init__(f"node index {node} out of range [0, {node_count})")


class LabelLengthError(GraphBuildError):
    def __init__(self, got, expected):
        super().__init__(f"node_labels has length {got}, expected {expected}")


# dataset parsing / fetching


class DatasetError(WlAuditError):
    pass


class MissingFileError(DatasetError):
    def __init__(self, path):
        self.path = str(path)
        super().__init__(f"missing dataset file: {path}")


class MalformedLineError(DatasetError):
    def __init__(self, path, line_no, detail=""):
        self.path = str(path)
        self.line_no = line_no
        msg = f"malformed line {line_no} in {path}"
        super().__init__(msg + (f": {detail}" if detail else ""))


class DanglingEdgeError(DatasetError):
    def __init__(self, u, v, graph_u, graph_v):
        super().__init__(
            f"edge ({u}, {v}) spans graphs {graph_u} and {graph_v}"
        )


class EmptyDatasetError(DatasetError):
    def __init__(self, name=""):
        super().__init__(f"dataset {name!r} contains no graphs")


class FetchError(WlAuditError):
    """Download, checksum, or extraction failure."""


class ChecksumError(FetchError):
    def __init__(self, expected, got):
        super().__init__(f"checksum mismatch: expected {expected}, got {got}")


class ExtractError(FetchError):
    pass


# refinement / metrics


class MissingLabelsError(WlAuditError):
    def __init__(self, graph_id=None):
        where = f" (graph {graph_id})" if graph_id is not None else ""
        super().__init__(f"node labels requested but absent{where}")


class DimensionError(WlAuditError):
    def __init__(self, dim, needed):
        super().__init__(f"vector dimension {dim} too small, need >= {needed}")


# search budgets


class BudgetError(WlAuditError):
    """A configured work budget was exhausted; the result is unknown, not negative."""


class IsomorphismTimeout(BudgetError):
    def __init__(self, budget, pair=None):
        self.budget = budget
        self.pair = pair
        where = f" while testing pair {pair}" if pair is not None else ""
        super().__init__(f"isomorphism search exceeded {budget} node expansions{where}")


class CountingInfeasible(BudgetError):
    def __init__(self, budget, graph_id=None):
        self.budget = budget
        self.graph_id = graph_id
        where = f" on graph {graph_id}" if graph_id is not None else ""
        super().__init__(f"subgraph enumeration exceeded budget {budget}{where}")
