"""Exception hierarchy. Every error carries a machine-readable ``code``."""


class ChromalgError(Exception):
    code = "chromalg_error"

    def to_dict(self):
        return {"code": self.code, "message": str(self)}


class EdgeNotInGraphError(ChromalgError):
    code = "edge_not_in_graph"

    def __init__(self, edge):
        super().__init__(f"edge not in graph: {tuple(edge)}")
        self.edge = tuple(edge)


class GraphSpecError(ChromalgError):
    code = "graph_spec_error"


class ConstraintError(ChromalgError):
    code = "constraint_error"


class PreconditionError(ChromalgError):
    code = "precondition_error"


class PartitionError(ChromalgError):
    code = "partition_error"


class BoundExceededError(ChromalgError):
    code = "bound_exceeded"


class CanonicalizationBoundError(BoundExceededError):
    code = "canonicalization_bound_exceeded"

    def __init__(self, n, limit):
        super().__init__(f"canonicalization bound exceeded: n={n} > {limit}")
        self.n = n
        self.limit = limit


def check_bound(what, value, limit):
    """Raise BoundExceededError if ``value`` is over ``limit``."""
    if value > limit:
        raise BoundExceededError(f"{what} bound exceeded: {value} > {limit}")


class UsageError(ChromalgError):
    code = "usage_error"
