"""Exceptions shared across the pipeline stages."""


class TooWideError(Exception):
    """A stage has verified that the input graph has treewidth at least k.

    This is a positive claim about the graph, not a resource failure: every
    code path that raises it has an accompanying certificate (edge count
    above the degeneracy bound, a clique on more than k vertices, and so on).
    """

    def __init__(self, k, detail=""):
        self.k = k
        self.detail = detail
        msg = f"treewidth is at least {k}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class BudgetExceededError(Exception):
    """The pair-enumeration budget was hit.

    Says nothing about treewidth; it only means the run was aborted before
    an answer was computed.
    """

    def __init__(self, pairs_needed, budget):
        self.pairs_needed = pairs_needed
        self.budget = budget
        super().__init__(
            f"pair enumeration would examine {pairs_needed} pairs, "
            f"budget is {budget}"
        )
