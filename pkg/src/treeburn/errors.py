"""Exception hierarchy shared by every module."""


class TreeBurnError(Exception):
    """Base class for all package errors."""


class TreeError(TreeBurnError, ValueError):
    pass


class NotConnected(TreeError):
    pass


class HasCycle(TreeError):
    pass


class DuplicateEdge(TreeError):
    pass


class BadVertexId(TreeError, IndexError):
    pass


class BadParam(TreeBurnError, ValueError):
    pass


class RetriesExhausted(TreeBurnError, RuntimeError):
    pass


class NotEligible(TreeBurnError, ValueError):
    """Input tree is outside the class an algorithm is defined on."""


class NotPerfect(NotEligible):
    pass


class NotComplete(NotEligible):
    pass


class IsPerfect(NotEligible):
    pass


class NotFbtnp(NotEligible):
    pass


class BudgetExceeded(TreeBurnError, RuntimeError):
    """Search ran out of nodes or time before reaching a verdict.

    ``upper_bound`` holds the best burning-sequence length known when the
    search stopped, or None.
    """

    def __init__(self, message, upper_bound=None, nodes=0):
        super().__init__(message)
        self.upper_bound = upper_bound
        self.nodes = nodes


class AlgorithmFailure(TreeBurnError, RuntimeError):
    """A constructive burner could not produce a sequence within its bound."""
