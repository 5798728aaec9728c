"""Exception hierarchy shared by all mpmat modules."""


class MpmatError(Exception):
    """Base class for all package errors."""


class OutOfRangeVertex(MpmatError):
    """An edge endpoint is not a valid vertex index."""


class DuplicateNonLoopEdge(MpmatError):
    """Two identical (v, w) edges with v != w were supplied."""


class InvalidEdge(MpmatError):
    """An edge identifier does not exist in the host digraph."""


class LoopContraction(MpmatError):
    """Contraction of a loop edge was requested (undefined surgery)."""


class ContractLoop(MpmatError):
    """Contraction of a matroid loop was requested."""


class BadParameters(MpmatError):
    """Invalid numeric parameters (e.g. uniform(k, n) with k > n)."""


class CapExceeded(MpmatError):
    """An exhaustive oracle was asked to sweep a ground set above its cap."""


class BudgetExceeded(MpmatError):
    """Base class for enumeration budget overruns."""


class CycleBudgetExceeded(BudgetExceeded):
    """Simple-cycle enumeration produced more cycles than allowed."""


class EnumerationBudgetExceeded(BudgetExceeded):
    """A subset sweep would examine more subsets than allowed."""


class AssignmentBudgetExceeded(BudgetExceeded):
    """A colouring sweep would examine more assignments than allowed."""


class SpanningTreeBudgetExceeded(BudgetExceeded):
    """Spanning-tree enumeration exceeded its cap."""


class NotMpDigraph(MpmatError):
    """Operation requires a digraph whose multipaths form a matroid."""

    def __init__(self, message="digraph is not an MP-digraph", witness=None):
        super().__init__(message)
        self.witness = witness


class HasCoherentCycle(MpmatError):
    """Operation requires a digraph without coherently oriented cycles."""


class NotMpForest(MpmatError):
    """Operation requires an MP-digraph whose underlying graph is a forest."""


class RejectionCapExceeded(MpmatError):
    """A rejection sampler gave up after too many attempts."""


class ZeroAtNegativeExponent(MpmatError):
    """Evaluation of a Laurent polynomial with negative exponents at 0."""


class IdentityViolation(MpmatError):
    """A proven identity failed on a concrete instance (build-stopping bug).

    Carries the counterexample payload so the failure is reproducible.
    """

    def __init__(self, message, payload=None):
        super().__init__(message)
        self.payload = payload


class ParseError(MpmatError):
    """Malformed digraph file or polynomial text."""
