"""Exception hierarchy shared by every emvkit module."""


class EmvError(Exception):
    """Base class for all emvkit errors."""


class InvalidAlgebraError(EmvError, ValueError):
    """Malformed tables or an argument algebra that fails its axioms."""


class PreconditionError(EmvError, ValueError):
    """An operation was called outside its documented domain."""


class AxiomViolationError(EmvError):
    """A derived operation does not exist because the tables break an axiom."""


class TheoremViolationError(EmvError, AssertionError):
    """A search whose success is guaranteed by a theorem came back empty.

    Raised only when the implementation (or the input algebra) is wrong.
    """


class InternalConsistencyError(EmvError, AssertionError):
    """Two independent computations of the same object disagree."""
