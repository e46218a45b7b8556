"""Exception types shared across the package."""


class GraphingError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(GraphingError):
    """A value violates a structural invariant (malformed atom, bad machine table, ...)."""


class RealizerError(GraphingError):
    """A realizer cannot be applied (target outside the symbol range or the unit box)."""


class DiscretizationError(GraphingError):
    """A graphing does not restrict to the requested grid."""


class ClosureViolation(GraphingError):
    """An execution diverges: the cut relation carries non-convergent weight mass."""


class TruncationError(GraphingError):
    """A stack-depth budget was exhausted while an exact result was requested."""


class ScopeError(GraphingError):
    """The operation is only defined for the restricted shapes handled here."""


class FormatError(GraphingError):
    """A text file does not parse under the documented grammar."""
