"""Exception hierarchy shared by all modules.

The CLI maps these onto exit codes, so solver and construction code should
raise the most specific class that applies rather than bare ValueError.
"""


class ArgumentError(ValueError):
    """Malformed or out-of-range arguments (CLI exit code 2)."""


class PreconditionError(ArgumentError):
    """A documented precondition of an operation does not hold.

    Carries an optional machine-readable witness (e.g. the offending
    index pair) in ``witness``.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class DegenerateInputError(ArgumentError):
    """Input is singular/degenerate where a regular object was required."""


class ResourceLimitError(RuntimeError):
    """A size or bit-length cap would be exceeded (CLI exit code 3)."""


class BudgetExhaustedError(ResourceLimitError):
    """An enumeration budget ran out before a definite answer was reached.

    Verification commands map this onto the "inconclusive" exit code 4.
    """


# Default resource caps.  Constructions refuse to materialize point sets
# larger than MAX_POINTS, and tower() refuses to produce integers wider
# than MAX_BITS bits.  Both are overridable per call.
MAX_POINTS = 2 ** 20
MAX_BITS = 10 ** 6
