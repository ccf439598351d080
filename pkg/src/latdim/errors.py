"""Exception types raised by latdim.

The CLI maps these onto exit codes: parse/validation failures exit 2,
budget overruns exit 3, precondition violations exit 4.
"""


class LatdimError(Exception):
    """Base class for all latdim errors."""


class ValidationError(LatdimError):
    exit_code = 2


class CycleError(ValidationError):
    """The reflexive-transitive closure of a relation is not antisymmetric."""

    def __init__(self, x, y):
        super().__init__(f"elements {x} and {y} lie on a cycle")
        self.witness = (x, y)


class NotALatticeError(ValidationError):
    """Some pair of elements has no unique join or meet."""

    def __init__(self, x, y, op):
        super().__init__(f"elements {x} and {y} have no {op}")
        self.witness = (x, y)
        self.op = op


class ParseError(ValidationError):
    pass


class SizeError(LatdimError):
    """A construction would exceed its configured element budget."""

    exit_code = 3


class BudgetExceeded(LatdimError):
    """A bounded search was inconclusive. Never read this as a negative answer."""

    exit_code = 3


class PreconditionError(LatdimError):
    exit_code = 4


class GeneratorError(PreconditionError):
    """The proposed generating sets do not generate the lattice."""


class SystemMismatchError(PreconditionError):
    """Arithmetic between elements of different QO-systems."""


class NotInEError(LatdimError):
    """A vector of F(P) that is not a sum of generators.

    ``certificate`` holds the unique candidate generator multiset and the
    vector it actually sums to.
    """

    exit_code = 4

    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate


class NotFound(LatdimError):
    """An exhaustive search finished without a witness."""

    exit_code = 1
