"""Exception hierarchy shared by every module of the package."""


class SuperAlgebraError(Exception):
    """Base class for all errors raised by :mod:`superiwasawa`."""


class MalformedInputError(SuperAlgebraError, ValueError):
    """Input data (generator ids, JSON payloads, matrix shapes) is invalid."""


class IncompatibleContextError(SuperAlgebraError, ValueError):
    """Operands live over different generator tables."""


class ParityError(SuperAlgebraError, ValueError):
    """An element or matrix does not have the parity an operation requires."""


class NotInvertibleError(SuperAlgebraError, ArithmeticError):
    """The body of an element (or of a block) is zero or numerically negligible."""


class DomainError(SuperAlgebraError, ValueError):
    """Square root requested outside its supported domain."""


class PreconditionError(SuperAlgebraError, ValueError):
    """A mathematical precondition (sdet = 1, identity body, ...) is violated."""
