"""Exception hierarchy shared by every module of the package."""


class NaryError(Exception):
    """Base class for all errors raised by naryalg."""


class DimensionMismatch(NaryError, ValueError):
    pass


class IndexOutOfRange(NaryError, IndexError):
    pass


class RepeatedIndexNonzero(NaryError, ValueError):
    """A skew product was given a nonzero constant on a tuple with a repeated index."""

    def __init__(self, key, message=None):
        self.key = tuple(key)
        super().__init__(message or f"repeated index in skew key {self.key} with nonzero coefficient")


class ArityMismatch(NaryError, ValueError):
    pass


class NotSkew(NaryError, ValueError):
    pass


class NotNilpotent(NaryError, ValueError):
    pass


class NotNilpotentOperator(NotNilpotent):
    pass


class DependentVectors(NaryError, ValueError):
    pass


class NotProportional(NaryError, ArithmeticError):
    pass


class InternalInconsistency(NaryError, AssertionError):
    pass


class PermutationError(NaryError, ValueError):
    pass


class GroupTooLarge(NaryError, ValueError):
    pass


class DegreeOverflow(NaryError, ValueError):
    pass


class NotDefinedForBinary(NaryError, ValueError):
    pass


class UnknownCatalogEntry(NaryError, KeyError):
    pass


class BadParams(NaryError, ValueError):
    pass


class ParseError(NaryError, ValueError):
    def __init__(self, message, line, column=1):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")
