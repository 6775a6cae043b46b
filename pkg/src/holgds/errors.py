"""Exception hierarchy shared by every module."""


class HolgdsError(Exception):
    """Base class for all errors raised by holgds."""


# exact arithmetic
class DimensionMismatch(HolgdsError, ValueError):
    pass


class NotSquare(HolgdsError, ValueError):
    pass


class SingularMatrix(HolgdsError, ArithmeticError):
    pass


class NonIntegerEntries(HolgdsError, ValueError):
    pass


class ZeroPolynomial(HolgdsError, ValueError):
    pass


class MixedRadicand(HolgdsError, ValueError):
    pass


class UnsupportedScalarPair(HolgdsError, TypeError):
    pass


class ScalarFormatError(HolgdsError, ValueError):
    pass


# signatures
class DomainMismatch(HolgdsError, ValueError):
    pass


class ArityUnderflow(HolgdsError, ValueError):
    pass


class MalformedGate(HolgdsError, ValueError):
    pass


# grids
class GridError(HolgdsError, ValueError):
    pass


class ArityMismatch(GridError):
    pass


class BadEdgeOrder(GridError):
    pass


class NonBipartiteEdge(GridError):
    pass


class NonSimpleGdsGraph(GridError):
    pass


class InvalidPairing(GridError):
    pass


class NotBipartite(GridError):
    pass


class NotThreeRegular(GridError):
    pass


class ParseError(HolgdsError, ValueError):
    def __init__(self, message, line=None, field=None):
        self.line = line
        self.field = field
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)


# evaluation
class TooLarge(HolgdsError, RuntimeError):
    pass


class TableBlowup(TooLarge):
    pass


# transforms / classify
class NotUniform(HolgdsError, ValueError):
    pass


class UnsupportedMatrixShape(HolgdsError, ValueError):
    pass


class NonRationalEntry(HolgdsError, ValueError):
    pass


# gadgets
class RoleViolation(HolgdsError, ValueError):
    pass


class InconsistentRule(HolgdsError, ValueError):
    pass


class ClassesNotEqual(HolgdsError, ValueError):
    pass


class NotCollapsible(HolgdsError, ValueError):
    pass


# interpolation
class SingularSystem(SingularMatrix):
    pass


# reduction
class NotThreeRegularBipartite(HolgdsError, ValueError):
    pass
