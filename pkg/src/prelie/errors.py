"""Exception types shared across the package."""


class PrelieError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatch(PrelieError, ValueError):
    pass


class SingularMatrix(PrelieError, ZeroDivisionError):
    pass


class ParametricAlgebra(PrelieError, ValueError):
    """A rank computation was requested on an algebra with a free parameter."""


class MixedDegree(PrelieError, ValueError):
    """Operator words of different multidegree were combined."""


class UnknownLabel(PrelieError, KeyError):
    pass


class ForbiddenParameter(PrelieError, ValueError):
    pass


class InconsistentInput(PrelieError):
    """Verified degenerations contradict a criterion or the partial order."""


class ParseError(PrelieError, ValueError):
    """Malformed input; carries an optional source location."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None,
                 source: str | None = None):
        self.message = message
        self.line = line
        self.column = column
        self.source = source
        super().__init__(str(self))

    def __str__(self) -> str:
        where = []
        if self.source:
            where.append(self.source)
        if self.line is not None:
            where.append(str(self.line))
            if self.column is not None:
                where.append(str(self.column))
        prefix = ":".join(where)
        return f"{prefix}: {self.message}" if prefix else self.message
