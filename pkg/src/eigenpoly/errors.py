"""Exception hierarchy shared by every layer of the package."""


class AlgebraError(Exception):
    """Base class for all errors raised by eigenpoly."""


class VariableMismatchError(AlgebraError):
    """Operands live in polynomial rings with different variables."""


class DomainError(AlgebraError):
    """Input is outside the mathematical domain of an operation."""


class ShapeError(AlgebraError):
    """Matrix has the wrong shape (non-square, asymmetric, ...)."""


class DimensionError(DomainError):
    """The ideal is not zero-dimensional."""


class GenericityError(AlgebraError):
    """No separating linear form was found within the retry budget."""


class ConsistencyError(AlgebraError):
    """Two independent computations disagree; indicates an internal bug."""


class ParseError(AlgebraError):
    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)
