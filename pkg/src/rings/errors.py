"""
Exception hierarchy shared by the ring backends, the determinant theory and the CLI.
"""


class NilCayleyError(Exception):
    """Base class for every error raised by this package."""


class BackendMismatchError(NilCayleyError, ValueError):
    """Operands belong to different ring backends."""


class GuardrailError(NilCayleyError, ValueError):
    """A size, dimension or level cap was exceeded."""


class NotAnIdealError(NilCayleyError, ValueError):
    """A subspace used as an ideal is not closed under multiplication."""


class SingularMatrixError(NilCayleyError, ArithmeticError):
    """A rational matrix that had to be inverted is singular."""


class ArithmeticConsistencyError(NilCayleyError, ArithmeticError):
    """An exact computation contradicted a guaranteed property (an arithmetic bug)."""


class ConfigError(NilCayleyError, ValueError):
    """Inconsistent run configuration."""


class ExpressionError(NilCayleyError, ValueError):
    """Base class for element and matrix parsing errors."""


class ExpressionSyntaxError(ExpressionError):
    """Text does not match the element grammar."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class UnknownGeneratorError(ExpressionError):
    """A symbol does not name a generator of the selected backend."""

    def __init__(self, symbol: str, known):
        super().__init__(f"unknown generator '{symbol}' (known: {', '.join(sorted(known)) or 'none'})")
        self.symbol = symbol


class ExponentOverflowError(ExpressionError):
    """A '^' exponent is above the configured cap."""


class RaggedMatrixError(ExpressionError):
    """Matrix text has ragged rows or the wrong size."""


class MatrixCellError(ExpressionError):
    """An element error inside a matrix cell, with its coordinates (1-based)."""

    def __init__(self, row: int, column: int, cause: ExpressionError):
        super().__init__(f"cell ({row},{column}): {cause}")
        self.row = row
        self.column = column
        self.cause = cause
