"""Exception types.

Every error carries the name of the module that raised it so that the
command line front end can report where a failure originated.
"""


class OreFracError(Exception):
    module = "orefrac"


class DivisionByZero(OreFracError, ZeroDivisionError):
    def __init__(self, message="division by zero", module="field"):
        super().__init__(message)
        self.module = module


class BothZero(OreFracError, ValueError):
    module = "ore"


class ZeroArgument(OreFracError, ValueError):
    module = "ore"


class ZeroDenominator(OreFracError, ZeroDivisionError):
    module = "ratfrac"


class InverseOfZero(OreFracError, ZeroDivisionError):
    module = "ratfrac"


class ShapeMismatch(OreFracError, ValueError):
    def __init__(self, message, module="matops"):
        super().__init__(message)
        self.module = module


class NotSquare(OreFracError, ValueError):
    module = "matops"


class DegenerateMatrix(OreFracError, ValueError):
    """A matrix with zero Dieudonne determinant where a non-degenerate one is required."""

    def __init__(self, message, module="matops"):
        super().__init__(message)
        self.module = module


class DegenerateB(DegenerateMatrix):
    pass


class DegenerateInput(DegenerateMatrix):
    pass


class NotInvertible(OreFracError, ValueError):
    module = "matops"


class NotSameFraction(OreFracError, ValueError):
    module = "matfrac"


class NonExactDivision(OreFracError, ArithmeticError):
    def __init__(self, message, module="matfrac"):
        super().__init__(message)
        self.module = module


class BoundExhausted(OreFracError, LookupError):
    """The bounded ansatz search found no solution.

    This is not a proof that no rational solution exists.
    """

    module = "dirac"


class ParseError(OreFracError, SyntaxError):
    module = "cli"

    def __init__(self, message, text="", pos=0):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{message} at line {line}, column {col}")
        self.lineno = line
        self.offset = col
        self.text = text

    def __str__(self):
        return self.msg


class UndefinedSymbol(ParseError):
    pass


class InvalidValue(OreFracError, ValueError):
    """A well-formed expression whose value has the wrong kind for its context."""

    module = "cli"
