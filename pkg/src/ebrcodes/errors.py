"""Exception hierarchy shared by the codecs, analysis helpers and CLI."""


class CodeError(Exception):
    """Base class for every error raised by this package."""


class NonPrimitivePolynomial(CodeError, ValueError):
    pass


class DivisionByZero(CodeError, ZeroDivisionError):
    pass


class LengthMismatch(CodeError, ValueError):
    pass


class BadShape(CodeError, ValueError):
    pass


class BadParameters(CodeError, ValueError):
    pass


class NotInCode(CodeError, ValueError):
    pass


class NotACodeword(CodeError, ValueError):
    pass


class OutOfRange(CodeError, IndexError):
    pass


class SingularMap(CodeError, ValueError):
    pass


class UnsupportedRegime(CodeError, ValueError):
    pass


class TooLarge(CodeError, RuntimeError):
    """An exhaustive computation would exceed its budget.

    ``bound`` carries the best bound established before giving up, if any.
    """

    def __init__(self, message, bound=None):
        super().__init__(message)
        self.bound = bound


class Unrecoverable(CodeError):
    """A single column cannot be completed from its own symbols."""


class TooManyErasures(CodeError):
    """The erasure pattern exceeds what the code can recover.

    ``columns`` lists the columns that could not be handled.
    """

    def __init__(self, message, columns=()):
        super().__init__(message)
        self.columns = tuple(columns)


class UnknownSuite(CodeError, KeyError):
    pass


class NotMDSWarning(UserWarning):
    pass
