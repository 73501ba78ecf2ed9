"""Exception types raised by the library."""


class QtdError(Exception):
    """Base class for all library errors."""


class NotAPrimePower(QtdError, ValueError):
    pass


class FieldTooLarge(QtdError, ValueError):
    pass


class InvalidArguments(QtdError, ValueError):
    pass


class AmbientMismatch(QtdError, ValueError):
    pass


class BoundExceeded(QtdError, RuntimeError):
    pass


class NotAnAutomorphismGroup(QtdError, ValueError):
    pass


class NotTactical(QtdError, ValueError):
    """A partition pair whose incidence counts are not class-constant.

    ``witness`` holds the two offending members and their counts.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotPIndependent(QtdError, ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class GroupNotPrimeOrder(QtdError, ValueError):
    pass


class ClassNotSingleton(QtdError, ValueError):
    pass


class LambdaNotInteger(QtdError, ValueError):
    """Eq.-style derived lambda is fractional: no design with these parameters exists."""

    def __init__(self, message, s=None, value=None):
        super().__init__(message)
        self.s = s
        self.value = value


class TensorShapeMismatch(QtdError, ValueError):
    pass


class ProblemTooLarge(QtdError, RuntimeError):
    pass


class ParseError(QtdError, ValueError):
    def __init__(self, message, path=None, line=None):
        loc = ""
        if path is not None:
            loc = f"{path}:"
        if line is not None:
            loc += f"{line}: "
        elif loc:
            loc += " "
        super().__init__(loc + message)
        self.path = path
        self.line = line
