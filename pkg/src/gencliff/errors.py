"""Exception hierarchy.

Two families matter to the command line: :class:`InputError` (malformed text,
unknown names, bad files; exit status 2) and :class:`DomainError`
(well-formed input that is mathematically rejected; exit status 1).
"""


class GencliffError(Exception):
    """Base class for every error raised by this package."""


class InputError(GencliffError):
    pass


class DomainError(GencliffError):
    pass


class MalformedRingSpec(InputError):
    pass


class ParseError(InputError):
    def __init__(self, message, line=1, column=1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class UnknownGenerator(InputError):
    pass


class InputFormatError(InputError):
    pass


class NotPrime(DomainError):
    pass


class RingMismatch(DomainError):
    pass


class NotInvertible(DomainError):
    pass


class DivisionByZero(DomainError, ZeroDivisionError):
    pass


class ContextMismatch(DomainError):
    pass


class NotHomogeneous(DomainError):
    pass


class InconsistentForm(DomainError):
    pass


class NotAField(DomainError):
    pass


class BoundTooSmall(DomainError):
    pass


class BoundExceeded(DomainError):
    pass


class TooLarge(DomainError):
    pass


class DegreeMismatch(DomainError):
    pass


class WeightMismatch(DomainError):
    pass


class SquareNotZero(DomainError):
    pass
