class KLError(Exception):
    """Base class for validation errors raised by klext."""


class UnknownGenerator(KLError, KeyError):
    pass


class InvalidCoxeterMatrix(KLError, ValueError):
    pass


class SystemMismatch(KLError, ValueError):
    pass


class InfiniteParabolic(KLError):
    pass


class NotMinimalRep(KLError, ValueError):
    pass


class NotRegularRep(NotMinimalRep):
    pass


class AmbientNotClosed(KLError, ValueError):
    pass


class IndexNotInQuotient(KLError, ValueError):
    pass


class TableCapExceeded(KLError, MemoryError):
    pass
