"""Exception hierarchy shared by the library and the command line."""


class FvsError(Exception):
    """Base class for all errors raised by this package."""


class GraphDomainError(FvsError, ValueError):
    """An argument violates the documented precondition of an operation."""


class RefusalError(FvsError, RuntimeError):
    """A configured size cap would be exceeded; the computation was refused."""


class NotFoundError(FvsError, LookupError):
    """A search ran to completion without finding what was requested."""


class FamilyConstructionError(FvsError, RuntimeError):
    """A verified universal family could not be built within the retry budget."""


class GraphParseError(FvsError, ValueError):
    """Malformed instance or coloring text."""

    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
