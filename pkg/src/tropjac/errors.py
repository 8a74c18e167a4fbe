class TropjacError(Exception):
    """Base class for errors raised by this package."""


class DimensionError(TropjacError, ValueError):
    pass


class PreconditionError(TropjacError, ValueError):
    """An operation was called outside its domain (e.g. a non-compact curve)."""


class UnboundedError(PreconditionError):
    """A monodromy homomorphism failed the boundedness test.

    ``certificate`` carries the offending cycle and the values involved so
    callers (the CLI in particular) can print them.
    """

    def __init__(self, message: str, certificate=None):
        super().__init__(message)
        self.certificate = certificate
