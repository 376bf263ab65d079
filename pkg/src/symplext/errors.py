"""Exception hierarchy shared by the engine and the command line driver."""


class SymplextError(Exception):
    """Base class for every error raised by this package."""


class InputError(SymplextError):
    """The user supplied data that cannot be processed (exit status 2)."""


class PresentationMismatch(InputError):
    """Two polynomials over different presentations were combined."""


class UnsupportedInput(InputError):
    """The input is mathematically valid but outside the supported family."""


class DegreeCapExceeded(InputError):
    """A basis enumeration was requested beyond the configured degree cap."""


class ModelInconsistency(SymplextError):
    """An internal consistency check failed while building a model.

    This signals a bug or a malformed coefficient algebra, never a valid
    mathematical outcome.
    """
