"""Exception hierarchy. The CLI maps these onto stable exit codes."""


class ContactSpectraError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(ContactSpectraError, ValueError):
    """Input parameters violate a precondition (exit code 2)."""


class ParityError(ValidationError):
    """A Morse-Bott grading came out half-integral: inconsistent stratum data."""


class WindowError(ContactSpectraError, ValueError):
    """A requested degree or length window is not certified (exit code 3).

    The message names the hypothesis that failed.
    """


class CertificateError(ContactSpectraError, AssertionError):
    """An internal consistency check failed. Should never happen."""
