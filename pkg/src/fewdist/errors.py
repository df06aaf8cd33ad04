"""Exception hierarchy shared across the package.

The CLI maps these onto its exit-code contract: format/usage problems
exit with 2, failed mathematical checks with 1.
"""


class FewdistError(Exception):
    """Base class for all package-specific errors."""


class ConfigFormatError(FewdistError):
    """Malformed configuration text or a point failing its norm check."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class PreconditionError(FewdistError):
    """An operation was invoked with arguments outside its contract."""


class SpectrumError(FewdistError):
    """The inner-product multiset cannot be classified into distances."""


class AmbiguousSpectrumError(SpectrumError):
    """Floating-point clustering produced representatives too close to
    separate reliably; the input is too noisy to classify."""


class InapplicableError(FewdistError):
    """A theorem's hypothesis is not met by the given input."""
