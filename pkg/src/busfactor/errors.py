"""Exception hierarchy shared by the pipeline, the HTTP service, and the CLI.

CLI exit codes map onto this hierarchy: InputError -> 2, NetworkError (and
subclasses) -> 4, every other BusFactorError -> 3.
"""


class BusFactorError(Exception):
    """Base class for every error raised by this package."""


class InputError(BusFactorError):
    """Caller-supplied arguments are malformed or point at nothing usable."""


class DomainError(BusFactorError):
    """The request is well-formed but cannot be satisfied."""


class ContractViolation(BusFactorError):
    """An internal precondition was broken; indicates a caller bug."""


class MiningError(DomainError):
    """History extraction failed (no commits, no resolvable main branch, ...)."""


class RepoNotFoundError(DomainError):
    """The hosting provider does not know the requested repository."""


class UnknownAuthorsError(DomainError):
    """A simulation referenced author ids absent from the knowledge matrix."""

    def __init__(self, unknown: list[str]):
        self.unknown = tuple(sorted(unknown))
        super().__init__("unknown author ids: " + ", ".join(self.unknown))


class QueueFullError(DomainError):
    """The job queue reached its cap; retry after running jobs drain."""


class NetworkError(BusFactorError):
    """Transport-level failure talking to the hosting provider or remote."""

    def __init__(self, message: str, retryable: bool = False):
        self.retryable = retryable
        super().__init__(message)


class AuthError(NetworkError):
    """The remote rejected our credentials; not retryable."""

    def __init__(self, message: str):
        super().__init__(message, retryable=False)


class RateLimitError(NetworkError):
    """The provider throttled us; carries the suggested wait in seconds."""

    def __init__(self, message: str, retry_after: float | None = None):
        self.retry_after = retry_after
        super().__init__(message, retryable=True)
