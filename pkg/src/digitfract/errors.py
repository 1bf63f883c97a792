"""Exception hierarchy shared by every module.

Each error carries a machine-readable ``kind`` used by the HTTP layer to
pick a status code and by the CLI to pick an exit code:

    validation / empty-set / complement-finite  -> HTTP 422, exit 2
    budget / horizon / run-not-found            -> HTTP 409, exit 3
    anything else                               -> HTTP 500, exit 1
"""

from __future__ import annotations


class ToolkitError(Exception):
    kind = "internal"

    def __init__(self, message: str, *, precondition: str | None = None):
        super().__init__(message)
        self.message = message
        self.precondition = precondition

    def payload(self) -> dict:
        out = {"kind": self.kind, "message": self.message}
        if self.precondition is not None:
            out["precondition"] = self.precondition
        return out


class InvalidParams(ToolkitError):
    """A validated precondition does not hold for the given inputs."""

    kind = "validation"


class HorizonExceeded(ToolkitError):
    """A truncated position set was queried beyond its horizon."""

    kind = "horizon"


class BudgetExceeded(ToolkitError):
    """An enumeration or search would exceed its configured budget."""

    kind = "budget"


class RunNotFound(ToolkitError):
    """No block of consecutive positions long enough for the request
    exists within the search horizon."""

    kind = "run-not-found"


class EmptySet(ToolkitError):
    kind = "empty-set"


class ComplementFinite(ToolkitError):
    """The complement of the position set is exhausted within the scan
    horizon; the restricted set contains an interval and the scan is moot."""

    kind = "complement-finite"


# exit codes for the CLI / status codes for the service
EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_VALIDATION = 2
EXIT_LIMITS = 3

_VALIDATION_KINDS = {"validation", "empty-set", "complement-finite"}
_LIMIT_KINDS = {"budget", "horizon", "run-not-found"}


def exit_code_for(kind: str) -> int:
    if kind in _VALIDATION_KINDS:
        return EXIT_VALIDATION
    if kind in _LIMIT_KINDS:
        return EXIT_LIMITS
    return EXIT_INTERNAL


def http_status_for(kind: str) -> int:
    if kind in _VALIDATION_KINDS:
        return 422
    if kind in _LIMIT_KINDS:
        return 409
    return 500
