"""Exception hierarchy shared across the engine."""


class GunrockError(Exception):
    """Base class for all engine errors."""


class InvalidInputError(GunrockError):
    """Caller passed input that violates an operation's precondition."""


class ConfigError(GunrockError):
    """A configuration or data file failed validation at load time.

    ``violations`` lists every problem found so authors can fix a file in
    one pass instead of replaying load errors one at a time.
    """

    def __init__(self, message: str, violations: list[str] | None = None):
        super().__init__(message)
        self.violations = violations or []


class MissingTemplateError(GunrockError):
    """No templates are registered for a requested dialog-state key."""


class UnfilledSlotError(GunrockError):
    """A template slot had no binding. ``slot`` names the offender."""

    def __init__(self, slot: str):
        super().__init__(f"no binding for slot '{slot}'")
        self.slot = slot


class DegenerateDesignError(GunrockError):
    """Regression design matrix is singular (constant predictor)."""


class InsufficientDataError(GunrockError):
    """Too few observations to fit the requested model."""


class SessionNotFoundError(GunrockError):
    """Unknown or already-closed session id."""


class SessionBusyError(GunrockError):
    """A turn is already in flight for this session."""
