"""Exception types shared across the package.

Only errors that callers need to tell apart get their own class; argument
validation uses plain ValueError.
"""


class ConfigError(ValueError):
    """A configuration document or flag is invalid; message names the field."""


class LatticeFormatError(ValueError):
    """A latency lattice file is malformed; message names the offending record."""


class EvaluationError(RuntimeError):
    """An accuracy evaluator failed (bad reply, crash, timeout)."""

    def __init__(self, message: str, raw: str | None = None):
        super().__init__(message if raw is None else f"{message} (raw reply: {raw!r})")
        self.raw = raw


class DivergenceError(RuntimeError):
    """Training produced a non-finite loss."""

    def __init__(self, message: str, last_finite_loss: float | None = None):
        super().__init__(message)
        self.last_finite_loss = last_finite_loss


class CheckpointError(RuntimeError):
    """A checkpoint is missing, corrupt, or incompatible with the request."""
