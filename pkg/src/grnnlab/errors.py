"""Exception types shared across the package."""


class DimensionError(ValueError):
    """Vector or matrix shapes do not line up."""


class EmptyModelError(ValueError):
    """A prediction was requested from a model with no stored patterns."""


class DataFormatError(ValueError):
    """A dataset file is malformed; the message carries the line number."""


class DivergenceError(RuntimeError):
    """Training error became non-finite.  ``epoch`` names the failing epoch."""

    def __init__(self, message, epoch):
        super().__init__(message)
        self.epoch = epoch


class BlowupError(RuntimeError):
    """Simulated state became non-finite or absurdly large.  ``step`` names
    the failing step."""

    def __init__(self, message, step):
        super().__init__(message)
        self.step = step
