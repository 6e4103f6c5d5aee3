"""Exception types shared across the toolkit.

Everything raised on purpose derives from :class:`AdaContrastError`, so the
CLI can map any domain failure to exit code 1 without enumerating causes.
"""


class AdaContrastError(Exception):
    """Base class for all toolkit errors."""


class InvalidInputError(AdaContrastError, ValueError):
    """An argument violates a precondition (empty text, k = 0, ...)."""


class ShapeError(AdaContrastError, ValueError):
    """Array shapes or lengths are incompatible."""


class ParameterError(AdaContrastError, ValueError):
    """A numeric parameter is outside its valid range (tau <= 0, ...)."""


class ConfigurationError(AdaContrastError):
    """A required resource (lexicon, config file, vocab) is missing or unusable."""


class BackendError(AdaContrastError):
    """A remote generation or encoder backend failed."""


class GenerationError(AdaContrastError):
    """Sample generation failed for specific components.

    ``components`` holds the component tags that could not be generated
    (``"positive"`` stands in for the restructured positive), so callers can
    report failures per component instead of discarding the whole bundle.
    """

    def __init__(self, message, components=()):
        super().__init__(message)
        self.components = tuple(components)


class BundleFormatError(AdaContrastError, ValueError):
    """A bundle file record is malformed; carries the offending line and field."""

    def __init__(self, message, line_number, field=None):
        super().__init__(message)
        self.line_number = line_number
        self.field = field


class IntegrityError(AdaContrastError):
    """Stored metadata (dataset digest, checkpoint header) does not match."""


class TrainingDivergedError(AdaContrastError):
    """Training produced a non-finite loss; carries the failing step index."""

    def __init__(self, message, step):
        super().__init__(message)
        self.step = step
