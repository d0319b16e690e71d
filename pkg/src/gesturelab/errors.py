"""Exception hierarchy shared across the pipeline and service."""


class GestureLabError(Exception):
    """Base class for all gesturelab errors."""


class ParseError(GestureLabError):
    """Input bytes could not be decoded (bad JSON, non-numeric vector, ...)."""


class SchemaError(GestureLabError):
    """Input decoded but violates the documented schema or its invariants."""


class ConfigError(GestureLabError):
    """Missing or inconsistent configuration / arguments."""


class NormalizationError(GestureLabError):
    """Skeleton cannot be mapped into the gesture space (no origin keypoint)."""


class TypingError(GestureLabError):
    """Gesture type cannot be decided (wrists never detected)."""


class EmptySegmentError(GestureLabError):
    """Operation requires at least one skeleton / frame."""


class DegenerateFrameError(GestureLabError):
    """Frame distance undefined: the weighting confidences all vanish."""


class GlyphError(GestureLabError):
    """Glyph cannot be built from a degenerate segment."""


class TooFewItemsError(GestureLabError):
    """2D projection needs at least three items."""


class ValidationError(GestureLabError):
    """A service write references something that does not exist."""


class StorageError(GestureLabError):
    """Data root unreadable or a persisted file is corrupt."""


class NotFoundError(GestureLabError):
    """Unknown video or record id."""


class ConflictError(GestureLabError):
    """Resource exists but is not ready (analysis still pending)."""
