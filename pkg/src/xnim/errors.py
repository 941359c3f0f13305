"""Exception types shared across the package."""


class XnimError(Exception):
    """Base class for errors raised by this package."""


class ResourceLimitError(XnimError):
    """A requested computation would exceed the configured memory budget."""


class OutOfBoundError(XnimError):
    """A position lies outside the pile bound of the table it was queried against."""

    def __init__(self, message: str, required_bound: int | None = None):
        super().__init__(message)
        self.required_bound = required_bound


class InsufficientBoundError(XnimError):
    """A verification needs a larger pile bound than the supplied tables have."""

    def __init__(self, message: str, missing: list[str] | None = None):
        super().__init__(message)
        self.missing = missing or []


class CorruptTableError(XnimError):
    """A table file failed structural validation (magic, length, or field checks)."""


class UnsupportedVersionError(CorruptTableError):
    """A table file declares a format version newer than this code understands."""
