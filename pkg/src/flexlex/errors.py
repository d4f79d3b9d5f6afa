"""Exception types shared across the toolkit."""


class FlexlexError(Exception):
    """Base class for every error raised by this package."""


class ConfigurationError(FlexlexError):
    """Invalid thresholds, flags, or job wiring."""


class DataError(FlexlexError):
    """Input data violates a documented contract."""


class MalformedRecordError(DataError):
    """A structurally invalid input row."""

    def __init__(self, message: str, line_number: int | None = None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


class EncodingError(DataError):
    """Input bytes are not valid UTF-8."""


class StoreFormatError(DataError):
    """An embedding store violates the WCF1 contract on write."""


class UnrecognizedFormatError(DataError):
    """Input bytes do not start with the WCF1 magic."""


class CorruptStoreError(DataError):
    """A WCF1 payload ends or breaks before its declared contents."""

    def __init__(self, message: str, offset: int | None = None):
        if offset is not None:
            message = f"{message} (byte offset {offset})"
        super().__init__(message)
        self.offset = offset


class EmptyClassError(DataError):
    """An operation that needs at least one vector per class got none."""


class UndefinedCosineError(DataError):
    """Cosine distance is undefined because a vector has (near-)zero norm."""


class DegenerateInputError(DataError):
    """Statistical input carries no usable signal."""


class InsufficientDataError(DataError):
    """Fewer matched observations than the operation requires."""
