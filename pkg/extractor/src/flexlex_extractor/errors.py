"""Exception types shared across the extractor."""


class ExtractorError(Exception):
    """Base class for every error raised by this package."""


class JobConfigError(ExtractorError):
    """Invalid job file, key, value, or layer selection."""


class InputDataError(ExtractorError):
    """A corpus, cluster table, or vector table violates its contract."""

    def __init__(self, message: str, line_number: int | None = None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


class ModelError(ExtractorError):
    """The language model could not be loaded or produced unusable output."""
