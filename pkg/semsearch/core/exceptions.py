"""Custom exceptions for semsearch."""

from typing import Optional


class SemSearchError(Exception):
    """Base class for exceptions in this package."""


class DatasetError(SemSearchError):
    """Exception raised when a dataset file cannot be used."""

    def __init__(self, message: str = "Error reading dataset") -> None:
        self.message = message
        super().__init__(self.message)


class NTriplesParseError(SemSearchError):
    """Exception raised for a malformed N-Triples line."""

    def __init__(self, line: int, column: int, message: str, text: str = "") -> None:
        self.line = line
        self.column = column
        self.text = text
        super().__init__(f"line {line}, column {column}: {message}")


class EmptyCorpusError(SemSearchError):
    """Exception raised when idf weights are requested for an empty corpus."""

    def __init__(self, message: str = "no literals to weight") -> None:
        self.message = message
        super().__init__(self.message)


class ArtifactError(SemSearchError):
    """Exception raised for unreadable, corrupted or incompatible artifacts."""

    def __init__(self, message: str, path: Optional[str] = None) -> None:
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


class StaleArtifactError(ArtifactError):
    """Exception raised when artifacts no longer match their build manifest."""


class ArtifactWriteError(SemSearchError):
    """Exception raised when an artifact could not be written."""

    def __init__(self, artifact_name: str, original_exception: Exception) -> None:
        self.artifact_name = artifact_name
        self.original_exception = original_exception
        message = f"Failed to write {artifact_name}: {original_exception}"
        super().__init__(message)


class IndexBuildError(SemSearchError):
    """Exception raised when the graph index cannot be derived from the summary."""


class InvalidQueryError(SemSearchError):
    """Exception raised for a query with no usable keywords."""

    def __init__(self, message: str = "query contains no searchable keywords") -> None:
        self.message = message
        super().__init__(self.message)


class GoldSetError(SemSearchError):
    """Exception raised for an unreadable or inconsistent gold relevance file."""
