"""
Input validation for dataset files handed to the build pipeline.
"""

import os
from pathlib import Path
from typing import Any, Dict, Optional

from charset_normalizer import from_bytes

from semsearch.config import settings
from semsearch.core.exceptions import DatasetError
from semsearch.types import PathLike


class DatasetValidator:
    """Checks a dataset path before it is parsed."""

    def __init__(self, max_file_size_mb: Optional[float] = None) -> None:
        self.max_file_size_mb = (
            max_file_size_mb
            if max_file_size_mb is not None
            else settings.get("performance.max_file_size_mb", 500)
        )
        self.encoding_sample_size = settings.get(
            "performance.encoding_sample_size", 8192
        )

    def validate_dataset(self, file_path: PathLike) -> Dict[str, Any]:
        """
        Validate an N-Triples dataset file.

        Args:
            file_path: Path to the dataset

        Returns:
            Dict with the resolved path, size and encoding

        Raises:
            DatasetError: If the file is missing, unreadable, too large or not UTF-8
        """
        path = Path(file_path)

        self._validate_file_exists(path)
        self._validate_file_permissions(path)
        size_mb = self._validate_file_size(path)
        self._validate_encoding(path)

        return {
            "file_path": str(path),
            "file_size_mb": size_mb,
            "encoding": "utf-8",
            "validation_status": "valid",
        }

    def _validate_file_exists(self, file_path: Path) -> None:
        if not file_path.exists():
            raise DatasetError(f"no such dataset: {file_path}")
        if not file_path.is_file():
            raise DatasetError(f"dataset path is not a file: {file_path}")

    def _validate_file_permissions(self, file_path: Path) -> None:
        if not os.access(file_path, os.R_OK):
            raise DatasetError(f"no read permission for dataset: {file_path}")

    def _validate_file_size(self, file_path: Path) -> float:
        size_mb = file_path.stat().st_size / (1024 * 1024)
        if size_mb > self.max_file_size_mb:
            raise DatasetError(
                f"dataset size ({size_mb:.1f}MB) exceeds maximum limit "
                f"({self.max_file_size_mb}MB)"
            )
        return size_mb

    def _validate_encoding(self, file_path: Path) -> None:
        """N-Triples is UTF-8; name the likely encoding when it is not."""
        try:
            with open(file_path, "r", encoding="utf-8") as f:
                for _ in f:
                    pass
            return
        except UnicodeDecodeError as e:
            with open(file_path, "rb") as f:
                sample = f.read(self.encoding_sample_size)
            guess = from_bytes(sample).best()
            detected = guess.encoding if guess is not None else "unknown"
            raise DatasetError(
                f"dataset is not valid UTF-8 ({e.reason} at byte {e.start}); "
                f"detected encoding: {detected}"
            ) from e
