"""Base class for persisted artifacts.

Every artifact is a UTF-8 text table. The file opens with a block of
``# `` header lines: the first names the artifact and its format version, the
rest are ``key=value`` parameters. Body lines follow, tab-separated.
"""

from abc import ABC, abstractmethod
from pathlib import Path
from typing import Dict, List, Sequence, Tuple, Type, TypeVar

from semsearch.core.exceptions import ArtifactError, ArtifactWriteError
from semsearch.core.logger import get_logger
from semsearch.core.utils import write_text_atomic
from semsearch.types import PathLike

FORMAT_VERSION = 1
HEADER_PREFIX = "# "

logger = get_logger("artifacts")

A = TypeVar("A", bound="BaseArtifact")


class BaseArtifact(ABC):
    """A derived structure that is written to and read from an artifact directory."""

    #: file name inside the artifact directory
    file_name: str = ""
    #: artifact kind written on the first header line
    kind: str = ""

    @abstractmethod
    def to_lines(self) -> Sequence[str]:
        """Body lines, without trailing newlines."""

    def header_fields(self) -> Dict[str, str]:
        """Extra ``key=value`` header parameters."""
        return {}

    @classmethod
    @abstractmethod
    def from_lines(
        cls: Type[A], header: Dict[str, str], body: List[str], path: Path
    ) -> A:
        """Rebuild the artifact from parsed header fields and body lines.

        Implementations raise ArtifactError on malformed input.
        """

    def save(self, directory: PathLike) -> Path:
        """Write the artifact atomically into ``directory``."""
        path = Path(directory) / self.file_name
        lines: List[str] = [
            f"{HEADER_PREFIX}semsearch {self.kind} format={FORMAT_VERSION}"
        ]
        lines.extend(
            f"{HEADER_PREFIX}{key}={value}"
            for key, value in self.header_fields().items()
        )
        lines.extend(self.to_lines())
        try:
            write_text_atomic(path, lines)
        except OSError as e:
            raise ArtifactWriteError(self.file_name, e) from e
        logger.debug(f"Wrote {path} ({len(lines)} lines)")
        return path

    @classmethod
    def load(cls: Type[A], directory: PathLike) -> A:
        """Read the artifact from ``directory``, checking kind and format version."""
        path = Path(directory) / cls.file_name
        try:
            with open(path, "r", encoding="utf-8") as f:
                raw_lines = f.read().split("\n")
        except FileNotFoundError as e:
            raise ArtifactError("artifact file is missing", str(path)) from e
        except (OSError, UnicodeDecodeError) as e:
            raise ArtifactError(f"artifact file is unreadable: {e}", str(path)) from e

        if raw_lines and raw_lines[-1] == "":
            raw_lines.pop()

        header, body = cls._split_header(raw_lines, path)
        try:
            artifact = cls.from_lines(header, body, path)
        except ArtifactError:
            raise
        except (ValueError, IndexError, KeyError) as e:
            raise ArtifactError(f"corrupted artifact: {e}", str(path)) from e
        logger.debug(f"Loaded {path}")
        return artifact

    @classmethod
    def _split_header(
        cls, raw_lines: List[str], path: Path
    ) -> Tuple[Dict[str, str], List[str]]:
        if not raw_lines or not raw_lines[0].startswith(HEADER_PREFIX):
            raise ArtifactError("missing artifact header", str(path))

        first = raw_lines[0][len(HEADER_PREFIX) :].split()
        if len(first) != 3 or first[0] != "semsearch" or first[1] != cls.kind:
            raise ArtifactError(
                f"expected a {cls.kind} artifact, found {raw_lines[0]!r}", str(path)
            )
        version = first[2].partition("=")[2]
        if version != str(FORMAT_VERSION):
            raise ArtifactError(
                f"unsupported format version {version!r} (expected {FORMAT_VERSION})",
                str(path),
            )

        header: Dict[str, str] = {}
        index = 1
        while index < len(raw_lines) and raw_lines[index].startswith(HEADER_PREFIX):
            key, sep, value = raw_lines[index][len(HEADER_PREFIX) :].partition("=")
            if not sep:
                raise ArtifactError(
                    f"malformed header line {raw_lines[index]!r}", str(path)
                )
            header[key.strip()] = value.strip()
            index += 1
        return header, raw_lines[index:]
