"""Build manifest: configuration, dataset hash and per-artifact hashes of one build."""

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict

from semsearch.base import FORMAT_VERSION
from semsearch.core.exceptions import (
    ArtifactError,
    ArtifactWriteError,
    StaleArtifactError,
)
from semsearch.core.logger import get_logger
from semsearch.core.utils import sha256_file, write_text_atomic
from semsearch.types import PathLike
from semsearch.version import __version__

MANIFEST_FILE = "manifest.json"

logger = get_logger("manifest")


def _canonical_json(payload: Dict[str, Any]) -> str:
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False)


@dataclass
class BuildManifest:
    config: Dict[str, Any]
    dataset: Dict[str, Any]
    artifacts: Dict[str, str] = field(default_factory=dict)
    counts: Dict[str, int] = field(default_factory=dict)
    format_version: int = FORMAT_VERSION
    generator: str = f"semsearch {__version__}"

    def payload(self) -> Dict[str, Any]:
        return {
            "format_version": self.format_version,
            "generator": self.generator,
            "config": self.config,
            "dataset": self.dataset,
            "artifacts": self.artifacts,
            "counts": self.counts,
        }

    @property
    def content_hash(self) -> str:
        encoded = _canonical_json(self.payload()).encode("utf-8")
        return hashlib.sha256(encoded).hexdigest()

    def to_dict(self) -> Dict[str, Any]:
        return {**self.payload(), "manifest_hash": self.content_hash}

    def save(self, directory: PathLike) -> Path:
        path = Path(directory) / MANIFEST_FILE
        try:
            write_text_atomic(path, [_canonical_json(self.to_dict())])
        except OSError as e:
            raise ArtifactWriteError(MANIFEST_FILE, e) from e
        return path

    @classmethod
    def load(cls, directory: PathLike) -> "BuildManifest":
        path = Path(directory) / MANIFEST_FILE
        try:
            with open(path, "r", encoding="utf-8") as f:
                data = json.load(f)
        except FileNotFoundError as e:
            raise ArtifactError(
                "no build manifest; run 'semsearch build' first", str(path)
            ) from e
        except (OSError, ValueError) as e:
            raise ArtifactError(f"unreadable build manifest: {e}", str(path)) from e

        if data.get("format_version") != FORMAT_VERSION:
            raise ArtifactError(
                f"unsupported format version {data.get('format_version')!r} "
                f"(expected {FORMAT_VERSION})",
                str(path),
            )
        try:
            manifest = cls(
                config=dict(data["config"]),
                dataset=dict(data["dataset"]),
                artifacts=dict(data["artifacts"]),
                counts=dict(data.get("counts", {})),
                format_version=int(data["format_version"]),
                generator=str(data.get("generator", "")),
            )
        except (KeyError, TypeError, ValueError) as e:
            raise ArtifactError(f"incomplete build manifest: {e}", str(path)) from e

        if data.get("manifest_hash") != manifest.content_hash:
            raise StaleArtifactError(
                "manifest content does not match its hash", str(path)
            )
        return manifest

    def verify(self, directory: PathLike) -> None:
        """Raise StaleArtifactError unless every artifact matches its recorded hash."""
        root = Path(directory)
        for name, expected in sorted(self.artifacts.items()):
            path = root / name
            if not path.is_file():
                raise StaleArtifactError(
                    "artifact listed in manifest is missing", str(path)
                )
            actual = sha256_file(path)
            if actual != expected:
                raise StaleArtifactError(
                    "artifact changed since build (hash mismatch); rebuild required",
                    str(path),
                )
        logger.debug(f"Verified {len(self.artifacts)} artifacts in {root}")
