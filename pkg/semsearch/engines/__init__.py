"""
Build and query engines.

- builder: runs the preprocessing pipeline and persists the artifacts
- query: verifies and loads persisted artifacts for searching
- manifest: build manifest with configuration and content hashes
"""

from .builder import BuildArtifacts, BuildResult, IndexBuilder, build_artifacts
from .manifest import MANIFEST_FILE, BuildManifest
from .query import LoadedEngine, load_engine

__all__ = [
    "BuildArtifacts",
    "BuildResult",
    "IndexBuilder",
    "build_artifacts",
    "MANIFEST_FILE",
    "BuildManifest",
    "LoadedEngine",
    "load_engine",
]
