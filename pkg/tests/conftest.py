"""
Pytest configuration and shared fixtures for semsearch tests.

This module provides:
- N-Triples fixture files (planted graph, tiny graphs)
- Built artifact directories for query-side tests
- Environment setup/teardown
- Settings restoration after runtime overrides
"""

import os
import sys
import tempfile
from pathlib import Path

import pytest

# Add project root to Python path for testing
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from semsearch.config import settings  # noqa: E402
from semsearch.engines.query import load_engine  # noqa: E402
from tests.fixtures.sample_data import (  # noqa: E402
    planted_graph_text,
    two_triple_text,
    write_planted_gold,
)
from tests.utils.test_helpers import build_into  # noqa: E402


@pytest.fixture(scope="session")
def project_root_path():
    """Return the project root directory path."""
    return project_root


@pytest.fixture
def temp_output_dir():
    """Create a temporary directory for test outputs."""
    with tempfile.TemporaryDirectory() as temp_dir:
        yield Path(temp_dir)


@pytest.fixture
def planted_nt(tmp_path):
    """The planted plants/athletes/philosophers graph as an N-Triples file."""
    path = tmp_path / "planted.nt"
    path.write_text(planted_graph_text(), encoding="utf-8")
    return path


@pytest.fixture
def two_triple_nt(tmp_path):
    path = tmp_path / "two.nt"
    path.write_text(two_triple_text(), encoding="utf-8")
    return path


@pytest.fixture
def gold_file(tmp_path):
    return write_planted_gold(tmp_path / "gold.tsv")


@pytest.fixture(scope="session")
def planted_build(tmp_path_factory):
    """One build of the planted graph shared by read-only tests."""
    root = tmp_path_factory.mktemp("planted")
    dataset = root / "planted.nt"
    dataset.write_text(planted_graph_text(), encoding="utf-8")
    artifact_dir = root / "artifacts"
    return build_into(dataset, artifact_dir)


@pytest.fixture(scope="session")
def planted_engine(planted_build):
    return load_engine(planted_build.artifact_dir)


@pytest.fixture
def restore_settings():
    """Reload master_config.yml after a test mutates settings."""
    yield settings
    settings.reload()


@pytest.fixture(autouse=True)
def setup_test_environment():
    """Set up test environment before each test."""
    original_env = os.environ.copy()
    os.environ["TESTING"] = "1"
    os.environ.pop("SEMSEARCH_CONFIG", None)

    yield

    # Restore original environment
    os.environ.clear()
    os.environ.update(original_env)


def pytest_collection_modifyitems(config, items):
    """Add markers based on test paths and names."""
    for item in items:
        path = str(item.fspath)
        if "integration" in path:
            item.add_marker(pytest.mark.integration)
        if "performance" in path:
            item.add_marker(pytest.mark.performance)
        if "/unit/" in path or "\\unit\\" in path:
            item.add_marker(pytest.mark.unit)
        if "large" in item.name or "scale" in item.name:
            item.add_marker(pytest.mark.slow)
