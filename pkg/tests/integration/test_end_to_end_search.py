"""
End-to-end integration tests for semsearch.

Tests the complete workflow from an N-Triples file to ranked answers and
evaluation scores, and the reproducibility of the persisted build.
"""

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from semsearch.engines.query import load_engine  # noqa: E402
from semsearch.evaluation import evaluate, load_gold_set  # noqa: E402
from tests.fixtures.sample_data import (  # noqa: E402
    EXPECTED_EVAL,
    planted_graph_lines,
    random_graph_lines,
    res,
)
from tests.utils.test_helpers import (  # noqa: E402
    build_into,
    read_artifact_bytes,
    write_lines,
)


class TestEndToEndSearch:
    """Test complete build-and-query workflows."""

    def test_build_query_evaluate(self, planted_nt, gold_file, tmp_path):
        """Test build, load, query and evaluation in one pass."""
        result = build_into(planted_nt, tmp_path / "artifacts")
        loaded = load_engine(result.artifact_dir)

        assert [r.iri for r in loaded.engine.search("acacia")][0] == res("Acacia")
        report = evaluate(loaded.engine, load_gold_set(gold_file), loaded.config.k, 2)
        for key, expected in EXPECTED_EVAL.items():
            assert report.summary()[key] == pytest.approx(expected)

    def test_rebuild_is_byte_identical(self, planted_nt, tmp_path):
        """Test two builds of one dataset and configuration write identical bytes."""
        first = build_into(planted_nt, tmp_path / "first")
        second = build_into(planted_nt, tmp_path / "second")

        assert read_artifact_bytes(first.artifact_dir) == read_artifact_bytes(
            second.artifact_dir
        )
        assert first.manifest.content_hash == second.manifest.content_hash

    def test_build_logs_structured_counts(self, planted_nt, tmp_path, mocker):
        """Test the finished build is logged with its manifest counts attached."""
        log = mocker.patch("semsearch.engines.builder.log_structured")
        result = build_into(planted_nt, tmp_path / "artifacts")

        log.assert_called_once()
        fields = log.call_args.kwargs
        assert fields["classes"] == result.manifest.counts["classes"]
        assert fields["triples"] == result.manifest.counts["triples"]
        assert fields["artifact_dir"] == str(result.artifact_dir)

    def test_line_order_does_not_matter(self, tmp_path):
        """Test permuted input yields the same artifacts; only the manifest differs."""
        lines = planted_graph_lines()
        forward = write_lines(tmp_path / "forward.nt", lines)
        backward = write_lines(tmp_path / "backward.nt", list(reversed(lines)))

        a = read_artifact_bytes(build_into(forward, tmp_path / "a").artifact_dir)
        b = read_artifact_bytes(build_into(backward, tmp_path / "b").artifact_dir)
        a.pop("manifest.json")
        b.pop("manifest.json")
        assert a == b

    def test_changed_parameters_change_the_manifest(self, planted_nt, tmp_path):
        """Test the manifest hash covers the build parameters."""
        base = build_into(planted_nt, tmp_path / "base")
        other = build_into(planted_nt, tmp_path / "other", {"tau": 0.8})

        assert base.manifest.content_hash != other.manifest.content_hash
        # Aloe-Amaryllis survives tau=0.8, Acacia drops out
        loaded = load_engine(other.artifact_dir)
        answer = [r.iri for r in loaded.engine.search("aloe")]
        assert answer == [res("Aloe"), res("Amaryllis")]

    @pytest.mark.parametrize("seed", [3, 4])
    def test_random_graph_round_trip(self, tmp_path, seed):
        """Test every subject of a random graph is classified and searchable."""
        dataset = write_lines(tmp_path / "random.nt", random_graph_lines(seed))
        result = build_into(dataset, tmp_path / "artifacts")
        loaded = load_engine(result.artifact_dir)

        subjects = result.manifest.counts["subjects"]
        assert len(loaded.engine.graph_index) == subjects
        entity = sorted(loaded.engine.graph_index.entries)[0]
        results = loaded.engine.search(entity.rsplit("/", 1)[1])
        assert entity in [r.iri for r in results]
