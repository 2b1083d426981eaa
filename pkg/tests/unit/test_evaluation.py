"""
Unit tests for precision, recall and F-measure evaluation.
"""

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from semsearch.core.exceptions import GoldSetError  # noqa: E402
from semsearch.evaluation import (  # noqa: E402
    EvalReport,
    GoldSet,
    QueryEvaluation,
    evaluate,
    evaluate_query,
    f_measure,
    load_gold_set,
    precision,
    recall,
)
from tests.fixtures.sample_data import EXPECTED_EVAL, res  # noqa: E402


class TestMetrics:
    """Test cases for the metric formulas."""

    def test_precision(self):
        assert precision(2, 1) == pytest.approx(2 / 3)
        assert precision(0, 0) == 0.0

    def test_recall(self):
        assert recall(3, 1) == pytest.approx(0.75)

    def test_recall_without_relevant_entities(self):
        """Test recall needs a non-empty relevant set."""
        with pytest.raises(GoldSetError):
            recall(0, 0)

    def test_f_measure(self):
        """Test the harmonic mean, including the zero case."""
        assert f_measure(1.0, 1.0) == 1.0
        assert f_measure(0.0, 0.0) == 0.0
        assert f_measure(0.652, 0.891) == pytest.approx(0.753, abs=1e-3)

    def test_evaluate_query(self):
        """Test tp/fp/fn bookkeeping for one query."""
        row = evaluate_query("q", ["a", "b", "c"], frozenset({"a", "d"}))
        assert (row.tp, row.fp, row.fn) == (1, 2, 1)
        assert row.precision == pytest.approx(1 / 3)
        assert row.recall == pytest.approx(0.5)
        assert row.f_measure == pytest.approx(0.4)

    def test_empty_answer(self):
        """Test an empty answer has precision, recall and F of zero."""
        row = evaluate_query("q", [], frozenset({"a"}))
        assert (row.precision, row.recall, row.f_measure) == (0.0, 0.0, 0.0)


class TestEvalReport:
    """Test cases for macro and micro averaging."""

    def _row(self, p, r, tp=1, fp=0, fn=0):
        return QueryEvaluation("q", tp, fp, fn, p, r, f_measure(p, r))

    def test_macro_averages(self):
        """Test macro precision and recall are plain means."""
        rows = [self._row(1.0, 1.0), self._row(0.304, 0.782)]
        report = EvalReport.from_rows(rows, k=10)

        assert report.macro_precision == pytest.approx(0.652)
        assert report.macro_recall == pytest.approx(0.891)
        assert report.macro_f == pytest.approx((1.0 + f_measure(0.304, 0.782)) / 2)
        assert report.f_of_macro == pytest.approx(0.753, abs=1e-3)

    def test_micro_pools_counts(self):
        """Test micro scores use pooled counts."""
        rows = [
            evaluate_query("a", ["x"], frozenset({"x"})),
            evaluate_query("b", ["y", "z", "w"], frozenset({"y", "v"})),
        ]
        report = EvalReport.from_rows(rows, k=3)
        assert report.micro_precision == pytest.approx(2 / 4)
        assert report.micro_recall == pytest.approx(2 / 3)

    def test_no_rows(self):
        report = EvalReport.from_rows([], k=5)
        assert report.summary()["macro_f"] == 0.0

    def test_frame(self):
        """Test the per-query table."""
        frame = EvalReport.from_rows([self._row(0.5, 1.0)], k=1).to_frame()
        assert list(frame["precision"]) == [0.5]
        assert "f_measure" in frame.columns


class TestGoldSet:
    """Test cases for gold file loading."""

    def test_load(self, gold_file):
        """Test queries and relevant sets are read."""
        gold = load_gold_set(gold_file)
        assert len(gold) == 3
        assert gold.entries["andre agassi"] == frozenset({res("Andre_Agassi")})

    def test_repeated_query_lines_merge(self, tmp_path):
        path = tmp_path / "gold.tsv"
        path.write_text("q\ta\nq\tb\n", encoding="utf-8")
        assert load_gold_set(path).entries["q"] == frozenset({"a", "b"})

    def test_missing_tab(self, tmp_path):
        """Test malformed lines name their position."""
        path = tmp_path / "gold.tsv"
        path.write_text("q a,b\n", encoding="utf-8")
        with pytest.raises(GoldSetError, match="gold.tsv:1"):
            load_gold_set(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(GoldSetError, match="cannot read"):
            load_gold_set(tmp_path / "none.tsv")

    def test_empty_relevant_set(self):
        """Test a query without relevant entities is rejected."""
        with pytest.raises(GoldSetError, match="empty"):
            GoldSet({"q": frozenset()})

    def test_empty_gold_set(self):
        with pytest.raises(GoldSetError):
            GoldSet({})


@pytest.mark.search
class TestEvaluate:
    """Test cases for running a gold set through the engine."""

    def test_planted_gold(self, planted_engine, gold_file):
        """Test the planted judgments give the known scores."""
        gold = load_gold_set(gold_file)
        report = evaluate(planted_engine.engine, gold, k=10, workers=2)
        summary = report.summary()

        for key, expected in EXPECTED_EVAL.items():
            assert summary[key] == pytest.approx(expected), key
        assert report.warnings == []

    def test_unknown_iri_warns(self, planted_engine):
        """Test gold IRIs absent from the graph are reported."""
        gold = GoldSet({"acacia": frozenset({res("Acacia"), res("Baobab")})})
        report = evaluate(planted_engine.engine, gold, k=10, workers=1)

        assert any(res("Baobab") in w for w in report.warnings)
        assert report.per_query[0].recall == pytest.approx(0.5)

    def test_object_only_iri_is_in_graph(self, planted_engine):
        """Test a gold IRI that only ever appears as an object raises no warning."""
        assert res("Fabales") not in planted_engine.engine.graph_index
        gold = GoldSet({"acacia": frozenset({res("Acacia"), res("Fabales")})})
        report = evaluate(planted_engine.engine, gold, k=10, workers=1)

        assert report.warnings == []
        assert planted_engine.engine.has_entity(res("Fabales"))

    def test_unsearchable_query_warns(self, planted_engine):
        """Test a stopword-only gold query scores zero with a warning."""
        gold = GoldSet({"the of": frozenset({res("Acacia")})})
        report = evaluate(planted_engine.engine, gold, k=10, workers=1)

        assert report.per_query[0].returned == 0
        assert any("no searchable keywords" in w for w in report.warnings)

    def test_invalid_k(self, planted_engine, gold_file):
        with pytest.raises(ValueError, match="k"):
            evaluate(planted_engine.engine, load_gold_set(gold_file), k=0)
