"""
Unit tests for the fixed-point pairwise similarity.
"""

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from semsearch.analysis import AnalysisConfig, build_idf  # noqa: E402
from semsearch.config.settings import ConfigValidationError  # noqa: E402
from semsearch.engines.builder import literal_corpus  # noqa: E402
from semsearch.rdf.model import Iri  # noqa: E402
from semsearch.rdf.ntriples import parse_ntriples  # noqa: E402
from semsearch.similarity.pairsim import (  # noqa: E402
    SimilarityCalculator,
    SimilarityConfig,
    SimilarityMatrix,
    candidate_pairs,
    compute_predicate_weights,
    compute_similarity,
    pair_sim_step,
)
from tests.fixtures.sample_data import (  # noqa: E402
    EXPECTED_SCORES,
    PLANTED_BETA,
    ont,
    planted_graph_lines,
    random_graph_lines,
    res,
    two_triple_text,
)

PLAIN = AnalysisConfig(stemming_enabled=False)


def _setup(lines, analysis=PLAIN, mode="uniform"):
    graph = parse_ntriples(lines)
    idf = build_idf(literal_corpus(graph, analysis))
    weights = compute_predicate_weights(graph, mode)
    return graph, idf, weights


@pytest.fixture
def two_triples():
    return _setup(two_triple_text().splitlines())


@pytest.fixture
def planted():
    return _setup(planted_graph_lines())


@pytest.mark.similarity
class TestSimilarityConfig:
    """Test cases for SimilarityConfig validation."""

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"beta": 0.0},
            {"beta": 1.0},
            {"max_iterations": 0},
            {"epsilon": 0.0},
            {"exact_matching_limit": 0},
        ],
    )
    def test_invalid_values(self, kwargs):
        """Test out-of-range parameters are rejected."""
        with pytest.raises(ConfigValidationError):
            SimilarityConfig(**kwargs)


@pytest.mark.similarity
class TestCandidatePairs:
    """Test cases for candidate pair enumeration."""

    def test_two_subjects_sharing_a_predicate(self, two_triples):
        """Test one shared predicate gives one candidate pair."""
        graph, _, _ = two_triples
        assert candidate_pairs(graph) == {(res("A"), res("B"))}

    def test_no_shared_predicate(self):
        """Test subjects without a common predicate are not candidates."""
        graph = parse_ntriples(
            [
                f"<{res('A')}> <{ont('p')}> <{res('X')}> .",
                f"<{res('B')}> <{ont('q')}> <{res('X')}> .",
            ]
        )
        assert candidate_pairs(graph) == set()

    def test_pairs_are_sorted_and_distinct(self, planted):
        """Test every pair is ordered and never pairs a node with itself."""
        graph, _, _ = planted
        for a, b in candidate_pairs(graph):
            assert a < b


@pytest.mark.similarity
class TestPairSim:
    """Test cases for PairSim values."""

    def test_two_triple_first_iteration(self, two_triples):
        """Test the one-step value (1 - beta) * literal_sim + beta."""
        graph, idf, weights = two_triples
        config = SimilarityConfig()
        matrix = compute_similarity(graph, weights, config, idf, PLAIN, False)

        assert matrix.get(res("A"), res("B")) == pytest.approx(0.3730, abs=1e-4)
        assert matrix.iteration == 1
        assert len(matrix.delta_history) == 1
        assert matrix.converged

    def test_single_step_matches_full_run(self, two_triples):
        """Test pair_sim_step from the all-ones start."""
        graph, idf, weights = two_triples
        step = pair_sim_step(graph, None, weights, SimilarityConfig(), idf, PLAIN)
        assert step.iteration == 1
        assert step.get(res("A"), res("B")) == pytest.approx(0.3730, abs=1e-4)

    def test_static_pairs_reach_the_fixed_point(self, two_triples, tmp_path):
        """Test a run without dynamic pairs is converged after one update."""
        graph, idf, weights = two_triples
        config = SimilarityConfig(epsilon=1e-9)
        matrix = compute_similarity(graph, weights, config, idf, PLAIN, False)

        assert matrix.delta_history[-1] > config.epsilon
        assert matrix.converged
        matrix.save(tmp_path)
        assert SimilarityMatrix.load(tmp_path).converged

    def test_iteration_cap_is_not_convergence(self):
        """Test stopping at max_iterations with a large delta is not converged."""
        graph, idf, weights = _setup(
            [
                f"<{res('A')}> <{ont('p')}> <{res('X')}> .",
                f"<{res('B')}> <{ont('p')}> <{res('Y')}> .",
                f'<{res("X")}> <{ont("q")}> "red apple" .',
                f'<{res("Y")}> <{ont("q")}> "green pear" .',
            ]
        )
        config = SimilarityConfig(max_iterations=1, epsilon=1e-12)
        matrix = compute_similarity(graph, weights, config, idf, PLAIN, False)

        assert matrix.iteration == 1
        assert matrix.delta_history[-1] > config.epsilon
        assert not matrix.converged

    def test_self_pair_is_one(self, planted):
        """Test a node paired with itself scores 1."""
        graph, idf, weights = planted
        calculator = SimilarityCalculator(graph, idf, weights, show_progress=False)
        for name in ("Acacia", "Andre_Agassi", "Avicenna"):
            node = Iri(res(name))
            assert calculator.pair_value(node, node) == pytest.approx(1.0)

    def test_identical_neighborhoods_score_one(self):
        """Test two subjects with the same outgoing edges score 1."""
        graph, idf, weights = _setup(
            [
                f"<{res('A')}> <{ont('p')}> <{res('X')}> .",
                f"<{res('A')}> <{ont('q')}> <{res('Y')}> .",
                f"<{res('B')}> <{ont('p')}> <{res('X')}> .",
                f"<{res('B')}> <{ont('q')}> <{res('Y')}> .",
                f'<{res("C")}> <{ont("label")}> "alpha" .',
            ]
        )
        config = SimilarityConfig()
        matrix = compute_similarity(graph, weights, config, idf, PLAIN, False)
        assert matrix.get(res("A"), res("B")) == pytest.approx(1.0)

    def test_resource_against_literal_is_zero(self):
        """Test a resource object never matches a literal object."""
        graph, idf, weights = _setup(
            [
                f"<{res('A')}> <{ont('p')}> <{res('X')}> .",
                f'<{res("B")}> <{ont("p")}> "x" .',
            ]
        )
        config = SimilarityConfig()
        matrix = compute_similarity(graph, weights, config, idf, PLAIN, False)
        assert matrix.get(res("A"), res("B")) == pytest.approx(PLANTED_BETA)

    def test_planted_scores(self, planted):
        """Test the planted groups reach their known scores."""
        graph, idf, weights = planted
        config = SimilarityConfig(beta=PLANTED_BETA)
        matrix = compute_similarity(graph, weights, config, idf, show_progress=False)

        for (a, b), expected in EXPECTED_SCORES.items():
            assert matrix.get(res(a), res(b)) == pytest.approx(expected)
        assert matrix.get(res("Acacia"), res("Andre_Agassi")) == pytest.approx(0.15)
        assert matrix.get(res("Andre_Agassi"), res("Aristotle")) == pytest.approx(0.15)
        assert matrix.iteration == 1

    def test_non_candidates_are_absent(self, planted):
        """Test pairs sharing no predicate are not stored."""
        graph, idf, weights = planted
        config = SimilarityConfig()
        matrix = compute_similarity(graph, weights, config, idf, show_progress=False)
        assert (res("Acacia"), res("Plantae")) not in matrix
        assert matrix.get(res("Acacia"), res("Plantae")) == 0.0


@pytest.mark.similarity
class TestPairSimProperties:
    """Property checks over seeded random graphs."""

    @pytest.mark.parametrize("seed", range(50))
    def test_symmetry_range_and_contraction(self, seed):
        """Test symmetry, the [beta, 1] range and the (1 - beta)^k delta envelope."""
        graph, idf, weights = _setup(random_graph_lines(seed))
        config = SimilarityConfig(beta=0.15, max_iterations=6, epsilon=1e-12)
        calculator = SimilarityCalculator(graph, idf, weights, config, PLAIN, False)
        matrix = calculator.compute()

        for (a, b), score in matrix.items():
            assert 0.15 - 1e-12 <= score <= 1.0 + 1e-12
            forward = calculator.pair_value(a, b, matrix)
            backward = calculator.pair_value(b, a, matrix)
            assert forward == pytest.approx(backward)

        history = matrix.delta_history
        for i, delta in enumerate(history):
            assert delta <= (1 - 0.15) ** i * history[0] + 1e-12

    @pytest.mark.parametrize("seed", range(10))
    def test_self_similarity_at_every_iteration(self, seed):
        """Test PairSim(u, u) = 1 under the scores of every iteration."""
        graph, idf, weights = _setup(random_graph_lines(seed))
        config = SimilarityConfig(beta=0.15)
        calculator = SimilarityCalculator(graph, idf, weights, config, PLAIN, False)
        subjects = [graph.key(s) for s in graph.subjects()]

        matrix = None
        for _ in range(5):
            for u in subjects:
                assert calculator.pair_value(u, u, matrix) == pytest.approx(
                    1.0, abs=1e-12
                )
            matrix = pair_sim_step(graph, matrix, weights, config, idf, PLAIN)


@pytest.mark.similarity
class TestPredicateWeights:
    """Test cases for predicate weighting."""

    def test_uniform(self, planted):
        """Test uniform weights are all 1."""
        graph, _, _ = planted
        weights = compute_predicate_weights(graph, "uniform")
        assert set(weights.weights.values()) == {1.0}
        assert weights.get("http://unknown/p") == 1.0

    def test_rarity(self, planted):
        """Test rarer predicates weigh more and the largest weight is 1."""
        graph, _, _ = planted
        weights = compute_predicate_weights(graph, "rarity")

        assert max(weights.weights.values()) == pytest.approx(1.0)
        assert weights.get(ont("plays")) == pytest.approx(1.0)
        assert weights.get(ont("name")) < weights.get(ont("occupation"))
        assert weights.get(ont("occupation")) < weights.get(ont("kingdom"))
        assert all(0.0 < w <= 1.0 for w in weights.weights.values())

    def test_unknown_mode(self, planted):
        """Test an unknown weight mode is a configuration error."""
        graph, _, _ = planted
        with pytest.raises(ConfigValidationError, match="weight mode"):
            compute_predicate_weights(graph, "pagerank")


@pytest.mark.similarity
class TestSimilarityArtifact:
    """Test cases for persisting the similarity matrix."""

    def test_save_and_load(self, planted, tmp_path):
        """Test scores and parameters survive a save/load cycle."""
        graph, idf, weights = planted
        config = SimilarityConfig()
        matrix = compute_similarity(graph, weights, config, idf, show_progress=False)
        matrix.save(tmp_path)
        loaded = SimilarityMatrix.load(tmp_path)

        assert loaded.iteration == matrix.iteration
        assert loaded.beta == matrix.beta
        assert loaded.weight_mode == "uniform"
        assert len(loaded) == len(matrix)
        for pair, score in matrix.items():
            assert loaded.entries[pair] == pytest.approx(score, abs=1e-6)
        assert loaded.delta_history == pytest.approx(matrix.delta_history)
