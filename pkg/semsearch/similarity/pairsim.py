"""Fixed-point pairwise similarity of subject nodes.

For a candidate pair (u, v) with outgoing predicate sets P(u), P(v):

    PairSim^k(u, v) = (1 - beta) / |P(u) | P(v)|
                      * sum over j in P(u) & P(v) of w_j * match_j(u, v; Sim^{k-1})
                      + beta

where match_j is the normalized maximal nonrepeating matching value of the
j-neighborhoods. Sim of two resources is the previous PairSim (1 for a node
with itself, 0 for a non-candidate pair), of two literals the idf-weighted
literal similarity, and 0 for a resource against a literal.
"""

import math
from collections import defaultdict
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import (
    Dict,
    FrozenSet,
    Iterator,
    List,
    Mapping,
    Optional,
    Sequence,
    Set,
    Tuple,
    Union,
)

import numpy as np
from tqdm import tqdm

from semsearch.analysis import AnalysisConfig, IdfTable, get_analyzer, weighted_jaccard
from semsearch.base import BaseArtifact
from semsearch.config import settings
from semsearch.config.settings import ConfigValidationError
from semsearch.core.exceptions import ArtifactError
from semsearch.core.logger import get_logger, log_analysis_step
from semsearch.rdf.model import Iri, Literal, RdfGraph, Term
from semsearch.similarity.matching import max_matching_value
from semsearch.types import IdPair, NodeId, NodeKey, NodePair

logger = get_logger("similarity")

PairRef = Union[Term, NodeKey]


@dataclass(frozen=True)
class SimilarityConfig:
    beta: float = 0.15
    max_iterations: int = 10
    epsilon: float = 1e-4
    exact_matching_limit: int = 8

    def __post_init__(self) -> None:
        if not 0.0 < self.beta < 1.0:
            raise ConfigValidationError(f"beta must be in (0, 1), got {self.beta}")
        if self.max_iterations < 1:
            raise ConfigValidationError("max_iterations must be >= 1")
        if self.epsilon <= 0:
            raise ConfigValidationError("epsilon must be positive")
        if self.exact_matching_limit < 1:
            raise ConfigValidationError("exact_matching_limit must be >= 1")


@dataclass(frozen=True)
class PredicateWeights:
    """Per-predicate weights in (0, 1]; unknown predicates weigh 1.0."""

    weights: Mapping[str, float] = field(default_factory=dict)
    mode: str = "uniform"

    def __post_init__(self) -> None:
        for predicate, weight in self.weights.items():
            if not 0.0 < weight <= 1.0:
                raise ValueError(
                    f"weight of {predicate} must be in (0, 1], got {weight}"
                )

    def get(self, predicate: Union[Iri, str]) -> float:
        key = predicate.value if isinstance(predicate, Iri) else predicate
        return self.weights.get(key, 1.0)


def compute_predicate_weights(
    graph: RdfGraph, mode: str = "uniform"
) -> PredicateWeights:
    """Uniform weights, or rarity weights ln((1+S)/(1+s_j))+1 scaled to max 1."""
    predicates = [p.value for p in graph.predicates()]
    if mode == "uniform":
        return PredicateWeights({p: 1.0 for p in predicates}, mode)
    if mode != "rarity":
        raise ConfigValidationError(f"unknown weight mode {mode!r}")

    subjects = graph.subjects()
    carriers: Dict[str, int] = defaultdict(int)
    for s in subjects:
        for p in graph.predicate_keys(s):
            carriers[p] += 1
    total = len(subjects)
    raw = {p: math.log((1 + total) / (1 + carriers[p])) + 1.0 for p in predicates}
    top = max(raw.values(), default=1.0)
    return PredicateWeights({p: w / top for p, w in raw.items()}, mode)


def _pair_key(a: NodeKey, b: NodeKey) -> NodePair:
    return (a, b) if a <= b else (b, a)


def _ref_key(ref: PairRef) -> NodeKey:
    return ref if isinstance(ref, str) else ref.key


@dataclass(frozen=True)
class SimilarityMatrix(BaseArtifact):
    """Symmetric sparse scores keyed by the sorted pair of node keys."""

    entries: Mapping[NodePair, float] = field(default_factory=dict)
    iteration: int = 0
    beta: float = 0.15
    epsilon: float = 1e-4
    weight_mode: str = "uniform"
    delta_history: Tuple[float, ...] = ()
    approximated: FrozenSet[NodePair] = frozenset()
    converged: bool = False

    file_name = "similarity.tsv"
    kind = "similarity"

    def get(self, a: PairRef, b: PairRef, default: float = 0.0) -> float:
        return self.entries.get(_pair_key(_ref_key(a), _ref_key(b)), default)

    def __contains__(self, pair: object) -> bool:
        if not isinstance(pair, tuple) or len(pair) != 2:
            return False
        return _pair_key(_ref_key(pair[0]), _ref_key(pair[1])) in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def items(self) -> Iterator[Tuple[NodePair, float]]:
        return iter(sorted(self.entries.items()))

    def pairs_at_least(self, threshold: float) -> List[NodePair]:
        return sorted(
            pair for pair, score in self.entries.items() if score >= threshold
        )

    def header_fields(self) -> Dict[str, str]:
        return {
            "beta": repr(self.beta),
            "k": str(self.iteration),
            "epsilon": repr(self.epsilon),
            "weight_mode": self.weight_mode,
            "delta_history": ",".join(f"{d:.9e}" for d in self.delta_history),
            "approximated_pairs": str(len(self.approximated)),
            "converged": "true" if self.converged else "false",
        }

    def to_lines(self) -> List[str]:
        return [f"{a}\t{b}\t{score:.6f}" for (a, b), score in self.items()]

    @classmethod
    def from_lines(
        cls, header: Dict[str, str], body: List[str], path: Path
    ) -> "SimilarityMatrix":
        for required in ("beta", "k", "epsilon", "weight_mode"):
            if required not in header:
                raise ArtifactError(f"similarity header lacks {required}", str(path))
        entries: Dict[NodePair, float] = {}
        for line in body:
            a, b, score = line.split("\t")
            entries[_pair_key(a, b)] = float(score)
        history = header.get("delta_history", "")
        return cls(
            entries=entries,
            iteration=int(header["k"]),
            beta=float(header["beta"]),
            epsilon=float(header["epsilon"]),
            weight_mode=header["weight_mode"],
            delta_history=tuple(float(d) for d in history.split(",") if d),
            converged=header.get("converged") == "true",
        )


def candidate_pairs(graph: RdfGraph) -> Set[NodePair]:
    """Unordered pairs of distinct subjects sharing an outgoing predicate."""
    return {
        _pair_key(graph.key(u), graph.key(v)) for u, v in _candidate_id_pairs(graph)
    }


def _candidate_id_pairs(graph: RdfGraph) -> List[IdPair]:
    by_predicate: Dict[str, List[NodeId]] = defaultdict(list)
    for s in graph.subjects():
        for p in graph.predicate_keys(s):
            by_predicate[p].append(s)
    pairs: Set[IdPair] = set()
    for carriers in by_predicate.values():
        pairs.update(combinations(sorted(carriers), 2))
    return sorted(pairs)


# (predicate weight, u neighbors, v neighbors)
_Term = Tuple[float, Tuple[NodeId, ...], Tuple[NodeId, ...]]


@dataclass
class _PairPlan:
    union_size: int
    static_sum: float
    dynamic: List[_Term]


class SimilarityCalculator:
    """Runs the fixed-point iteration over one graph.

    Matching terms whose neighbor scores cannot change between iterations
    (literals, identical nodes, non-candidate pairs) are evaluated once.
    """

    def __init__(
        self,
        graph: RdfGraph,
        idf: IdfTable,
        weights: Optional[PredicateWeights] = None,
        config: Optional[SimilarityConfig] = None,
        analysis_config: Optional[AnalysisConfig] = None,
        show_progress: Optional[bool] = None,
    ) -> None:
        self.graph = graph
        self.idf = idf
        self.weights = weights or compute_predicate_weights(graph)
        self.config = config or SimilarityConfig()
        self.show_progress = (
            settings.get("performance.show_progress", True)
            if show_progress is None
            else show_progress
        )
        self._analyzer = get_analyzer(analysis_config or AnalysisConfig())
        self.pairs: List[IdPair] = _candidate_id_pairs(graph)
        self._candidates: Set[IdPair] = set(self.pairs)
        self._literal_tokens: Dict[NodeId, FrozenSet[str]] = {}
        self._literal_sims: Dict[IdPair, float] = {}
        self.approximated: Set[IdPair] = set()

    def is_candidate(self, x: NodeId, y: NodeId) -> bool:
        return (x, y) in self._candidates if x < y else (y, x) in self._candidates

    def _tokens(self, node_id: NodeId) -> FrozenSet[str]:
        tokens = self._literal_tokens.get(node_id)
        if tokens is None:
            term = self.graph.term(node_id)
            assert isinstance(term, Literal)
            tokens = self._analyzer.tokenize(term.lexical_form).tokens
            self._literal_tokens[node_id] = tokens
        return tokens

    def sim(self, x: NodeId, y: NodeId, prev: Mapping[IdPair, float]) -> float:
        """Neighbor similarity under the previous iteration's scores."""
        if x == y:
            return 1.0
        pair = (x, y) if x < y else (y, x)
        x_literal = self.graph.is_literal(x)
        y_literal = self.graph.is_literal(y)
        if x_literal and y_literal:
            score = self._literal_sims.get(pair)
            if score is None:
                score = weighted_jaccard(self._tokens(x), self._tokens(y), self.idf)
                self._literal_sims[pair] = score
            return score
        if x_literal or y_literal:
            return 0.0
        return prev.get(pair, 0.0)

    def _is_static(self, u_nb: Sequence[NodeId], v_nb: Sequence[NodeId]) -> bool:
        for x in u_nb:
            if self.graph.is_literal(x):
                continue
            for y in v_nb:
                if x != y and not self.graph.is_literal(y) and self.is_candidate(x, y):
                    return False
        return True

    def _match(
        self,
        u_nb: Sequence[NodeId],
        v_nb: Sequence[NodeId],
        prev: Mapping[IdPair, float],
        pair: Optional[IdPair] = None,
    ) -> float:
        rows = [[self.sim(x, y, prev) for y in v_nb] for x in u_nb]
        if len(u_nb) == 1 or len(v_nb) == 1:
            # a maximal matching holds a single pair: take the best one
            return max(max(row) for row in rows) / max(len(u_nb), len(v_nb))
        matching = max_matching_value(
            np.asarray(rows, dtype=float), self.config.exact_matching_limit
        )
        if not matching.exact and pair is not None:
            self.approximated.add(pair)
        return matching.value

    def _plan(self, u: NodeId, v: NodeId) -> _PairPlan:
        pu = self.graph.predicate_keys(u)
        pv = self.graph.predicate_keys(v)
        static_sum = 0.0
        dynamic: List[_Term] = []
        for j in sorted(pu & pv):
            w = self.weights.get(j)
            u_nb = self.graph.neighbor_ids(u, j)
            v_nb = self.graph.neighbor_ids(v, j)
            if self._is_static(u_nb, v_nb):
                static_sum += w * self._match(u_nb, v_nb, {}, (u, v))
            else:
                dynamic.append((w, u_nb, v_nb))
        return _PairPlan(len(pu | pv), static_sum, dynamic)

    def _evaluate(
        self, plan: _PairPlan, prev: Mapping[IdPair, float], pair: IdPair
    ) -> float:
        if plan.union_size == 0:
            return self.config.beta
        total = plan.static_sum
        for w, u_nb, v_nb in plan.dynamic:
            total += w * self._match(u_nb, v_nb, prev, pair)
        beta = self.config.beta
        return (1.0 - beta) * total / plan.union_size + beta

    def pair_value(
        self, u: PairRef, v: PairRef, prev: Optional[SimilarityMatrix] = None
    ) -> float:
        """One update of the similarity of any two nodes, candidate or not.

        ``prev`` defaults to the all-ones start. Used for diagnostics such as
        pairing a node with itself.
        """
        u_id = self.graph.node_id(u)
        v_id = self.graph.node_id(v)
        if u_id is None or v_id is None:
            raise KeyError(f"unknown node in pair ({u!r}, {v!r})")
        scores = self._initial() if prev is None else self._ids_from_matrix(prev)
        plan = self._plan_unchecked(u_id, v_id)
        return self._evaluate(plan, scores, (u_id, v_id))

    def _plan_unchecked(self, u: NodeId, v: NodeId) -> _PairPlan:
        pu = self.graph.predicate_keys(u)
        pv = self.graph.predicate_keys(v)
        terms = [
            (
                self.weights.get(j),
                self.graph.neighbor_ids(u, j),
                self.graph.neighbor_ids(v, j),
            )
            for j in sorted(pu & pv)
        ]
        return _PairPlan(len(pu | pv), 0.0, terms)

    def _initial(self) -> Dict[IdPair, float]:
        return {pair: 1.0 for pair in self.pairs}

    def _ids_from_matrix(self, matrix: SimilarityMatrix) -> Dict[IdPair, float]:
        scores: Dict[IdPair, float] = {}
        for (a, b), score in matrix.entries.items():
            a_id = self.graph.node_id(a)
            b_id = self.graph.node_id(b)
            if a_id is not None and b_id is not None:
                scores[(a_id, b_id) if a_id < b_id else (b_id, a_id)] = score
        return scores

    def step(self, prev: Mapping[IdPair, float]) -> Dict[IdPair, float]:
        """A single synchronous update of every candidate pair."""
        return {
            pair: self._evaluate(self._plan_unchecked(*pair), prev, pair)
            for pair in self.pairs
        }

    def compute(self, weight_mode: Optional[str] = None) -> SimilarityMatrix:
        beta = self.config.beta
        mode = weight_mode or self.weights.mode
        if not self.pairs:
            logger.info("No candidate pairs; similarity matrix is empty")
            return self._to_matrix({}, 0, (), mode, converged=True)

        plans = {pair: self._plan(*pair) for pair in self.pairs}
        dynamic_pairs = [pair for pair, plan in plans.items() if plan.dynamic]
        log_analysis_step(
            "similarity",
            {
                "candidate_pairs": len(self.pairs),
                "dynamic_pairs": len(dynamic_pairs),
                "beta": beta,
            },
        )

        prev = self._initial()
        history: List[float] = []
        iteration = 0
        converged = False
        rounds = tqdm(
            range(1, self.config.max_iterations + 1),
            desc="Similarity",
            unit="iter",
            disable=not self.show_progress,
            leave=False,
        )
        for iteration in rounds:
            current = {
                pair: self._evaluate(plans[pair], prev, pair) for pair in self.pairs
            }
            delta = max(abs(current[pair] - prev[pair]) for pair in self.pairs)
            history.append(delta)
            prev = current
            logger.debug(f"iteration {iteration}: max delta {delta:.3e}")
            # without dynamic pairs the first update is already the fixed point
            if delta <= self.config.epsilon or not dynamic_pairs:
                converged = True
                break
        rounds.close()

        if self.approximated:
            logger.warning(
                f"Greedy matching used for {len(self.approximated)} pair(s) "
                f"above exact_matching_limit={self.config.exact_matching_limit}"
            )
        logger.info(
            f"Similarity finished after {iteration} iteration(s), "
            f"final delta {history[-1]:.3e}"
        )
        return self._to_matrix(prev, iteration, tuple(history), mode, converged)

    def _to_matrix(
        self,
        scores: Mapping[IdPair, float],
        iteration: int,
        history: Tuple[float, ...],
        mode: str,
        converged: bool = False,
    ) -> SimilarityMatrix:
        key = self.graph.key
        return SimilarityMatrix(
            entries={_pair_key(key(u), key(v)): s for (u, v), s in scores.items()},
            iteration=iteration,
            beta=self.config.beta,
            epsilon=self.config.epsilon,
            weight_mode=mode,
            delta_history=history,
            approximated=frozenset(
                _pair_key(key(u), key(v)) for u, v in self.approximated
            ),
            converged=converged,
        )


def pair_sim_step(
    graph: RdfGraph,
    prev: Optional[SimilarityMatrix],
    weights: PredicateWeights,
    config: SimilarityConfig,
    idf: IdfTable,
    analysis_config: Optional[AnalysisConfig] = None,
) -> SimilarityMatrix:
    """Apply one update to ``prev``; ``None`` stands for the all-ones start."""
    calculator = SimilarityCalculator(
        graph, idf, weights, config, analysis_config, show_progress=False
    )
    if prev is None:
        scores = calculator._initial()
    else:
        scores = calculator._ids_from_matrix(prev)
    current = calculator.step(scores)
    delta = max((abs(current[p] - scores.get(p, 1.0)) for p in current), default=0.0)
    history = (prev.delta_history if prev is not None else ()) + (delta,)
    iteration = (prev.iteration if prev is not None else 0) + 1
    return calculator._to_matrix(
        current, iteration, history, weights.mode, delta <= config.epsilon
    )


def compute_similarity(
    graph: RdfGraph,
    weights: PredicateWeights,
    config: SimilarityConfig,
    idf: IdfTable,
    analysis_config: Optional[AnalysisConfig] = None,
    show_progress: Optional[bool] = None,
) -> SimilarityMatrix:
    """Iterate from PairSim^0 = 1 until the change is at most epsilon.

    Stops early at max_iterations.
    """
    return SimilarityCalculator(
        graph, idf, weights, config, analysis_config, show_progress
    ).compute()
