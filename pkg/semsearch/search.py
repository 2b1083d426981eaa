"""Keyword query execution: hits, same-class augmentation, scoring and ranking."""

from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, List, Optional, Tuple

from semsearch.analysis import AnalysisConfig, Analyzer, get_analyzer
from semsearch.config.settings import ConfigValidationError
from semsearch.core.exceptions import InvalidQueryError
from semsearch.core.logger import get_logger
from semsearch.index import GraphIndex, KeywordIndex
from semsearch.similarity.pairsim import SimilarityMatrix
from semsearch.types import NodeKey

logger = get_logger("search")

DIRECT = "direct"
AUGMENTED = "augmented"


@dataclass(frozen=True)
class SearchConfig:
    k: int = 10
    sigma: float = 0.3

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ConfigValidationError(f"k must be >= 1, got {self.k}")
        if not 0.0 < self.sigma < 1.0:
            raise ConfigValidationError(f"sigma must be in (0, 1), got {self.sigma}")


@dataclass(frozen=True)
class Query:
    raw: str
    keywords: Tuple[str, ...]

    @property
    def valid(self) -> bool:
        return bool(self.keywords)


def parse_query(raw: str, analyzer: Analyzer) -> Query:
    """Normalize the query text; keywords keep first-occurrence order."""
    keywords = tuple(dict.fromkeys(analyzer.analyze(raw or "")))
    return Query(raw or "", keywords)


@dataclass(frozen=True)
class Hit:
    entity: NodeKey
    hitcount: int
    # (keyword, field kind) pairs that matched
    matched_fields: FrozenSet[Tuple[str, str]] = frozenset()


@dataclass(frozen=True)
class ResultEntry:
    iri: NodeKey
    confidence: float
    provenance: str = DIRECT
    via: Optional[NodeKey] = None
    sim: Optional[float] = None
    matched: Tuple[Tuple[str, str], ...] = field(default=(), compare=False)

    @property
    def is_direct(self) -> bool:
        return self.provenance == DIRECT

    def to_dict(self) -> Dict[str, Any]:
        return {
            "iri": self.iri,
            "confidence": self.confidence,
            "provenance": self.provenance,
            "via": self.via,
        }


def find_query_hits(query: Query, index: KeywordIndex) -> List[Hit]:
    """Aggregate postings per anchor entity; ordered by hitcount desc, then IRI."""
    keywords_by_anchor: Dict[NodeKey, set] = {}
    fields_by_anchor: Dict[NodeKey, set] = {}
    for keyword in query.keywords:
        for ref in index.lookup(keyword):
            keywords_by_anchor.setdefault(ref.anchor, set()).add(keyword)
            fields_by_anchor.setdefault(ref.anchor, set()).add((keyword, ref.field))

    hits = [
        Hit(anchor, len(keywords), frozenset(fields_by_anchor[anchor]))
        for anchor, keywords in keywords_by_anchor.items()
    ]
    hits.sort(key=lambda h: (-h.hitcount, h.entity))
    return hits


def score_direct(hit: Hit, query: Query) -> float:
    return hit.hitcount / len(query.keywords)


def _rank_key(entry: ResultEntry) -> Tuple[float, int, str]:
    return (-entry.confidence, 0 if entry.is_direct else 1, entry.iri)


def _merge_key(entry: ResultEntry) -> Tuple[float, int, str, str]:
    return _rank_key(entry) + (entry.via or "",)


def get_top_k_nodes(
    hits: List[Hit],
    graph_index: GraphIndex,
    query: Query,
    config: SearchConfig = SearchConfig(),
    sim: Optional[SimilarityMatrix] = None,
) -> List[ResultEntry]:
    """Direct entries for hits plus same-class co-members with sim >= sigma.

    Co-member similarities come from the graph index unless ``sim`` is given.
    An entity reached several ways keeps its highest confidence, direct first
    on ties.
    """
    best: Dict[NodeKey, ResultEntry] = {}

    def offer(entry: ResultEntry) -> None:
        current = best.get(entry.iri)
        if current is None or _merge_key(entry) < _merge_key(current):
            best[entry.iri] = entry

    for hit in hits:
        direct = score_direct(hit, query)
        matched = tuple(sorted(hit.matched_fields))
        offer(ResultEntry(hit.entity, direct, DIRECT, matched=matched))

        entry = graph_index.get(hit.entity)
        if entry is None:
            continue
        if sim is not None:
            neighbors = [(m, sim.get(hit.entity, m)) for m in entry.members]
        else:
            neighbors = list(entry.similar)
        for neighbor, score in neighbors:
            if score < config.sigma:
                continue
            offer(ResultEntry(neighbor, score * direct, AUGMENTED, hit.entity, score))

    ranked = sorted(best.values(), key=_rank_key)
    return ranked[: config.k]


class SearchEngine:
    """Answers keyword queries from one consistent set of indexes. Read-only."""

    def __init__(
        self,
        keyword_index: KeywordIndex,
        graph_index: GraphIndex,
        analysis_config: AnalysisConfig = AnalysisConfig(),
        search_config: SearchConfig = SearchConfig(),
        graph_nodes: FrozenSet[NodeKey] = frozenset(),
    ) -> None:
        self.keyword_index = keyword_index
        self.graph_index = graph_index
        # resources that only ever appear as objects are not in graph_index
        self.graph_nodes = graph_nodes
        self.analysis_config = analysis_config
        self.search_config = search_config
        self._analyzer = get_analyzer(analysis_config)

    def parse(self, querystring: str) -> Query:
        query = parse_query(querystring, self._analyzer)
        if not query.valid:
            raise InvalidQueryError()
        return query

    def search(self, querystring: str, k: Optional[int] = None) -> List[ResultEntry]:
        query = self.parse(querystring)
        config = self.search_config
        if k is not None:
            config = SearchConfig(k, config.sigma)
        hits = find_query_hits(query, self.keyword_index)
        results = get_top_k_nodes(hits, self.graph_index, query, config)
        logger.debug(
            f"query {querystring!r}: keywords={list(query.keywords)}, "
            f"hits={len(hits)}, results={len(results)}"
        )
        return results

    def has_entity(self, iri: NodeKey) -> bool:
        return iri in self.graph_index or iri in self.graph_nodes


def search(
    querystring: str, engine: SearchEngine, k: Optional[int] = None
) -> List[ResultEntry]:
    return engine.search(querystring, k)
