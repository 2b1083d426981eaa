"""Keyword index (token -> graph elements) and graph index (entity -> class).

The graph index also lists each entity's similar co-members.
"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Set, Tuple

from semsearch.analysis import AnalysisConfig, get_analyzer
from semsearch.base import BaseArtifact
from semsearch.core.exceptions import ArtifactError, IndexBuildError
from semsearch.core.logger import get_logger
from semsearch.core.utils import escape_field, unescape_field
from semsearch.rdf.model import Iri, Literal, RdfGraph
from semsearch.similarity.pairsim import SimilarityMatrix
from semsearch.summary import SummaryGraph
from semsearch.types import ElementKind, FieldKind, NodeKey

logger = get_logger("index")

# "class" is a valid element kind but class labels are never indexed: classes
# are inferred and have no text of their own.
ELEMENT_KINDS: Tuple[ElementKind, ...] = ("entity", "class", "property", "literal")
FIELD_KINDS: Tuple[FieldKind, ...] = (
    "iri-local-name",
    "literal-value",
    "predicate-label",
)


@dataclass(frozen=True)
class GraphElementRef:
    kind: str
    target: str
    anchor: NodeKey
    field: str

    def __post_init__(self) -> None:
        if self.kind not in ELEMENT_KINDS:
            raise ValueError(f"unknown element kind {self.kind!r}")
        if self.field not in FIELD_KINDS:
            raise ValueError(f"unknown field kind {self.field!r}")
        if not self.anchor:
            raise ValueError("graph element ref needs an anchor entity")

    @property
    def sort_key(self) -> Tuple[str, str, str, str]:
        return (self.anchor, self.kind, self.field, self.target)


@dataclass(frozen=True)
class KeywordIndex(BaseArtifact):
    postings: Dict[str, Tuple[GraphElementRef, ...]] = field(default_factory=dict)

    file_name = "keyword_index.tsv"
    kind = "keyword-index"

    def lookup(self, token: str) -> List[GraphElementRef]:
        """Exact-token postings; the token is case-folded first."""
        return list(self.postings.get(token.strip().lower(), ()))

    def __len__(self) -> int:
        return len(self.postings)

    def __contains__(self, token: object) -> bool:
        return isinstance(token, str) and token.strip().lower() in self.postings

    @property
    def posting_count(self) -> int:
        return sum(len(refs) for refs in self.postings.values())

    def header_fields(self) -> Dict[str, str]:
        return {"tokens": str(len(self.postings)), "postings": str(self.posting_count)}

    def to_lines(self) -> List[str]:
        return [
            f"{token}\t{ref.kind}\t{escape_field(ref.anchor)}\t{ref.field}"
            f"\t{escape_field(ref.target)}"
            for token in sorted(self.postings)
            for ref in self.postings[token]
        ]

    @classmethod
    def from_lines(
        cls, header: Dict[str, str], body: List[str], path: Path
    ) -> "KeywordIndex":
        postings: Dict[str, List[GraphElementRef]] = {}
        for line in body:
            token, kind, anchor, field_kind, target = line.split("\t")
            postings.setdefault(token, []).append(
                GraphElementRef(
                    kind, unescape_field(target), unescape_field(anchor), field_kind
                )
            )
        return cls({t: tuple(refs) for t, refs in postings.items()})


def build_keyword_index(
    graph: RdfGraph, config: AnalysisConfig = AnalysisConfig()
) -> KeywordIndex:
    """Index subject local names, literal values and predicate labels.

    Literal and predicate-label postings anchor to the subject carrying them.
    One posting is kept per (token, anchor, kind).
    """
    analyzer = get_analyzer(config)
    found: Dict[Tuple[str, NodeKey, str], GraphElementRef] = {}

    def post(tokens: Iterable[str], ref: GraphElementRef) -> None:
        for token in tokens:
            key = (token, ref.anchor, ref.kind)
            current = found.get(key)
            if current is None or ref.sort_key < current.sort_key:
                found[key] = ref

    label_tokens: Dict[str, Set[str]] = {}
    for s in graph.subjects():
        subject = graph.term(s)
        anchor = subject.key
        if isinstance(subject, Iri):
            post(
                analyzer.tokenize(subject.local_name()),
                GraphElementRef("entity", anchor, anchor, "iri-local-name"),
            )
        for predicate in sorted(graph.predicate_keys(s)):
            tokens = label_tokens.get(predicate)
            if tokens is None:
                tokens = set(analyzer.tokenize(Iri(predicate).local_name()))
                label_tokens[predicate] = tokens
            ref = GraphElementRef("property", predicate, anchor, "predicate-label")
            post(tokens, ref)
            for o in graph.neighbor_ids(s, predicate):
                obj = graph.term(o)
                if isinstance(obj, Literal):
                    post(
                        analyzer.tokenize(obj.lexical_form),
                        GraphElementRef("literal", obj.key, anchor, "literal-value"),
                    )

    postings: Dict[str, List[GraphElementRef]] = {}
    for (token, _, _), ref in found.items():
        postings.setdefault(token, []).append(ref)
    index = KeywordIndex(
        {
            token: tuple(sorted(refs, key=lambda r: r.sort_key))
            for token, refs in sorted(postings.items())
        }
    )
    logger.info(f"Keyword index: {len(index)} tokens, {index.posting_count} postings")
    return index


def lookup(index: KeywordIndex, token: str) -> List[GraphElementRef]:
    return index.lookup(token)


@dataclass(frozen=True)
class GraphIndexEntry:
    class_id: int
    members: Tuple[NodeKey, ...]
    # co-members with a stored similarity, highest first
    similar: Tuple[Tuple[NodeKey, float], ...] = ()


@dataclass(frozen=True)
class GraphIndex(BaseArtifact):
    entries: Dict[NodeKey, GraphIndexEntry] = field(default_factory=dict)

    file_name = "graph_index.tsv"
    kind = "graph-index"

    def get(self, entity: NodeKey) -> Optional[GraphIndexEntry]:
        return self.entries.get(entity)

    def __contains__(self, entity: object) -> bool:
        return entity in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def header_fields(self) -> Dict[str, str]:
        return {"entities": str(len(self.entries))}

    def to_lines(self) -> List[str]:
        lines = []
        for entity in sorted(self.entries):
            entry = self.entries[entity]
            members = ",".join(escape_field(m) for m in entry.members)
            similar = ",".join(f"{escape_field(m)} {s:.6f}" for m, s in entry.similar)
            lines.append(
                f"{escape_field(entity)}\t{entry.class_id}\t{members}\t{similar}"
            )
        return lines

    @classmethod
    def from_lines(
        cls, header: Dict[str, str], body: List[str], path: Path
    ) -> "GraphIndex":
        entries: Dict[NodeKey, GraphIndexEntry] = {}
        for line in body:
            parts = line.split("\t")
            if len(parts) != 4:
                raise ArtifactError(f"malformed graph index line {line!r}", str(path))
            entity, class_id, members, similar = parts
            sims = []
            for item in filter(None, similar.split(",")):
                member, score = item.rsplit(" ", 1)
                sims.append((unescape_field(member), float(score)))
            entries[unescape_field(entity)] = GraphIndexEntry(
                int(class_id),
                tuple(unescape_field(m) for m in members.split(",") if m),
                tuple(sims),
            )
        return cls(entries)


def build_graph_index(
    summary: SummaryGraph,
    sim: SimilarityMatrix,
    entities: Optional[Iterable[NodeKey]] = None,
) -> GraphIndex:
    """Materialize class membership and co-member similarities per entity.

    ``entities`` defaults to every classified node; an entity outside the
    partition raises IndexBuildError.
    """
    if entities is None:
        entities = [m for c in summary.classes for m in c.members]

    entries: Dict[NodeKey, GraphIndexEntry] = {}
    for entity in entities:
        class_id = summary.class_of(entity)
        if class_id is None:
            raise IndexBuildError(
                f"entity {entity} is missing from the summary partition"
            )
        members = summary.get_class(class_id).members
        co_members = tuple(m for m in members if m != entity)
        similar = [
            (m, sim.entries[pair])
            for m in co_members
            for pair in [(entity, m) if entity <= m else (m, entity)]
            if pair in sim.entries
        ]
        similar.sort(key=lambda item: (-item[1], item[0]))
        entries[entity] = GraphIndexEntry(class_id, co_members, tuple(similar))
    logger.info(f"Graph index: {len(entries)} entities")
    return GraphIndex(entries)
