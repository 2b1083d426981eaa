"""In-memory RDF terms and the directed labeled multigraph built from triples."""

from dataclasses import dataclass
from typing import (
    Dict,
    FrozenSet,
    Iterator,
    List,
    NamedTuple,
    Optional,
    Tuple,
    Union,
)

from rdflib import BNode as RdfBNode
from rdflib import Literal as RdfLiteral
from rdflib import URIRef

from semsearch.types import NodeId, NodeKey

RDF_LANG_STRING = "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString"


@dataclass(frozen=True, order=True)
class Iri:
    value: str

    def __post_init__(self) -> None:
        if not self.value:
            raise ValueError("IRI must not be empty")
        if any(ch.isspace() for ch in self.value):
            raise ValueError(f"IRI contains whitespace: {self.value!r}")

    @property
    def key(self) -> NodeKey:
        return self.value

    def local_name(self) -> str:
        """Text after the last '/' or '#'."""
        cut = max(self.value.rfind("/"), self.value.rfind("#"))
        return self.value[cut + 1 :]

    def to_rdflib(self) -> URIRef:
        return URIRef(self.value)

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True, order=True)
class BlankNode:
    label: str

    def __post_init__(self) -> None:
        if not self.label:
            raise ValueError("blank node label must not be empty")

    @property
    def key(self) -> NodeKey:
        return f"_:{self.label}"

    def to_rdflib(self) -> RdfBNode:
        return RdfBNode(self.label)

    def __str__(self) -> str:
        return self.key


@dataclass(frozen=True)
class Literal:
    lexical_form: str
    datatype: Optional[Iri] = None
    language: Optional[str] = None

    def __post_init__(self) -> None:
        if self.language:
            if self.datatype is None:
                object.__setattr__(self, "datatype", Iri(RDF_LANG_STRING))
            elif self.datatype.value != RDF_LANG_STRING:
                raise ValueError(
                    "a language-tagged literal must have datatype rdf:langString"
                )
            object.__setattr__(self, "language", self.language.lower())
        elif self.datatype is not None and self.datatype.value == RDF_LANG_STRING:
            raise ValueError("rdf:langString literal requires a language tag")

    @property
    def key(self) -> NodeKey:
        return str(self.to_rdflib().n3())

    def to_rdflib(self) -> RdfLiteral:
        if self.language:
            return RdfLiteral(self.lexical_form, lang=self.language, normalize=False)
        datatype = URIRef(self.datatype.value) if self.datatype else None
        return RdfLiteral(self.lexical_form, datatype=datatype, normalize=False)

    def __str__(self) -> str:
        return self.lexical_form


Term = Union[Iri, BlankNode, Literal]
Resource = Union[Iri, BlankNode]


class Triple(NamedTuple):
    subject: Resource
    predicate: Iri
    object: Term

    def to_ntriples(self) -> str:
        return (
            f"{self.subject.to_rdflib().n3()} {self.predicate.to_rdflib().n3()} "
            f"{self.object.to_rdflib().n3()} ."
        )


NodeRef = Union[Term, NodeKey, NodeId]


class RdfGraph:
    """Directed labeled multigraph G=(V, L, E) with outgoing adjacency per predicate.

    Nodes get integer ids in first-seen order. Duplicate triples collapse to a
    single edge. The graph is only mutated while it is being parsed.
    """

    def __init__(self) -> None:
        self._terms: List[Term] = []
        self._ids: Dict[NodeKey, NodeId] = {}
        self._predicates: Dict[str, Iri] = {}
        # node -> predicate IRI -> ordered set of object ids
        self._adjacency: Dict[NodeId, Dict[str, Dict[NodeId, None]]] = {}
        self._triple_count = 0

    def _intern(self, term: Term) -> NodeId:
        key = term.key
        node_id = self._ids.get(key)
        if node_id is None:
            node_id = len(self._terms)
            self._terms.append(term)
            self._ids[key] = node_id
        return node_id

    def add(self, triple: Triple) -> bool:
        """Add a triple; returns False when it was already present."""
        if isinstance(triple.subject, Literal):
            raise ValueError("a literal cannot be a triple subject")
        s = self._intern(triple.subject)
        o = self._intern(triple.object)
        pred = self._predicates.setdefault(triple.predicate.value, triple.predicate)
        objects = self._adjacency.setdefault(s, {}).setdefault(pred.value, {})
        if o in objects:
            return False
        objects[o] = None
        self._triple_count += 1
        return True

    def __len__(self) -> int:
        return self._triple_count

    @property
    def node_count(self) -> int:
        return len(self._terms)

    def node_id(self, node: NodeRef) -> Optional[NodeId]:
        """Resolve a term, node key or id; None when the node is unknown."""
        if isinstance(node, int):
            return node if 0 <= node < len(self._terms) else None
        key = node if isinstance(node, str) else node.key
        return self._ids.get(key)

    def term(self, node_id: NodeId) -> Term:
        return self._terms[node_id]

    def key(self, node_id: NodeId) -> NodeKey:
        return self._terms[node_id].key

    def is_literal(self, node_id: NodeId) -> bool:
        return isinstance(self._terms[node_id], Literal)

    def nodes(self) -> Iterator[Tuple[NodeId, Term]]:
        return iter(enumerate(self._terms))

    def subjects(self) -> List[NodeId]:
        """Nodes with at least one outgoing edge, in first-seen order."""
        return list(self._adjacency)

    def predicates(self) -> List[Iri]:
        return list(self._predicates.values())

    def has_subject(self, node: NodeRef) -> bool:
        node_id = self.node_id(node)
        return node_id is not None and node_id in self._adjacency

    def triples(self) -> Iterator[Triple]:
        for s, by_pred in self._adjacency.items():
            subject = self._terms[s]
            for pred, objects in by_pred.items():
                predicate = self._predicates[pred]
                for o in objects:
                    obj = self._terms[o]
                    yield Triple(subject, predicate, obj)  # type: ignore[arg-type]

    def triple_set(self) -> FrozenSet[Triple]:
        return frozenset(self.triples())

    def neighbor_ids(self, node_id: NodeId, predicate: str) -> Tuple[NodeId, ...]:
        return tuple(self._adjacency.get(node_id, {}).get(predicate, ()))

    def neighbors(self, node: NodeRef, predicate: Union[Iri, str]) -> List[Term]:
        """Objects o with triple (node, predicate, o), in insertion order.

        Unknown nodes and nodes with only incoming edges yield an empty list.
        """
        node_id = self.node_id(node)
        if node_id is None:
            return []
        pred = predicate.value if isinstance(predicate, Iri) else predicate
        return [self._terms[o] for o in self.neighbor_ids(node_id, pred)]

    def predicate_keys(self, node_id: NodeId) -> FrozenSet[str]:
        return frozenset(self._adjacency.get(node_id, {}))

    def predicate_labels(self, node: NodeRef) -> FrozenSet[Iri]:
        node_id = self.node_id(node)
        if node_id is None:
            return frozenset()
        return frozenset(self._predicates[p] for p in self._adjacency.get(node_id, {}))

    def out_degree(self, node: NodeRef) -> int:
        node_id = self.node_id(node)
        if node_id is None:
            return 0
        return sum(len(objs) for objs in self._adjacency.get(node_id, {}).values())

    def canonical_ids(self) -> Dict[NodeKey, NodeId]:
        """Node numbering by sorted node key; independent of input line order."""
        return {key: index for index, key in enumerate(sorted(self._ids))}

    def __repr__(self) -> str:
        return (
            f"RdfGraph(nodes={self.node_count}, triples={self._triple_count}, "
            f"predicates={len(self._predicates)})"
        )
