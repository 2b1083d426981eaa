"""Equivalence classes of graph nodes and the class-level summary graph."""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from semsearch.base import BaseArtifact
from semsearch.config.settings import ConfigValidationError
from semsearch.core.exceptions import ArtifactError
from semsearch.core.logger import get_logger
from semsearch.core.utils import escape_field, unescape_field
from semsearch.rdf.model import RdfGraph
from semsearch.similarity.pairsim import SimilarityMatrix
from semsearch.types import NodeKey

logger = get_logger("summary")

SummaryEdge = Tuple[int, str, int]


@dataclass(frozen=True)
class ClusterConfig:
    tau: float = 0.7

    def __post_init__(self) -> None:
        if not 0.0 < self.tau <= 1.0:
            raise ConfigValidationError(f"tau must be in (0, 1], got {self.tau}")


class NodeUnionFind:
    """Disjoint sets over node keys with path compression and union by rank."""

    def __init__(self, nodes: Iterable[NodeKey] = ()) -> None:
        self.parent: Dict[NodeKey, NodeKey] = {}
        self.rank: Dict[NodeKey, int] = {}
        for node in nodes:
            self.add(node)

    def add(self, node: NodeKey) -> None:
        if node not in self.parent:
            self.parent[node] = node
            self.rank[node] = 0

    def find(self, node: NodeKey) -> NodeKey:
        self.add(node)
        root = node
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[node] != root:
            self.parent[node], node = root, self.parent[node]
        return root

    def union(self, a: NodeKey, b: NodeKey) -> NodeKey:
        root_a = self.find(a)
        root_b = self.find(b)
        if root_a == root_b:
            return root_a
        if self.rank[root_a] < self.rank[root_b]:
            root_a, root_b = root_b, root_a
        self.parent[root_b] = root_a
        if self.rank[root_a] == self.rank[root_b]:
            self.rank[root_a] += 1
        return root_a

    def groups(self) -> List[Tuple[NodeKey, ...]]:
        """Member tuples, each sorted, ordered by smallest member."""
        buckets: Dict[NodeKey, List[NodeKey]] = {}
        for node in self.parent:
            buckets.setdefault(self.find(node), []).append(node)
        return sorted(tuple(sorted(members)) for members in buckets.values())


@dataclass(frozen=True)
class EquivalenceClass:
    class_id: int
    members: Tuple[NodeKey, ...]

    def __len__(self) -> int:
        return len(self.members)


def _number(groups: Sequence[Tuple[NodeKey, ...]]) -> List[EquivalenceClass]:
    ordered = sorted(tuple(sorted(g)) for g in groups)
    return [EquivalenceClass(i, members) for i, members in enumerate(ordered)]


def cluster(
    sim: SimilarityMatrix, config: ClusterConfig, nodes: Iterable[NodeKey]
) -> List[EquivalenceClass]:
    """Single-link closure of the pairs scoring at least tau.

    Class ids follow the order of class representatives (smallest member key).
    """
    uf = NodeUnionFind(nodes)
    merged = 0
    for a, b in sim.pairs_at_least(config.tau):
        if a in uf.parent and b in uf.parent:
            uf.union(a, b)
            merged += 1
    classes = _number(uf.groups())
    logger.debug(
        f"Clustered {len(uf.parent)} nodes into {len(classes)} classes "
        f"({merged} pairs >= tau={config.tau})"
    )
    return classes


@dataclass(frozen=True)
class SummaryGraph(BaseArtifact):
    """Classes V' and labeled class-to-class edges E'."""

    classes: Tuple[EquivalenceClass, ...] = ()
    edges: FrozenSet[SummaryEdge] = frozenset()
    tau: float = 0.7
    beta: Optional[float] = None
    _class_of: Dict[NodeKey, int] = field(
        init=False, repr=False, compare=False, default_factory=dict
    )

    file_name = "summary.tsv"
    kind = "summary"

    def __post_init__(self) -> None:
        class_of: Dict[NodeKey, int] = {}
        ids: Set[int] = set()
        for eq_class in self.classes:
            if eq_class.class_id in ids:
                raise ValueError(f"duplicate class id {eq_class.class_id}")
            ids.add(eq_class.class_id)
            if not eq_class.members:
                raise ValueError(f"class {eq_class.class_id} has no members")
            for member in eq_class.members:
                if member in class_of:
                    raise ValueError(
                        f"node {member} belongs to classes {class_of[member]} "
                        f"and {eq_class.class_id}"
                    )
                class_of[member] = eq_class.class_id
        for source, _, target in self.edges:
            if source not in ids or target not in ids:
                raise ValueError(f"edge references unknown class ({source}, {target})")
        object.__setattr__(self, "_class_of", class_of)

    def class_of(self, node: NodeKey) -> Optional[int]:
        return self._class_of.get(node)

    def nodes(self) -> FrozenSet[NodeKey]:
        """Every classified resource, object-only nodes included."""
        return frozenset(self._class_of)

    def get_class(self, class_id: int) -> EquivalenceClass:
        for eq_class in self.classes:
            if eq_class.class_id == class_id:
                return eq_class
        raise KeyError(class_id)

    def sorted_edges(self) -> List[SummaryEdge]:
        return sorted(self.edges)

    def stats(self) -> Dict[str, int]:
        sizes = [len(c) for c in self.classes]
        return {
            "classes": len(self.classes),
            "nodes": sum(sizes),
            "largest_class": max(sizes, default=0),
            "singletons": sum(1 for s in sizes if s == 1),
            "edges": len(self.edges),
        }

    def header_fields(self) -> Dict[str, str]:
        fields_ = {"tau": repr(self.tau)}
        if self.beta is not None:
            fields_["beta"] = repr(self.beta)
        fields_["classes"] = str(len(self.classes))
        fields_["edges"] = str(len(self.edges))
        return fields_

    def to_lines(self) -> List[str]:
        lines = [
            f"{c.class_id}\t{','.join(escape_field(m) for m in c.members)}"
            for c in sorted(self.classes, key=lambda c: c.class_id)
        ]
        lines.extend(f"{s}\t{p}\t{o}" for s, p, o in self.sorted_edges())
        return lines

    @classmethod
    def from_lines(
        cls, header: Dict[str, str], body: List[str], path: Path
    ) -> "SummaryGraph":
        classes: List[EquivalenceClass] = []
        edges: Set[SummaryEdge] = set()
        for line in body:
            parts = line.split("\t")
            if len(parts) == 2:
                members = tuple(unescape_field(m) for m in parts[1].split(",") if m)
                classes.append(EquivalenceClass(int(parts[0]), members))
            elif len(parts) == 3:
                edges.add((int(parts[0]), parts[1], int(parts[2])))
            else:
                raise ArtifactError(f"malformed summary line {line!r}", str(path))

        expected = header.get("classes")
        if expected is not None and int(expected) != len(classes):
            raise ArtifactError(
                f"header announces {expected} classes, file has {len(classes)}",
                str(path),
            )
        try:
            return cls(
                classes=tuple(classes),
                edges=frozenset(edges),
                tau=float(header.get("tau", "0.7")),
                beta=float(header["beta"]) if "beta" in header else None,
            )
        except ValueError as e:
            raise ArtifactError(f"invalid partition: {e}", str(path)) from e


def build_summary(
    graph: RdfGraph,
    classes: Iterable[EquivalenceClass],
    tau: float = 0.7,
    beta: Optional[float] = None,
) -> SummaryGraph:
    """Summary graph over ``classes`` plus singleton classes for object-only nodes.

    Literals are never class members. An edge (C1, p, C2) exists iff some base
    triple (u, p, v) has u in C1 and v in C2.
    """
    groups: List[Tuple[NodeKey, ...]] = [c.members for c in classes]
    covered: Set[NodeKey] = {m for g in groups for m in g}
    for node_id, _ in graph.nodes():
        if graph.is_literal(node_id):
            continue
        key = graph.key(node_id)
        if key not in covered:
            groups.append((key,))
            covered.add(key)

    numbered = _number(groups)
    class_of = {m: c.class_id for c in numbered for m in c.members}
    edges: Set[SummaryEdge] = set()
    for triple in graph.triples():
        target = class_of.get(triple.object.key)
        if target is None:
            continue
        edges.add((class_of[triple.subject.key], triple.predicate.value, target))

    summary = SummaryGraph(tuple(numbered), frozenset(edges), tau, beta)
    logger.info(
        f"Summary graph: {len(numbered)} classes, {len(edges)} edges (tau={tau})"
    )
    return summary


def save_summary(summary: SummaryGraph, directory: Path) -> Path:
    return summary.save(directory)


def load_summary(directory: Path) -> SummaryGraph:
    return SummaryGraph.load(directory)
