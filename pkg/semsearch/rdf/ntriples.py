"""N-Triples reading and writing.

Lines are handed one at a time to rdflib's N-Triples parser so that a bad line
can be reported with its position, or skipped in lenient mode. All lines of a
document share one blank-node context, which keeps ``_:label`` identifiers
scoped to the document.
"""

from contextlib import contextmanager
from itertools import islice
from pathlib import Path
from typing import Dict, Iterable, Iterator, List, Optional, Tuple

import rdflib
from rdflib import BNode as RdfBNode
from rdflib import Literal as RdfLiteral
from rdflib import URIRef
from rdflib.plugins.parsers.ntriples import ParseError, W3CNTriplesParser

from semsearch.core.exceptions import NTriplesParseError
from semsearch.core.logger import get_logger, log_print
from semsearch.rdf.model import BlankNode, Iri, Literal, RdfGraph, Term, Triple
from semsearch.types import PathLike

logger = get_logger("rdf")


@contextmanager
def _lexical_literals() -> Iterator[None]:
    """Keep typed literals in their written lexical form while parsing."""
    previous = rdflib.NORMALIZE_LITERALS
    rdflib.NORMALIZE_LITERALS = False
    try:
        yield
    finally:
        rdflib.NORMALIZE_LITERALS = previous


class _CollectingSink:
    def __init__(self) -> None:
        self.triples: List[Tuple[object, object, object]] = []

    def triple(self, s: object, p: object, o: object) -> None:
        self.triples.append((s, p, o))


class NTriplesReader:
    """Parses N-Triples text into an :class:`RdfGraph`.

    Attributes after :meth:`read`:
        lines_read: physical lines consumed
        triples_read: well-formed triple lines (duplicates included)
        skipped: malformed lines skipped in lenient mode
        errors: the skipped errors, in line order
    """

    def __init__(self, lenient: bool = False) -> None:
        self.lenient = lenient
        self.lines_read = 0
        self.triples_read = 0
        self.skipped = 0
        self.errors: List[NTriplesParseError] = []
        self._bnode_context: Dict[str, RdfBNode] = {}
        self._bnode_labels: Dict[RdfBNode, str] = {}

    def read(self, lines: Iterable[str], graph: Optional[RdfGraph] = None) -> RdfGraph:
        graph = graph if graph is not None else RdfGraph()
        for lineno, raw in enumerate(lines, start=1):
            self.lines_read = lineno
            text = raw.rstrip("\r\n")
            stripped = text.strip()
            if not stripped or stripped.startswith("#"):
                continue
            try:
                for triple in self._parse_line(text, lineno):
                    self.triples_read += 1
                    graph.add(triple)
            except NTriplesParseError as e:
                if not self.lenient:
                    raise
                self.skipped += 1
                self.errors.append(e)
                logger.debug(f"Skipped malformed line: {e}")

        if self.skipped:
            log_print(
                f"WARNING: skipped {self.skipped} malformed line(s) in lenient mode",
                level="WARNING",
                logger_name="rdf",
            )
        logger.info(
            f"Parsed {self.triples_read} triples from {self.lines_read} lines "
            f"({len(graph)} distinct, {self.skipped} skipped)"
        )
        return graph

    def _parse_line(self, text: str, lineno: int) -> List[Triple]:
        sink = _CollectingSink()
        parser = W3CNTriplesParser(sink=sink)
        try:
            with _lexical_literals():
                parser.parsestring(text, bnode_context=self._bnode_context)
            self._record_new_labels()
        except ParseError as e:
            remainder = getattr(parser, "line", None) or ""
            raise NTriplesParseError(
                lineno, self._error_column(text, remainder), str(e), text
            ) from e

        if not sink.triples:
            raise NTriplesParseError(lineno, 1, "no triple on line", text)

        triples = []
        for s, p, o in sink.triples:
            try:
                subject = self._convert(s)
                predicate = self._convert(p)
                obj = self._convert(o)
                if not isinstance(predicate, Iri) or isinstance(subject, Literal):
                    raise ValueError("invalid term position")
                triples.append(Triple(subject, predicate, obj))
            except ValueError as e:
                raise NTriplesParseError(lineno, 1, str(e), text) from e
        return triples

    @staticmethod
    def _error_column(text: str, remainder: str) -> int:
        rest = remainder.strip()
        if rest and text.rfind(rest) >= 0:
            return text.rfind(rest) + 1
        return len(text.rstrip()) + 1 if not rest else 1

    def _convert(self, node: object) -> Term:
        if isinstance(node, URIRef):
            return Iri(str(node))
        if isinstance(node, RdfBNode):
            return BlankNode(self._label_of(node))
        if isinstance(node, RdfLiteral):
            datatype = Iri(str(node.datatype)) if node.datatype is not None else None
            return Literal(str(node), datatype=datatype, language=node.language)
        raise ValueError(f"unsupported term {node!r}")

    def _record_new_labels(self) -> None:
        # the parser only appends to the shared context
        fresh = len(self._bnode_context) - len(self._bnode_labels)
        if fresh <= 0:
            return
        for name, node in islice(reversed(self._bnode_context.items()), fresh):
            self._bnode_labels[node] = name

    def _label_of(self, bnode: RdfBNode) -> str:
        return self._bnode_labels.get(bnode, str(bnode))


def parse_ntriples(lines: Iterable[str], lenient: bool = False) -> RdfGraph:
    """Parse N-Triples text (any iterable of lines, e.g. an open file)."""
    return NTriplesReader(lenient=lenient).read(lines)


def parse_ntriples_file(path: PathLike, lenient: bool = False) -> RdfGraph:
    with open(Path(path), "r", encoding="utf-8") as f:
        return parse_ntriples(f, lenient=lenient)


def serialize_ntriples(graph: RdfGraph) -> str:
    """Sorted N-Triples text for ``graph``, one triple per line."""
    lines = sorted(triple.to_ntriples() for triple in graph.triples())
    return "".join(f"{line}\n" for line in lines)
