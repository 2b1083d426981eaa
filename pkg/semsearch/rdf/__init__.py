"""RDF terms, graph and N-Triples I/O."""

from .model import (
    RDF_LANG_STRING,
    BlankNode,
    Iri,
    Literal,
    RdfGraph,
    Resource,
    Term,
    Triple,
)
from .ntriples import (
    NTriplesReader,
    parse_ntriples,
    parse_ntriples_file,
    serialize_ntriples,
)

__all__ = [
    "RDF_LANG_STRING",
    "BlankNode",
    "Iri",
    "Literal",
    "RdfGraph",
    "Resource",
    "Term",
    "Triple",
    "NTriplesReader",
    "parse_ntriples",
    "parse_ntriples_file",
    "serialize_ntriples",
]
