"""
Type definitions and aliases for semsearch.

This module provides type aliases and protocols used throughout the package
for better type safety and code readability.
"""

from pathlib import Path
from typing import (
    TYPE_CHECKING,
    Any,
    Dict,
    List,
    Literal,
    Optional,
    Protocol,
    Tuple,
    Union,
    runtime_checkable,
)

if TYPE_CHECKING:
    from semsearch.search import ResultEntry

PathLike = Union[str, Path]

# Configuration types
ConfigDict = Dict[str, Any]
SettingsDict = Dict[str, Any]

# Graph types
NodeId = int
NodeKey = str  # IRI string, or "_:label" for blank nodes
NodePair = Tuple[NodeKey, NodeKey]  # unordered pair stored sorted
IdPair = Tuple[NodeId, NodeId]

# Index and search types
ElementKind = Literal["entity", "class", "property", "literal"]
FieldKind = Literal["iri-local-name", "literal-value", "predicate-label"]


@runtime_checkable
class SearchBackend(Protocol):
    """Anything that answers keyword queries with ranked entities."""

    def search(self, querystring: str, k: Optional[int] = None) -> List["ResultEntry"]:
        """Return the top-k results for a query string."""
        ...

    def has_entity(self, iri: NodeKey) -> bool:
        """Whether the entity exists in the indexed graph."""
        ...
