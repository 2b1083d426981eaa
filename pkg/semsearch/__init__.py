"""semsearch - Keyword search over RDF graphs.

Preprocessing turns an N-Triples dataset into persisted artifacts: an idf
table, a structural similarity matrix, a summary graph of equivalence
classes, a keyword index and a graph index. Queries read only those
artifacts; direct keyword hits are augmented with same-class entities.
"""

from .config import (
    ConfigValidationError,
    PipelineConfig,
    Settings,
    load_pipeline_config,
    settings,
)
from .core import (
    ArtifactError,
    DatasetError,
    GoldSetError,
    InvalidQueryError,
    NTriplesParseError,
    SemSearchError,
    StaleArtifactError,
    get_logger,
    log_print,
)
from .engines import IndexBuilder, LoadedEngine, build_artifacts, load_engine
from .evaluation import EvalReport, evaluate, load_gold_set
from .rdf import RdfGraph, parse_ntriples, parse_ntriples_file
from .search import ResultEntry, SearchEngine, search
from .version import (
    __description__,
    __license__,
    __status__,
    __title__,
    __version__,
    __version_info__,
    check_python_version,
    get_dependency_versions,
    get_full_version_info,
    get_version_info,
    get_version_string,
)

__all__ = [
    # Version
    "__version__",
    "__version_info__",
    "__title__",
    "__description__",
    "__license__",
    "__status__",
    "get_version_info",
    "get_version_string",
    "get_full_version_info",
    "check_python_version",
    "get_dependency_versions",
    # Configuration
    "Settings",
    "settings",
    "ConfigValidationError",
    "PipelineConfig",
    "load_pipeline_config",
    # Errors and logging
    "SemSearchError",
    "DatasetError",
    "NTriplesParseError",
    "ArtifactError",
    "StaleArtifactError",
    "InvalidQueryError",
    "GoldSetError",
    "get_logger",
    "log_print",
    # Pipeline
    "RdfGraph",
    "parse_ntriples",
    "parse_ntriples_file",
    "IndexBuilder",
    "build_artifacts",
    "LoadedEngine",
    "load_engine",
    "SearchEngine",
    "ResultEntry",
    "search",
    "EvalReport",
    "evaluate",
    "load_gold_set",
]
