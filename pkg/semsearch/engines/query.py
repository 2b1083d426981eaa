"""Loading persisted artifacts into a ready-to-query search engine."""

from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Optional

from semsearch.config import PipelineConfig
from semsearch.config.pipeline import STOPWORD_DIGEST_KEY
from semsearch.core.exceptions import StaleArtifactError
from semsearch.core.logger import get_logger
from semsearch.engines.manifest import BuildManifest
from semsearch.index import GraphIndex, KeywordIndex
from semsearch.search import SearchEngine
from semsearch.summary import SummaryGraph
from semsearch.types import PathLike

logger = get_logger("query")


@dataclass
class LoadedEngine:
    engine: SearchEngine
    manifest: BuildManifest
    config: PipelineConfig
    artifact_dir: Path

    def health(self) -> Dict[str, Any]:
        return {"status": "ok", "manifest": self.manifest.to_dict()}


def load_engine(
    artifact_dir: PathLike,
    k: Optional[int] = None,
    sigma: Optional[float] = None,
) -> LoadedEngine:
    """Verify the manifest hashes and load the indexes of one build.

    The analysis settings always come from the build; only the query-time
    keys ``k`` and ``sigma`` can be overridden.

    Raises:
        ArtifactError: missing or unreadable artifacts
        StaleArtifactError: an artifact no longer matches the manifest
    """
    root = Path(artifact_dir)
    manifest = BuildManifest.load(root)
    manifest.verify(root)

    params = dict(manifest.config)
    recorded_stopwords = params.pop(STOPWORD_DIGEST_KEY, None)
    config = PipelineConfig.from_mapping(params).with_overrides(
        k=k, sigma=sigma, artifact_dir=str(root)
    )
    if config.stopword_digest() != recorded_stopwords:
        raise StaleArtifactError(
            f"stopword file {config.stopword_file} changed since the build; "
            "rebuild with 'semsearch build'"
        )
    keyword_index = KeywordIndex.load(root)
    graph_index = GraphIndex.load(root)
    engine = SearchEngine(
        keyword_index,
        graph_index,
        config.analysis_config(),
        config.search_config(),
        graph_nodes=SummaryGraph.load(root).nodes(),
    )
    logger.info(
        f"Loaded build from {root}: {len(keyword_index)} tokens, "
        f"{len(graph_index)} entities"
    )
    return LoadedEngine(engine, manifest, config, root)
