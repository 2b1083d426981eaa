"""Preprocessing pipeline: dataset -> graph -> idf -> similarity -> summary -> indexes.

All heavy computation happens here; querying only reads the persisted output.
"""

import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, FrozenSet, Iterator, List, Optional

from semsearch.analysis import AnalysisConfig, IdfTable, build_idf, get_analyzer
from semsearch.base import BaseArtifact
from semsearch.config import PipelineConfig
from semsearch.config.settings import ConfigValidationError
from semsearch.core.exceptions import ArtifactWriteError
from semsearch.core.logger import (
    log_analysis_step,
    log_performance_metric,
    log_structured,
)
from semsearch.core.utils import memory_usage_mb, sha256_file
from semsearch.core.validation import DatasetValidator
from semsearch.engines.manifest import BuildManifest
from semsearch.index import (
    GraphIndex,
    KeywordIndex,
    build_graph_index,
    build_keyword_index,
)
from semsearch.rdf.model import Literal, RdfGraph
from semsearch.rdf.ntriples import NTriplesReader
from semsearch.similarity.pairsim import (
    PredicateWeights,
    SimilarityCalculator,
    SimilarityMatrix,
    compute_predicate_weights,
)
from semsearch.summary import SummaryGraph, build_summary, cluster
from semsearch.types import PathLike


@dataclass
class BuildArtifacts:
    """Everything derived from one graph under one configuration."""

    graph: RdfGraph
    idf: IdfTable
    weights: PredicateWeights
    similarity: SimilarityMatrix
    summary: SummaryGraph
    keyword_index: KeywordIndex
    graph_index: GraphIndex
    candidate_pairs: int = 0

    def persisted(self) -> List[BaseArtifact]:
        return [
            self.idf,
            self.similarity,
            self.summary,
            self.keyword_index,
            self.graph_index,
        ]


@dataclass
class BuildResult:
    artifact_dir: Path
    manifest: BuildManifest
    artifacts: BuildArtifacts
    skipped_lines: int = 0
    timings: Dict[str, float] = field(default_factory=dict)


class _Stopwatch:
    def __init__(self) -> None:
        self.timings: Dict[str, float] = {}

    def stage(self, name: str) -> "_Stage":
        return _Stage(self, name)


class _Stage:
    def __init__(self, watch: _Stopwatch, name: str) -> None:
        self.watch = watch
        self.name = name
        self.start = 0.0

    def __enter__(self) -> "_Stage":
        log_analysis_step(self.name)
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc: object) -> None:
        elapsed = time.perf_counter() - self.start
        self.watch.timings[self.name] = elapsed
        log_performance_metric(
            self.name,
            elapsed_seconds=round(elapsed, 4),
            rss_mb=round(memory_usage_mb(), 1),
        )


def literal_corpus(
    graph: RdfGraph, analysis_config: AnalysisConfig
) -> Iterator[FrozenSet[str]]:
    """Token sets of the distinct literal nodes, one document each."""
    analyzer = get_analyzer(analysis_config)
    for _, term in graph.nodes():
        if isinstance(term, Literal):
            yield analyzer.tokenize(term.lexical_form).tokens


def build_artifacts(
    graph: RdfGraph,
    config: PipelineConfig,
    show_progress: Optional[bool] = None,
    watch: Optional[_Stopwatch] = None,
) -> BuildArtifacts:
    """Derive every artifact from a parsed graph."""
    watch = watch or _Stopwatch()
    analysis_config = config.analysis_config()

    with watch.stage("idf"):
        idf = build_idf(literal_corpus(graph, analysis_config))

    with watch.stage("similarity"):
        weights = compute_predicate_weights(graph, config.weight_mode)
        calculator = SimilarityCalculator(
            graph,
            idf,
            weights,
            config.similarity_config(),
            analysis_config,
            show_progress=show_progress,
        )
        similarity = calculator.compute(config.weight_mode)

    subject_keys = [graph.key(s) for s in graph.subjects()]
    with watch.stage("summary"):
        classes = cluster(similarity, config.cluster_config(), subject_keys)
        summary = build_summary(graph, classes, tau=config.tau, beta=config.beta)

    with watch.stage("index"):
        keyword_index = build_keyword_index(graph, analysis_config)
        graph_index = build_graph_index(summary, similarity, subject_keys)

    return BuildArtifacts(
        graph,
        idf,
        weights,
        similarity,
        summary,
        keyword_index,
        graph_index,
        candidate_pairs=len(calculator.pairs),
    )


class IndexBuilder:
    """Runs the build for one PipelineConfig and persists the artifacts."""

    def __init__(
        self, config: PipelineConfig, show_progress: Optional[bool] = None
    ) -> None:
        self.config = config
        self.show_progress = show_progress
        self.validator = DatasetValidator()

    def run(
        self,
        dataset: Optional[PathLike] = None,
        artifact_dir: Optional[PathLike] = None,
    ) -> BuildResult:
        dataset = dataset or self.config.dataset
        if not dataset:
            raise ConfigValidationError("no dataset given (argument or 'dataset' key)")
        target = Path(artifact_dir or self.config.artifact_dir)
        watch = _Stopwatch()

        info = self.validator.validate_dataset(dataset)
        dataset_path = Path(info["file_path"])

        with watch.stage("parse"):
            reader = NTriplesReader(lenient=self.config.lenient)
            with open(dataset_path, "r", encoding="utf-8") as f:
                graph = reader.read(f)

        artifacts = build_artifacts(graph, self.config, self.show_progress, watch)

        with watch.stage("persist"):
            try:
                target.mkdir(parents=True, exist_ok=True)
            except OSError as e:
                raise ArtifactWriteError(str(target), e) from e
            hashes: Dict[str, str] = {}
            for artifact in artifacts.persisted():
                path = artifact.save(target)
                hashes[artifact.file_name] = sha256_file(path)

            manifest = BuildManifest(
                config=self.config.build_params(),
                dataset={
                    "name": dataset_path.name,
                    "sha256": sha256_file(dataset_path),
                    "size_bytes": dataset_path.stat().st_size,
                },
                artifacts=hashes,
                counts=self._counts(artifacts, reader),
            )
            manifest.save(target)

        log_structured(
            "builder",
            "INFO",
            f"Build finished: {len(graph)} triples, "
            f"{manifest.counts['classes']} classes, artifacts in {target}",
            artifact_dir=str(target),
            **manifest.counts,
        )
        return BuildResult(target, manifest, artifacts, reader.skipped, watch.timings)

    @staticmethod
    def _counts(artifacts: BuildArtifacts, reader: NTriplesReader) -> Dict[str, int]:
        graph = artifacts.graph
        stats = artifacts.summary.stats()
        return {
            "triples": len(graph),
            "nodes": graph.node_count,
            "subjects": len(graph.subjects()),
            "predicates": len(graph.predicates()),
            "literals": artifacts.idf.doc_count,
            "skipped_lines": reader.skipped,
            "candidate_pairs": artifacts.candidate_pairs,
            "iterations": artifacts.similarity.iteration,
            "approximated_pairs": len(artifacts.similarity.approximated),
            "classes": stats["classes"],
            "summary_edges": stats["edges"],
            "tokens": len(artifacts.keyword_index),
            "postings": artifacts.keyword_index.posting_count,
        }
