"""Pipeline configuration: defaults from settings, key=value file, flag overrides."""

import hashlib
import os
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path
from typing import TYPE_CHECKING, Any, Dict, Mapping, Optional

from semsearch.config.settings import (
    CONFIG_FILE_ENV,
    ConfigValidationError,
    Settings,
    settings,
)
from semsearch.types import PathLike

if TYPE_CHECKING:
    from semsearch.analysis import AnalysisConfig
    from semsearch.search import SearchConfig
    from semsearch.similarity.pairsim import SimilarityConfig
    from semsearch.summary import ClusterConfig

WEIGHT_MODES = ("uniform", "rarity")
# Keys that do not influence the persisted artifacts.
RUNTIME_KEYS = ("dataset", "artifact_dir", "lenient")
STOPWORD_DIGEST_KEY = "stopword_sha256"


@dataclass(frozen=True)
class PipelineConfig:
    beta: float = 0.15
    max_iterations: int = 10
    epsilon: float = 1e-4
    exact_matching_limit: int = 8
    weight_mode: str = "uniform"
    tau: float = 0.7
    sigma: float = 0.3
    k: int = 10
    stemming: bool = True
    split_camel_case: bool = True
    stopword_file: Optional[str] = None
    lenient: bool = False
    dataset: Optional[str] = None
    artifact_dir: str = "artifacts"

    def __post_init__(self) -> None:
        self.validate()

    @classmethod
    def keys(cls) -> tuple:
        return tuple(f.name for f in fields(cls))

    @classmethod
    def from_mapping(cls, values: Mapping[str, Any]) -> "PipelineConfig":
        unknown = sorted(set(values) - set(cls.keys()))
        if unknown:
            raise ConfigValidationError(f"unknown configuration keys: {unknown}")
        coerced: Dict[str, Any] = {}
        for f in fields(cls):
            if f.name not in values:
                continue
            coerced[f.name] = _coerce(f.name, values[f.name], f.default)
        return cls(**coerced)

    def validate(self) -> None:
        if not 0.0 < self.beta < 1.0:
            raise ConfigValidationError(f"beta must be in (0, 1), got {self.beta}")
        if self.max_iterations < 1:
            raise ConfigValidationError(
                f"max_iterations must be >= 1, got {self.max_iterations}"
            )
        if self.epsilon <= 0:
            raise ConfigValidationError(f"epsilon must be positive, got {self.epsilon}")
        if self.exact_matching_limit < 1:
            raise ConfigValidationError(
                f"exact_matching_limit must be >= 1, got {self.exact_matching_limit}"
            )
        if self.weight_mode not in WEIGHT_MODES:
            raise ConfigValidationError(
                f"weight_mode must be one of {WEIGHT_MODES}, got {self.weight_mode!r}"
            )
        if not 0.0 < self.tau <= 1.0:
            raise ConfigValidationError(f"tau must be in (0, 1], got {self.tau}")
        if self.tau <= self.beta:
            raise ConfigValidationError(
                f"tau ({self.tau}) must exceed beta ({self.beta}); "
                "every score is at least beta"
            )
        if not 0.0 < self.sigma < 1.0:
            raise ConfigValidationError(f"sigma must be in (0, 1), got {self.sigma}")
        if self.k < 1:
            raise ConfigValidationError(f"k must be >= 1, got {self.k}")

    def with_overrides(self, **overrides: Any) -> "PipelineConfig":
        present = {key: value for key, value in overrides.items() if value is not None}
        unknown = sorted(set(present) - set(self.keys()))
        if unknown:
            raise ConfigValidationError(f"unknown configuration keys: {unknown}")
        coerced = {
            key: _coerce(key, value, getattr(self, key))
            for key, value in present.items()
        }
        return replace(self, **coerced)

    def build_params(self) -> Dict[str, Any]:
        """The subset of keys recorded in the build manifest.

        A custom stopword list is recorded by content as well as by path.
        """
        params = {k: v for k, v in asdict(self).items() if k not in RUNTIME_KEYS}
        digest = self.stopword_digest()
        if digest is not None:
            params[STOPWORD_DIGEST_KEY] = digest
        return params

    def stopword_digest(self) -> Optional[str]:
        if not self.stopword_file:
            return None
        from semsearch.analysis import load_stopwords

        words = "\n".join(sorted(load_stopwords(self.stopword_file)))
        return hashlib.sha256(words.encode("utf-8")).hexdigest()

    def analysis_config(self) -> "AnalysisConfig":
        from semsearch.analysis import AnalysisConfig, load_stopwords

        if self.stopword_file:
            return AnalysisConfig(
                stemming_enabled=self.stemming,
                stopwords=load_stopwords(self.stopword_file),
                split_camel_case=self.split_camel_case,
            )
        return AnalysisConfig(
            stemming_enabled=self.stemming, split_camel_case=self.split_camel_case
        )

    def similarity_config(self) -> "SimilarityConfig":
        from semsearch.similarity.pairsim import SimilarityConfig

        return SimilarityConfig(
            beta=self.beta,
            max_iterations=self.max_iterations,
            epsilon=self.epsilon,
            exact_matching_limit=self.exact_matching_limit,
        )

    def cluster_config(self) -> "ClusterConfig":
        from semsearch.summary import ClusterConfig

        return ClusterConfig(tau=self.tau)

    def search_config(self) -> "SearchConfig":
        from semsearch.search import SearchConfig

        return SearchConfig(k=self.k, sigma=self.sigma)


def _coerce(key: str, value: Any, default: Any) -> Any:
    """Coerce a raw value to the type of the field default."""
    if isinstance(value, str) and not isinstance(default, str):
        value = Settings.convert_value(value)
    if value is None:
        return None
    try:
        if isinstance(default, bool):
            if not isinstance(value, bool):
                raise ValueError(f"expected true/false, got {value!r}")
            return value
        if isinstance(default, int):
            if isinstance(value, bool) or float(value) != int(value):
                raise ValueError(f"expected an integer, got {value!r}")
            return int(value)
        if isinstance(default, float):
            if isinstance(value, bool):
                raise ValueError(f"expected a number, got {value!r}")
            return float(value)
        return str(value)
    except (TypeError, ValueError) as e:
        raise ConfigValidationError(f"{key}: {e}") from e


def read_key_value_file(path: PathLike) -> Dict[str, Any]:
    """Read a flat key=value file; '#' starts a comment line."""
    config_path = Path(path)
    if not config_path.is_file():
        raise ConfigValidationError(f"configuration file not found: {config_path}")

    values: Dict[str, Any] = {}
    with open(config_path, "r", encoding="utf-8") as f:
        for lineno, raw in enumerate(f, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ConfigValidationError(
                    f"{config_path}:{lineno}: expected key=value, got {line!r}"
                )
            key, _, value = line.partition("=")
            values[key.strip()] = Settings.convert_value(value.strip())
    return values


def load_pipeline_config(
    config_file: Optional[PathLike] = None, **overrides: Any
) -> PipelineConfig:
    """Resolve the pipeline configuration.

    Precedence, lowest first: master_config.yml (and SEMSEARCH_* overrides),
    the key=value file from ``config_file`` or SEMSEARCH_CONFIG, then
    ``overrides`` whose value is not None.
    """
    values: Dict[str, Any] = dict(settings.get_section("pipeline"))

    file_path = config_file or os.environ.get(CONFIG_FILE_ENV)
    if file_path:
        values.update(read_key_value_file(file_path))

    base = PipelineConfig.from_mapping(values)
    return base.with_overrides(**overrides)
