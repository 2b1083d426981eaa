"""
Unit tests for configuration management.

Tests the Settings singleton and the pipeline configuration layering
(master_config.yml, key=value file, flag overrides).
"""

import os
import sys
from pathlib import Path

import pytest

# Add project root to path before importing project modules
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from semsearch.config.pipeline import (  # noqa: E402
    PipelineConfig,
    load_pipeline_config,
    read_key_value_file,
)
from semsearch.config.settings import ConfigValidationError, Settings  # noqa: E402


class TestSettings:
    """Test cases for the Settings configuration class."""

    def test_settings_is_singleton(self):
        """Test Settings returns one shared instance."""
        assert Settings() is Settings()

    def test_settings_get_default(self):
        """Test the get method falls back to the default."""
        assert Settings().get("nonexistent_key", "default_value") == "default_value"

    def test_pipeline_defaults_loaded(self):
        """Test master_config.yml pipeline defaults are visible."""
        settings = Settings()
        assert settings.get("pipeline.beta") == 0.15
        assert settings.get("pipeline.tau") == 0.7
        assert settings.get("pipeline.weight_mode") == "uniform"
        assert settings.get("server.port") == 8765

    def test_settings_get_nested_keys(self, mocker):
        """Test getting nested configuration keys."""
        settings = Settings()
        mocker.patch.object(settings, "_settings", {"performance": {"eval_workers": 2}})
        assert settings.get("performance.eval_workers", 4) == 2
        assert settings.get("performance.nonexistent", "default") == "default"

    def test_settings_set_method(self, restore_settings):
        """Test the set method for updating configuration values."""
        restore_settings.set("nested.key", "nested_value")
        assert restore_settings.get("nested.key") == "nested_value"

    def test_environment_override(self, restore_settings, mocker):
        """Test SEMSEARCH_<SECTION>__<KEY> overrides with typed values."""
        mocker.patch.dict(os.environ, {"SEMSEARCH_PIPELINE__BETA": "0.2"})
        restore_settings.reload()
        assert restore_settings.get("pipeline.beta") == 0.2

    def test_config_file_env_is_not_an_override(self, restore_settings, mocker):
        """Test SEMSEARCH_CONFIG is not treated as a settings key."""
        mocker.patch.dict(os.environ, {"SEMSEARCH_CONFIG": "/tmp/x.conf"})
        restore_settings.reload()
        assert restore_settings.get("config") is None

    def test_invalid_port_rejected(self, restore_settings, mocker):
        """Test settings validation names the offending key."""
        mocker.patch.dict(os.environ, {"SEMSEARCH_SERVER__PORT": "70000"})
        with pytest.raises(ConfigValidationError, match="server.port"):
            restore_settings.reload()

    def test_reset_instance_builds_a_fresh_singleton(self):
        """Test reset_instance drops the cached instance."""
        original = Settings._instance
        try:
            Settings.reset_instance()
            fresh = Settings()
            assert fresh is not original
            assert fresh.get("pipeline.beta") == 0.15
        finally:
            Settings._instance = original

    def test_convert_value(self):
        """Test YAML scalar conversion of raw strings."""
        assert Settings.convert_value("true") is True
        assert Settings.convert_value("42") == 42
        assert Settings.convert_value("0.5") == 0.5
        assert Settings.convert_value("null") is None
        assert Settings.convert_value("rarity") == "rarity"


class TestPipelineConfig:
    """Test cases for PipelineConfig validation and layering."""

    def test_defaults_are_valid(self):
        """Test the dataclass defaults."""
        config = PipelineConfig()
        assert config.beta == 0.15
        assert config.k == 10
        assert config.stemming is True

    @pytest.mark.parametrize(
        "key,value",
        [
            ("beta", 1.5),
            ("beta", 0.0),
            ("max_iterations", 0),
            ("epsilon", 0.0),
            ("exact_matching_limit", 0),
            ("weight_mode", "pagerank"),
            ("sigma", 1.0),
            ("k", 0),
            ("tau", 1.2),
        ],
    )
    def test_range_violations_name_the_key(self, key, value):
        """Test every range check raises with the key named."""
        with pytest.raises(ConfigValidationError, match=key):
            PipelineConfig.from_mapping({key: value})

    def test_tau_must_exceed_beta(self):
        """Test tau <= beta is rejected."""
        with pytest.raises(ConfigValidationError, match="tau"):
            PipelineConfig(beta=0.5, tau=0.4)

    def test_unknown_keys_rejected(self):
        """Test unknown keys are rejected."""
        with pytest.raises(ConfigValidationError, match="unknown"):
            PipelineConfig.from_mapping({"gamma": 1})

    def test_type_coercion(self):
        """Test string values are coerced to field types."""
        config = PipelineConfig.from_mapping(
            {"beta": "0.2", "k": "5", "stemming": "false"}
        )
        assert config.beta == 0.2
        assert config.k == 5
        assert config.stemming is False

    def test_bad_integer_rejected(self):
        """Test a fractional k is rejected."""
        with pytest.raises(ConfigValidationError, match="k"):
            PipelineConfig.from_mapping({"k": 2.5})

    def test_with_overrides_ignores_none(self):
        """Test None overrides keep the current value."""
        config = PipelineConfig().with_overrides(beta=None, k=3)
        assert config.beta == 0.15
        assert config.k == 3

    def test_build_params_excludes_runtime_keys(self):
        """Test the manifest subset drops paths and leniency."""
        params = PipelineConfig(dataset="x.nt").build_params()
        assert "dataset" not in params
        assert "artifact_dir" not in params
        assert "lenient" not in params
        assert params["beta"] == 0.15
        assert "stopword_sha256" not in params

    def test_build_params_record_stopword_contents(self, tmp_path):
        """Test the stopword list is recorded by content, not layout."""
        stopwords = tmp_path / "stop.txt"
        stopwords.write_text("foo\nbar\n", encoding="utf-8")
        config = PipelineConfig(stopword_file=str(stopwords))
        first = config.build_params()["stopword_sha256"]

        stopwords.write_text("# reordered\nBAR\nfoo\n", encoding="utf-8")
        assert config.build_params()["stopword_sha256"] == first

        stopwords.write_text("foo\nbar\nbaz\n", encoding="utf-8")
        assert config.build_params()["stopword_sha256"] != first

    def test_sub_configs(self):
        """Test derived per-module configurations."""
        config = PipelineConfig(beta=0.2, tau=0.8, sigma=0.4, k=7, stemming=False)
        assert config.similarity_config().beta == 0.2
        assert config.cluster_config().tau == 0.8
        assert config.search_config().sigma == 0.4
        assert config.search_config().k == 7
        assert config.analysis_config().stemming_enabled is False

    def test_stopword_file_feeds_analysis(self, tmp_path):
        """Test a stopword file replaces the built-in list."""
        stopwords = tmp_path / "stop.txt"
        stopwords.write_text("# custom\nfoo\nBar\n", encoding="utf-8")
        config = PipelineConfig(stopword_file=str(stopwords))
        assert config.analysis_config().stopwords == frozenset({"foo", "bar"})

    def test_missing_stopword_file(self, tmp_path):
        """Test an unreadable stopword file is a configuration error."""
        config = PipelineConfig(stopword_file=str(tmp_path / "missing.txt"))
        with pytest.raises(ConfigValidationError, match="stopword"):
            config.analysis_config()


class TestKeyValueFile:
    """Test cases for the flat key=value pipeline file."""

    def test_read_key_value_file(self, tmp_path):
        """Test comments, blank lines and typed values."""
        path = tmp_path / "pipeline.conf"
        text = "# comment\n\nbeta = 0.25\nweight_mode=rarity\n"
        path.write_text(text, encoding="utf-8")
        assert read_key_value_file(path) == {"beta": 0.25, "weight_mode": "rarity"}

    def test_malformed_line(self, tmp_path):
        """Test a line without '=' is rejected with its position."""
        path = tmp_path / "pipeline.conf"
        path.write_text("beta 0.25\n", encoding="utf-8")
        with pytest.raises(ConfigValidationError, match="pipeline.conf:1"):
            read_key_value_file(path)

    def test_missing_file(self, tmp_path):
        """Test a missing configuration file."""
        with pytest.raises(ConfigValidationError, match="not found"):
            read_key_value_file(tmp_path / "nope.conf")

    def test_precedence(self, tmp_path):
        """Test file values override defaults and flags override the file."""
        path = tmp_path / "pipeline.conf"
        path.write_text("beta=0.25\nk=4\n", encoding="utf-8")
        config = load_pipeline_config(path, k=6)
        assert config.beta == 0.25
        assert config.k == 6
        assert config.tau == 0.7

    def test_config_file_from_environment(self, tmp_path, mocker):
        """Test SEMSEARCH_CONFIG points at the key=value file."""
        path = tmp_path / "pipeline.conf"
        path.write_text("sigma=0.5\n", encoding="utf-8")
        mocker.patch.dict(os.environ, {"SEMSEARCH_CONFIG": str(path)})
        assert load_pipeline_config().sigma == 0.5

    def test_file_range_violation(self, tmp_path):
        """Test beta=1.5 in the file is rejected."""
        path = tmp_path / "pipeline.conf"
        path.write_text("beta=1.5\n", encoding="utf-8")
        with pytest.raises(ConfigValidationError, match="beta"):
            load_pipeline_config(path)
