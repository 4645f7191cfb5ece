"""
Tests for run configuration.
"""

import json

import pytest

from hardybench.config import JOBS_ENV, RunConfig
from hardybench.utils.exceptions import ConfigError


class TestRunConfigParsing:
    """Test building configurations."""

    def test_defaults(self):
        """Test the default configuration."""
        config = RunConfig()
        assert config.command == "verify"
        assert config.p == ()
        assert config.r_grid is None

    def test_list_fields_from_strings(self):
        """Test comma-separated lists and scalars become tuples."""
        config = RunConfig(p="2, 3", Q=4, k=[2, 3], r_grid="0.5,1")
        assert config.p == (2.0, 3.0)
        assert config.Q == (4.0,)
        assert config.k == (2, 3)
        assert config.r_grid == (0.5, 1.0)

    @pytest.mark.parametrize("kwargs,match", [
        ({"p": "two"}, "comma-separated"),
        ({"k": "2.5"}, "k must be integers"),
        ({"command": "plot"}, "Unknown command"),
        ({"format": "xml"}, "Unknown format"),
    ])
    def test_invalid_values(self, kwargs, match):
        """Test ill-typed values raise ConfigError."""
        with pytest.raises(ConfigError, match=match):
            RunConfig(**kwargs)

    def test_from_dict_unknown_keys(self):
        """Test unknown keys are rejected."""
        with pytest.raises(ConfigError, match="Unknown configuration keys"):
            RunConfig.from_dict({"p": [2], "colour": "red"})
        with pytest.raises(ConfigError, match="JSON object"):
            RunConfig.from_dict([1, 2])

    def test_from_json(self):
        """Test JSON round trip and malformed input."""
        config = RunConfig(command="sweep", p=(2.0, 3.0), Q=(4.0,))
        assert RunConfig.from_json(config.to_json()) == config
        with pytest.raises(ConfigError, match="Malformed JSON"):
            RunConfig.from_json("{p: 2")

    def test_load(self, tmp_path):
        """Test reading a configuration file."""
        path = tmp_path / "run.json"
        path.write_text(json.dumps({"inequality": "rellich", "k": [2], "Q": [5]}))
        config = RunConfig.load(path)
        assert config.inequality == "rellich"
        assert config.k == (2,)
        with pytest.raises(ConfigError, match="Cannot read"):
            RunConfig.load(tmp_path / "missing.json")

    def test_merged(self):
        """Test non-None overrides win."""
        config = RunConfig(p=(2.0,), seed=3).merged({"p": "3", "seed": None, "verbose": True})
        assert config.p == (3.0,)
        assert config.seed == 3
        assert config.verbose


class TestResolvedViews:
    """Test derived values."""

    def test_jobs_precedence(self):
        """Test flag, then environment, then 1."""
        assert RunConfig(jobs=3).resolved_jobs({JOBS_ENV: "5"}) == 3
        assert RunConfig().resolved_jobs({JOBS_ENV: "5"}) == 5
        assert RunConfig().resolved_jobs({}) == 1

    def test_invalid_jobs(self):
        """Test non-positive and non-numeric job counts."""
        with pytest.raises(ConfigError, match=JOBS_ENV):
            RunConfig().resolved_jobs({JOBS_ENV: "many"})
        with pytest.raises(ConfigError, match="jobs"):
            RunConfig(jobs=0).resolved_jobs({})

    def test_exponents(self):
        """Test first entries and axes."""
        config = RunConfig(p=(3.0, 4.0), k=(2,))
        params = config.exponent_params()
        assert params.p == 3.0 and params.k == 2
        assert config.exponent_axes() == {"p": (3.0, 4.0), "k": (2,)}

    def test_quadrature(self):
        """Test the tolerance reaches the quadrature spec."""
        assert RunConfig(quad_tol=1e-8).quadrature().rel_tol == 1e-8


class TestValidate:
    """Test catalog and output checks."""

    def test_valid(self, tmp_path):
        """Test a valid configuration passes."""
        config = RunConfig(group="heisenberg", norm="koranyi", profile="bump:m=4,R=1",
                           out=str(tmp_path / "new" / "dir"))
        assert config.validate() is config

    @pytest.mark.parametrize("kwargs,match", [
        ({"inequality": "sobolev"}, "Unknown inequality"),
        ({"profile": "sinc:a=1"}, "Unknown profile family"),
        ({"case": "lp-hardy/none"}, "Unknown corpus case"),
        ({"space": "missing"}, "Unknown search space"),
    ])
    def test_unknown_ids(self, kwargs, match, tmp_path):
        """Test unknown ids become ConfigError."""
        with pytest.raises(ConfigError, match=match):
            RunConfig(out=str(tmp_path), **kwargs).validate()

    def test_unwritable_output(self, tmp_path):
        """Test an output path below a file is rejected."""
        blocker = tmp_path / "blocker"
        blocker.write_text("file")
        with pytest.raises(ConfigError, match="not writable"):
            RunConfig(out=str(blocker / "out")).validate()
