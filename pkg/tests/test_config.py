"""Tests for configuration management."""

import os
import tempfile
from pathlib import Path

import pytest
import yaml

from lfree.config import LfreeConfig, OracleConfig, OutputConfig, ScanConfig
from lfree.errors import ConfigError


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    monkeypatch.delenv("LFREE_CAP_N", raising=False)
    monkeypatch.delenv("LFREE_WORKERS", raising=False)


def test_default_oracle_config():
    """Test OracleConfig defaults."""
    cfg = OracleConfig()
    assert cfg.cap_mu == 40
    assert cfg.cap_free == 34
    assert cfg.cap_maximal == 30
    assert cfg.cap_mu_star == 40
    assert cfg.workers == 1


def test_cap_for():
    """Test cap lookup by oracle name."""
    cfg = OracleConfig(cap_maximal=12)
    assert cfg.cap_for("maximal") == 12
    assert cfg.cap_for("mu") == 40
    with pytest.raises(ConfigError):
        cfg.cap_for("everything")


def test_default_output_and_scan_config():
    """Test OutputConfig and ScanConfig defaults."""
    assert OutputConfig().format == "json"
    assert OutputConfig().timing is False
    scan = ScanConfig()
    assert scan.n_list == [10, 15, 20]
    assert scan.out == Path("scan.csv")


def test_from_dict_empty():
    """Test creating config from empty dict returns defaults."""
    cfg = LfreeConfig.from_dict({})
    assert cfg.oracle.cap_mu == 40
    assert cfg.output.indent == 2
    assert cfg.verify.grids == {}


def test_from_dict_full():
    """Test creating config from a full dict."""
    data = {
        "oracle": {
            "cap_mu": 20,
            "cap_free": 18,
            "cap_maximal": 16,
            "cap_mu_star": 22,
            "workers": 4,
        },
        "output": {"format": "csv", "indent": 4, "timing": True},
        "scan": {"p_max": 3, "q_max": 2, "r_max": 1, "n_list": [8, 12], "out": "grid.csv"},
        "verify": {"grids": {"mu4": "p=1,q=1,r=1,n=1..5"}},
    }
    cfg = LfreeConfig.from_dict(data)

    assert cfg.oracle.cap_mu == 20
    assert cfg.oracle.cap_mu_star == 22
    assert cfg.oracle.workers == 4
    assert cfg.output.format == "csv"
    assert cfg.output.timing is True
    assert cfg.scan.n_list == [8, 12]
    assert cfg.scan.out == Path("grid.csv")
    assert cfg.verify.grids["mu4"] == "p=1,q=1,r=1,n=1..5"


def test_from_dict_partial():
    """Test creating config from a partial dict uses defaults for missing keys."""
    cfg = LfreeConfig.from_dict({"oracle": {"cap_mu": 25}})
    assert cfg.oracle.cap_mu == 25
    assert cfg.oracle.cap_free == 34  # default


def test_from_dict_rejects_bad_format():
    """Test that an unknown output format is refused."""
    with pytest.raises(ConfigError):
        LfreeConfig.from_dict({"output": {"format": "xml"}})


def test_from_dict_rejects_non_mapping():
    """Test that a YAML list is not a configuration."""
    with pytest.raises(ConfigError):
        LfreeConfig.from_dict(["oracle"])


def test_to_dict_roundtrip():
    """Test that to_dict produces data that from_dict can reconstruct."""
    original = LfreeConfig()
    original.verify.grids["gm1"] = "p=1..3,q=1..p,r=1..q,M=1..30"
    restored = LfreeConfig.from_dict(original.to_dict())

    assert restored.oracle == original.oracle
    assert restored.output == original.output
    assert restored.scan == original.scan
    assert restored.verify.grids == original.verify.grids


def test_from_yaml_empty_file():
    """Test loading config from an empty YAML file returns defaults."""
    with tempfile.NamedTemporaryFile(mode="w", suffix=".yaml", delete=False) as f:
        f.write("")
        f.flush()
        cfg = LfreeConfig.from_yaml(Path(f.name))

    assert cfg.oracle.cap_mu == 40


def test_from_yaml_invalid():
    """Test that unparseable YAML raises ConfigError."""
    with tempfile.NamedTemporaryFile(mode="w", suffix=".yaml", delete=False) as f:
        f.write("oracle: [unclosed\n")
        f.flush()
        with pytest.raises(ConfigError):
            LfreeConfig.from_yaml(Path(f.name))


def test_save_and_load():
    """Test saving config to YAML and loading it back."""
    with tempfile.TemporaryDirectory() as tmpdir:
        path = Path(tmpdir) / "lfree.yaml"

        original = LfreeConfig()
        original.oracle.cap_maximal = 18
        original.scan.n_list = [6, 9]
        original.save(path)

        assert path.exists()

        loaded = LfreeConfig.load(path)
        assert loaded.oracle.cap_maximal == 18
        assert loaded.scan.n_list == [6, 9]


def test_load_returns_defaults_when_no_file():
    """Test load() returns defaults when no config file is found."""
    with tempfile.TemporaryDirectory() as tmpdir:
        orig_cwd = os.getcwd()
        os.chdir(tmpdir)
        try:
            cfg = LfreeConfig.load(Path("/nonexistent/lfree.yaml"))
        finally:
            os.chdir(orig_cwd)
    assert cfg.oracle.cap_mu == 40


def test_load_finds_default_paths():
    """Test load() finds config files at default paths."""
    with tempfile.TemporaryDirectory() as tmpdir:
        orig_cwd = os.getcwd()
        os.chdir(tmpdir)
        try:
            with open(Path(tmpdir) / ".lfree.yml", "w") as f:
                yaml.dump({"oracle": {"cap_free": 11}}, f)

            cfg = LfreeConfig.load()
            assert cfg.oracle.cap_free == 11
        finally:
            os.chdir(orig_cwd)


class TestEnvironment:
    def test_cap_override(self, monkeypatch):
        monkeypatch.setenv("LFREE_CAP_N", "12")
        cfg = LfreeConfig.from_dict({})
        cfg.apply_env()
        assert cfg.oracle.cap_mu == 12
        assert cfg.oracle.cap_maximal == 12

    def test_workers_override(self, monkeypatch):
        monkeypatch.setenv("LFREE_WORKERS", "3")
        cfg = LfreeConfig()
        cfg.apply_env()
        assert cfg.oracle.workers == 3

    @pytest.mark.parametrize("value", ["many", "0", "-2"])
    def test_invalid_value(self, monkeypatch, value):
        monkeypatch.setenv("LFREE_CAP_N", value)
        with pytest.raises(ConfigError):
            LfreeConfig().apply_env()
