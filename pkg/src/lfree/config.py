"""Configuration management for lfree."""

import logging
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import yaml

from lfree.errors import ConfigError

logger = logging.getLogger(__name__)

CAP_ENV = "LFREE_CAP_N"
WORKERS_ENV = "LFREE_WORKERS"


def _env_int(name: str) -> int | None:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return None
    try:
        value = int(raw)
    except ValueError as e:
        raise ConfigError(f"{name} must be an integer, got {raw!r}") from e
    if value < 1:
        raise ConfigError(f"{name} must be positive, got {value}")
    return value


def env_cap() -> int | None:
    """Cap override taken from the environment, if set."""
    return _env_int(CAP_ENV)


@dataclass
class OracleConfig:
    """Size limits and parallelism of the brute-force oracles."""

    cap_mu: int = 40
    cap_free: int = 34
    cap_maximal: int = 30
    cap_mu_star: int = 40
    workers: int = 1

    def cap_for(self, what: str) -> int:
        caps = {
            "mu": self.cap_mu,
            "free": self.cap_free,
            "maximal": self.cap_maximal,
            "mu_star": self.cap_mu_star,
        }
        if what not in caps:
            raise ConfigError(f"no oracle cap named {what!r}")
        return caps[what]


@dataclass
class OutputConfig:
    """How command results are rendered."""

    format: str = "json"
    indent: int = 2
    timing: bool = False


@dataclass
class ScanConfig:
    """Default parameter grid for ``lfree scan``."""

    p_max: int = 4
    q_max: int = 4
    r_max: int = 4
    n_list: list[int] = field(default_factory=lambda: [10, 15, 20])
    out: Path = field(default_factory=lambda: Path("scan.csv"))


@dataclass
class VerifyConfig:
    """Per-suite grid overrides for ``lfree verify``."""

    grids: dict[str, str] = field(default_factory=dict)


@dataclass
class LfreeConfig:
    """Main configuration for lfree."""

    oracle: OracleConfig = field(default_factory=OracleConfig)
    output: OutputConfig = field(default_factory=OutputConfig)
    scan: ScanConfig = field(default_factory=ScanConfig)
    verify: VerifyConfig = field(default_factory=VerifyConfig)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "LfreeConfig":
        """Create configuration from a dictionary."""
        if not isinstance(data, dict):
            raise ConfigError(f"configuration must be a mapping, got {type(data).__name__}")
        oracle_data = data.get("oracle", {}) or {}
        output_data = data.get("output", {}) or {}
        scan_data = data.get("scan", {}) or {}
        verify_data = data.get("verify", {}) or {}

        oracle_config = OracleConfig(
            cap_mu=oracle_data.get("cap_mu", 40),
            cap_free=oracle_data.get("cap_free", 34),
            cap_maximal=oracle_data.get("cap_maximal", 30),
            cap_mu_star=oracle_data.get("cap_mu_star", 40),
            workers=oracle_data.get("workers", 1),
        )

        output_config = OutputConfig(
            format=output_data.get("format", "json"),
            indent=output_data.get("indent", 2),
            timing=output_data.get("timing", False),
        )
        if output_config.format not in ("json", "csv"):
            raise ConfigError(f"output.format must be json or csv, got {output_config.format!r}")

        scan_config = ScanConfig(
            p_max=scan_data.get("p_max", 4),
            q_max=scan_data.get("q_max", 4),
            r_max=scan_data.get("r_max", 4),
            n_list=list(scan_data.get("n_list", [10, 15, 20])),
            out=Path(scan_data.get("out", "scan.csv")),
        )

        verify_config = VerifyConfig(grids=dict(verify_data.get("grids", {}) or {}))

        return cls(
            oracle=oracle_config,
            output=output_config,
            scan=scan_config,
            verify=verify_config,
        )

    @classmethod
    def from_yaml(cls, path: Path) -> "LfreeConfig":
        """Load configuration from a YAML file."""
        try:
            with open(path) as f:
                data = yaml.safe_load(f) or {}
        except yaml.YAMLError as e:
            raise ConfigError(f"cannot parse {path}: {e}") from e
        return cls.from_dict(data)

    @classmethod
    def load(cls, config_path: Path | None = None) -> "LfreeConfig":
        """Load configuration from file or defaults, then apply environment overrides."""
        config = None
        if config_path and config_path.exists():
            config = cls.from_yaml(config_path)
        else:
            default_paths = [
                Path("lfree.yaml"),
                Path("lfree.yml"),
                Path(".lfree.yaml"),
                Path(".lfree.yml"),
            ]
            for path in default_paths:
                if path.exists():
                    logger.debug(f"Using configuration {path}")
                    config = cls.from_yaml(path)
                    break

        if config is None:
            config = cls()
        config.apply_env()
        return config

    def apply_env(self) -> None:
        """Apply LFREE_CAP_N and LFREE_WORKERS."""
        cap = env_cap()
        if cap is not None:
            logger.debug(f"{CAP_ENV}={cap} overrides every oracle cap")
            self.oracle.cap_mu = cap
            self.oracle.cap_free = cap
            self.oracle.cap_maximal = cap
            self.oracle.cap_mu_star = cap
        workers = _env_int(WORKERS_ENV)
        if workers is not None:
            self.oracle.workers = workers

    def to_dict(self) -> dict[str, Any]:
        """Convert configuration to a dictionary."""
        return {
            "oracle": {
                "cap_mu": self.oracle.cap_mu,
                "cap_free": self.oracle.cap_free,
                "cap_maximal": self.oracle.cap_maximal,
                "cap_mu_star": self.oracle.cap_mu_star,
                "workers": self.oracle.workers,
            },
            "output": {
                "format": self.output.format,
                "indent": self.output.indent,
                "timing": self.output.timing,
            },
            "scan": {
                "p_max": self.scan.p_max,
                "q_max": self.scan.q_max,
                "r_max": self.scan.r_max,
                "n_list": list(self.scan.n_list),
                "out": str(self.scan.out),
            },
            "verify": {
                "grids": dict(self.verify.grids),
            },
        }

    def save(self, path: Path) -> None:
        """Save configuration to a YAML file."""
        with open(path, "w") as f:
            yaml.dump(self.to_dict(), f, default_flow_style=False, sort_keys=False)
