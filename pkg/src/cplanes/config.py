"""Configuration management for cplanes."""

import tomllib
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

DEFAULT_CONFIG_PATH = Path.home() / ".config" / "cplanes" / "config.toml"


@dataclass
class OracleConfig:
    """Settings of the brute-force and numeric oracles."""

    truncation: int = 32
    tolerance: float = 1e-9
    max_iterations: int = 20000
    # 0 picks one past both supports
    depth: int = 0
    # Allowed gap between the numeric oracle and the closed form
    agreement: float = 1e-6


@dataclass
class VerifyConfig:
    """Settings of the verification report."""

    sample_size: int = 16
    seed: int = 0
    timings: bool = False


@dataclass
class CorpusConfig:
    """Bounds of the exhaustive functional grid."""

    max_den: int = 8
    max_support: int = 4


@dataclass
class Config:
    """Main configuration for cplanes."""

    oracle: OracleConfig = field(default_factory=OracleConfig)
    verify: VerifyConfig = field(default_factory=VerifyConfig)
    corpus: CorpusConfig = field(default_factory=CorpusConfig)

    @classmethod
    def from_file(cls, config_path: Path | None = None) -> "Config":
        """Load configuration from TOML file.

        Args:
            config_path: Path to config file. If None, uses the default
                location, and a missing default file means defaults.

        Returns:
            Parsed configuration.

        Raises:
            FileNotFoundError: If an explicit config file doesn't exist.
            ValueError: If config is invalid.
        """
        if config_path is None:
            if not DEFAULT_CONFIG_PATH.exists():
                return cls()
            config_path = DEFAULT_CONFIG_PATH

        if not config_path.exists():
            raise FileNotFoundError(f"Configuration file not found: {config_path}")

        with open(config_path, "rb") as f:
            try:
                data = tomllib.load(f)
            except tomllib.TOMLDecodeError as e:
                raise ValueError(f"Invalid TOML in {config_path}: {e}") from e

        return cls.from_dict(data)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "Config":
        """Parse configuration from dictionary.

        Args:
            data: Configuration dictionary from TOML.

        Returns:
            Parsed configuration.

        Raises:
            ValueError: If configuration is invalid.
        """
        unknown = set(data) - {"oracle", "verify", "corpus"}
        if unknown:
            raise ValueError(f"Unknown section(s): {', '.join(sorted(unknown))}")

        oracle_data = _section(data, "oracle")
        oracle = OracleConfig(
            truncation=_positive_int(oracle_data, "oracle", "truncation", 32),
            tolerance=_positive_float(oracle_data, "oracle", "tolerance", 1e-9),
            max_iterations=_positive_int(
                oracle_data, "oracle", "max_iterations", 20000
            ),
            depth=_non_negative_int(oracle_data, "oracle", "depth", 0),
            agreement=_positive_float(oracle_data, "oracle", "agreement", 1e-6),
        )

        verify_data = _section(data, "verify")
        timings = verify_data.get("timings", False)
        if not isinstance(timings, bool):
            raise ValueError("Field 'timings' in [verify] must be a boolean")
        verify = VerifyConfig(
            sample_size=_positive_int(verify_data, "verify", "sample_size", 16),
            seed=_non_negative_int(verify_data, "verify", "seed", 0),
            timings=timings,
        )

        corpus_data = _section(data, "corpus")
        corpus = CorpusConfig(
            max_den=_positive_int(corpus_data, "corpus", "max_den", 8),
            max_support=_positive_int(corpus_data, "corpus", "max_support", 4),
        )

        return cls(oracle=oracle, verify=verify, corpus=corpus)


def _section(data: dict[str, Any], name: str) -> dict[str, Any]:
    section = data.get(name, {})
    if not isinstance(section, dict):
        raise ValueError(f"[{name}] must be a table")
    return section


def _int_field(section: dict[str, Any], name: str, key: str, default: int) -> int:
    value = section.get(key, default)
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValueError(f"Field '{key}' in [{name}] must be an integer")
    return value


def _positive_int(section: dict[str, Any], name: str, key: str, default: int) -> int:
    value = _int_field(section, name, key, default)
    if value < 1:
        raise ValueError(f"Field '{key}' in [{name}] must be positive, got {value}")
    return value


def _non_negative_int(
    section: dict[str, Any], name: str, key: str, default: int
) -> int:
    value = _int_field(section, name, key, default)
    if value < 0:
        raise ValueError(f"Field '{key}' in [{name}] must be >= 0, got {value}")
    return value


def _positive_float(
    section: dict[str, Any], name: str, key: str, default: float
) -> float:
    value = section.get(key, default)
    if isinstance(value, bool) or not isinstance(value, int | float) or value <= 0:
        raise ValueError(f"Field '{key}' in [{name}] must be a positive number")
    return float(value)
