"""
Configuration management for convertible-codes.
"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional

from rich.console import Console

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib


@dataclass
class FieldConfig:
    """Configuration for finite field selection."""
    max_order: int = 1 << 16


@dataclass
class LimitsConfig:
    """Caps on exhaustive (brute-force) checks."""
    superregular_max_side: int = 8
    superregular_max_cells: int = 200
    mds_max_subsets: int = 10**6
    vector_decode_max_length: int = 12


@dataclass
class VerifyConfig:
    """Configuration for randomized verification runs."""
    trials: int = 100
    seed: int = 0
    show_progress: bool = True
    verbose_errors: bool = False  # Print the exception behind each failed check


@dataclass
class ConstructConfig:
    """Overrides for the canonical evaluation-set choices of the builders."""
    x1: Optional[List[int]] = None
    b_initial: Optional[List[int]] = None


@dataclass
class Config:
    """Main configuration container."""
    gf: FieldConfig = field(default_factory=FieldConfig)
    limits: LimitsConfig = field(default_factory=LimitsConfig)
    verify: VerifyConfig = field(default_factory=VerifyConfig)
    construct: ConstructConfig = field(default_factory=ConstructConfig)


CONFIG_PATHS = [
    Path.home() / ".convertible-codes.toml",
    Path.cwd() / ".convertible-codes.toml",
    Path.cwd() / "convertible-codes.toml",
]


def _section(cls: Any, data: Dict[str, Any]) -> Any:
    defaults = cls()
    known = {name: data.get(name, getattr(defaults, name)) for name in defaults.__dataclass_fields__}
    return cls(**known)


def config_from_dict(data: Dict[str, Any]) -> Config:
    """Build a Config from parsed TOML data; unknown keys are ignored."""
    return Config(
        gf=_section(FieldConfig, data.get("gf", {})),
        limits=_section(LimitsConfig, data.get("limits", {})),
        verify=_section(VerifyConfig, data.get("verify", {})),
        construct=_section(ConstructConfig, data.get("construct", {})),
    )


def load_config(paths: Optional[List[Path]] = None) -> Config:
    """Load configuration from the first available file or use defaults."""
    config_data: Dict[str, Any] = {}

    for config_path in paths if paths is not None else CONFIG_PATHS:
        if config_path.exists():
            try:
                with open(config_path, "rb") as f:
                    config_data = tomllib.load(f)
                break
            except Exception as e:
                Console(stderr=True).print(
                    f"[yellow]Warning: Failed to load config from {config_path}: {e}[/yellow]"
                )

    return config_from_dict(config_data)
