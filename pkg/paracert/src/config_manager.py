"""
Configuration Management Module for paracert

Loads the YAML configuration that drives length searches, group
enumeration, sweeps, reports, metrics and logging, and resolves the
effective settings of a single command-line run.

Key Features:
- YAML-based configuration loading
- Section accessors with defaults for optional sections
- Environment override for the sweep thread count
- Run-level settings resolved from configuration plus CLI overrides
"""

import os
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Optional

import yaml
from loguru import logger

from exceptions import ConfigurationError

THREADS_ENV_VAR = "PARACERT_THREADS"

DEFAULT_CAP_FACTOR = 4
DEFAULT_BALL_RADIUS = 3
DEFAULT_GROUP_CAP = 2_000_000


class ConfigManager:
    """
    Configuration access for paracert.

    Attributes:
        config_path (Path): Path to the configuration YAML file
        config (Dict[str, Any]): Loaded configuration dictionary

    Raises:
        ConfigurationError: If the file is missing or not valid YAML
    """

    def __init__(self, config_path: Optional[Path] = None):
        """
        Initialize the configuration manager.

        Args:
            config_path (Optional[Path], optional):
                Custom path to the configuration file.
                Defaults to 'config/config.yaml' in the project root.
        """
        if config_path is None:
            config_path = Path(__file__).parent.parent / "config" / "config.yaml"

        self.config_path = Path(config_path)
        self.config: Dict[str, Any] = self._load_config()

    def _load_config(self) -> Dict[str, Any]:
        """
        Load and parse configuration from the YAML file.

        Returns:
            Dict[str, Any]: Parsed configuration dictionary

        Raises:
            ConfigurationError: If file reading or parsing fails
        """
        try:
            with open(self.config_path) as f:
                config = yaml.safe_load(f) or {}
            logger.debug(f"Configuration loaded successfully from {self.config_path}")
            return config
        except (OSError, yaml.YAMLError) as e:
            logger.error(f"Failed to load configuration: {str(e)}")
            raise ConfigurationError(f"Cannot load configuration from {self.config_path}") from e

    def get_lengths_config(self) -> Dict[str, Any]:
        """
        Retrieve length-search settings (cap factor and ball radii).

        Returns:
            Dict[str, Any]: Lengths configuration dictionary
        """
        return self.config.get("lengths", {})

    def get_groups_config(self) -> Dict[str, Any]:
        """Retrieve group enumeration settings."""
        return self.config.get("groups", {})

    def get_sweeps_config(self) -> Dict[str, Any]:
        """Retrieve sweep settings (threads, seed, progress bars)."""
        return self.config.get("sweeps", {})

    def get_reports_config(self) -> Dict[str, Any]:
        """Retrieve report output settings."""
        return self.config.get("reports", {})

    def get_metrics_config(self) -> Dict[str, Any]:
        """
        Retrieve metrics-related configuration settings.

        Returns:
            Dict[str, Any]: Metrics configuration dictionary, empty if absent
        """
        return self.config.get("metrics", {})

    def get_logging_config(self) -> Dict[str, Any]:
        """Retrieve logging settings."""
        return self.config.get("logging", {})

    def ball_radius_for(self, type_name: str) -> int:
        """
        Radius of the cached length ball for a root-system type.

        Args:
            type_name (str): Type name such as 'E8'

        Returns:
            int: The per-type override if present, else the global radius
        """
        lengths = self.get_lengths_config()
        overrides = lengths.get("ball_radius_overrides") or {}
        radius = overrides.get(type_name, lengths.get("ball_radius", DEFAULT_BALL_RADIUS))
        if not isinstance(radius, int) or radius < 1:
            raise ConfigurationError(f"ball radius for {type_name} must be a positive integer, got {radius!r}")
        return radius

    def update_config(self, new_config: Dict[str, Any]) -> None:
        """
        Shallow-merge new settings and persist them back to the YAML file.

        Args:
            new_config (Dict[str, Any]): Dictionary of configuration updates
        """
        self.config.update(new_config)
        try:
            with open(self.config_path, 'w') as f:
                yaml.dump(self.config, f, default_flow_style=False)
            logger.info("Configuration updated successfully")
        except OSError as e:
            logger.error(f"Failed to update configuration: {str(e)}")
            raise ConfigurationError(f"Cannot write configuration to {self.config_path}") from e


def resolve_threads(configured: Optional[int]) -> int:
    """
    Effective worker count for sweeps.

    The environment variable wins over the configured value; zero or a
    missing value means one worker per available core.
    """
    env_value = os.environ.get(THREADS_ENV_VAR)
    if env_value:
        try:
            configured = int(env_value)
        except ValueError as e:
            raise ConfigurationError(f"{THREADS_ENV_VAR} must be an integer, got {env_value!r}") from e
    if not configured or configured < 1:
        return os.cpu_count() or 1
    return configured


@dataclass(frozen=True)
class RunSettings:
    """Effective knobs of one run, after configuration and CLI overrides."""

    cap_factor: int = DEFAULT_CAP_FACTOR
    bfs_cap: Optional[int] = None
    group_cap: int = DEFAULT_GROUP_CAP
    threads: int = 1
    seed: int = 0
    ball_radius: int = DEFAULT_BALL_RADIUS
    progress: bool = False
    symdelta_samples: int = 200

    def length_cap(self, k: int, rank: int) -> int:
        """BFS cap for a (k, rank) pair: the explicit cap if given, else cap_factor·k·rank."""
        if self.bfs_cap is not None:
            return self.bfs_cap
        return self.cap_factor * k * rank

    @classmethod
    def from_config(
        cls,
        manager: ConfigManager,
        type_name: Optional[str] = None,
        bfs_cap: Optional[int] = None,
        group_cap: Optional[int] = None,
        threads: Optional[int] = None,
        seed: Optional[int] = None,
    ) -> "RunSettings":
        """
        Resolve run settings, letting explicit arguments override the file.

        Raises:
            ConfigurationError: For non-positive caps
        """
        lengths = manager.get_lengths_config()
        groups = manager.get_groups_config()
        sweeps = manager.get_sweeps_config()

        cap_factor = lengths.get("cap_factor", DEFAULT_CAP_FACTOR)
        resolved_group_cap = group_cap if group_cap is not None else groups.get("enumeration_cap", DEFAULT_GROUP_CAP)
        for name, value in (("cap_factor", cap_factor), ("bfs_cap", bfs_cap), ("group_cap", resolved_group_cap)):
            if value is not None and (not isinstance(value, int) or value < 1):
                raise ConfigurationError(f"{name} must be a positive integer, got {value!r}")

        radius = manager.ball_radius_for(type_name) if type_name else lengths.get("ball_radius", DEFAULT_BALL_RADIUS)
        return cls(
            cap_factor=cap_factor,
            bfs_cap=bfs_cap,
            group_cap=resolved_group_cap,
            threads=resolve_threads(threads if threads is not None else sweeps.get("threads")),
            seed=seed if seed is not None else sweeps.get("seed", 0),
            ball_radius=radius,
            progress=bool(sweeps.get("progress", False)),
            symdelta_samples=groups.get("symdelta_samples", 200),
        )
