"""
Logging Configuration Module for paracert

Configures Loguru sinks from the `logging` section of the YAML
configuration: a stderr sink for interactive runs and an optional
rotating file sink for long sweeps.

Configuration Options (from YAML):
    - format: Log message format string
    - level: Logging level (e.g., INFO, DEBUG, ERROR)
    - file: Log file name under logs/, or null for stderr only
    - rotation: Log file rotation strategy
    - retention: Log file retention period
"""

import sys
from pathlib import Path
from typing import Optional

import yaml
from loguru import logger

from exceptions import ConfigurationError

DEFAULT_FORMAT = "{time:YYYY-MM-DD HH:mm:ss} | {level: <8} | {name}:{function}:{line} - {message}"


def setup_logging(config_path: Optional[Path] = None, level: Optional[str] = None) -> None:
    """
    Configure logging for paracert.

    Args:
        config_path (Optional[Path], optional):
            Path to the configuration file.
            Defaults to 'config/config.yaml' in the project root.
        level (Optional[str], optional):
            Level overriding the configured one (the CLI's --verbose / --quiet).

    Raises:
        ConfigurationError: If the configuration file cannot be read
    """
    if config_path is None:
        config_path = Path(__file__).parent.parent / "config" / "config.yaml"

    try:
        with open(config_path) as f:
            config = (yaml.safe_load(f) or {}).get("logging", {})
    except (OSError, yaml.YAMLError) as e:
        raise ConfigurationError(f"Cannot read logging configuration from {config_path}") from e

    log_format = config.get("format", DEFAULT_FORMAT)
    log_level = level or config.get("level", "INFO")

    logger.remove()

    logger.add(
        sys.stderr,
        format=log_format,
        level=log_level,
        backtrace=True,
        diagnose=True,
    )

    if config.get("file"):
        log_path = Path(__file__).parent.parent / "logs" / config["file"]
        log_path.parent.mkdir(exist_ok=True)

        logger.add(
            str(log_path),
            rotation=config.get("rotation", "100 MB"),
            retention=config.get("retention", "30 days"),
            format=log_format,
            level=log_level,
            backtrace=True,
            diagnose=True,
        )

    logger.debug("Logging configured successfully")
