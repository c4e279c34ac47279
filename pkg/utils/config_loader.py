"""
JSON configuration loading.
"""
import json
import logging
from pathlib import Path
from typing import Any, Dict, Union

from utils.error_handler import ConfigError

logger = logging.getLogger(__name__)


class ConfigLoader:
    """Loads a JSON configuration document from disk."""

    def __init__(self, config_path: Union[str, Path]):
        """
        Initialize the loader.

        Args:
            config_path: Path to the JSON configuration file
        """
        self.config_path = Path(config_path)

    def load(self) -> Dict[str, Any]:
        """
        Load the configuration.

        Returns:
            Dict[str, Any]: Parsed configuration

        Raises:
            OSError: If the file cannot be read
            ConfigError: If the file is not a JSON object
        """
        try:
            with open(self.config_path, "r", encoding="utf-8") as f:
                config = json.load(f)
        except json.JSONDecodeError as e:
            logger.error(f"Error parsing config {self.config_path}: {str(e)}")
            raise ConfigError(f"{self.config_path}: invalid JSON ({e.msg})") from e

        if not isinstance(config, dict):
            raise ConfigError(f"{self.config_path}: top level must be a JSON object")

        logger.debug(f"Loaded config {self.config_path} with keys {sorted(config)}")
        return config
