import json
import logging
from pathlib import Path
from typing import Any, Dict, Optional

import yaml

logger = logging.getLogger(__name__)


class ConfigManager:
    """Process-wide view of the JSON and YAML files under config/.

    Each file is stored under its stem, so `profiles.yaml` is reachable as
    `get("profiles.practical.gamma")`.
    """

    _instance = None

    def __new__(cls, config_dir: Optional[Path] = None):
        if cls._instance is None:
            cls._instance = super(ConfigManager, cls).__new__(cls)
            cls._instance.initialized = False
        return cls._instance

    def __init__(self, config_dir: Optional[Path] = None):
        if self.initialized:
            return

        self.project_root = Path(__file__).parent.parent.parent
        self.config_dir = config_dir or self.project_root / "config"
        self.config_data: Dict[str, Any] = {}
        self.initialized = True
        self.load_configs()

    @classmethod
    def reset(cls) -> None:
        """Forget the singleton so the next instantiation reloads from disk."""
        cls._instance = None

    def load_configs(self):
        """Load all configuration files from the config directory."""
        if not self.config_dir.exists():
            logger.warning(f"Config directory not found: {self.config_dir}")
            return

        for config_file in sorted(self.config_dir.iterdir()):
            if config_file.suffix not in (".json", ".yaml", ".yml"):
                continue
            try:
                with open(config_file, 'r') as f:
                    if config_file.suffix == ".json":
                        self.config_data[config_file.stem] = json.load(f)
                    else:
                        self.config_data[config_file.stem] = yaml.safe_load(f) or {}
                logger.debug(f"Loaded config: {config_file.name}")
            except (OSError, ValueError, yaml.YAMLError) as e:
                logger.error(f"Failed to load config {config_file.name}: {e}")

    def get(self, key: str, default: Any = None) -> Any:
        """Get a configuration value using dot notation (e.g., 'profiles.practical.gamma')."""
        keys = key.split('.')
        value = self.config_data

        for k in keys:
            if isinstance(value, dict) and k in value:
                value = value[k]
            else:
                return default
        return value if value is not None else default

    @property
    def practical_gamma(self) -> float:
        """γ used by the Practical constants profile."""
        return float(self.get("profiles.practical.gamma", 8.0))
