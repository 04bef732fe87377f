"""
recmon settings from config.properties.

A key missing from the file is looked up in the environment, then falls
back to its default.
"""
import os
from pathlib import Path
from typing import List, Optional

DEFAULT_FILE = Path(__file__).parent.parent / "config.properties"


class Config:
    """Key/value settings read once from a properties file."""

    def __init__(self, config_file: Optional[Path] = None):
        self.config_dict = {}
        self.config_file = config_file or DEFAULT_FILE
        self._load_config()

    def _load_config(self):
        if not self.config_file.exists():
            return

        with open(self.config_file, 'r') as f:
            for line in f:
                line = line.strip()
                if not line or line.startswith('#') or '=' not in line:
                    continue
                key, value = (part.strip() for part in line.split('=', 1))
                if len(value) >= 2 and value[0] == value[-1] and value[0] in ('"', "'"):
                    value = value[1:-1]
                self.config_dict[key] = value

    def get(self, key: str, default: Optional[str] = None) -> Optional[str]:
        return self.config_dict.get(key) or os.environ.get(key) or default

    def get_int(self, key: str, default: int = 0) -> int:
        """Integer value; an unparsable one counts as unset."""
        value = self.get(key)
        if value is None:
            return default
        try:
            return int(value)
        except ValueError:
            return default

    def get_list(self, key: str, default: Optional[List[str]] = None) -> List[str]:
        """Comma-separated value, blanks dropped."""
        value = self.get(key)
        if value is None:
            return list(default or [])
        return [item.strip() for item in value.split(',') if item.strip()]

    @property
    def alphabet(self) -> List[str]:
        return self.get_list("RECMON_ALPHABET", ["a", "b"])

    @property
    def log_level(self) -> str:
        return self.get("RECMON_LOG_LEVEL", "WARNING").upper()

    @property
    def tau_cap(self) -> int:
        return self.get_int("RECMON_TAU_CAP", 10000)

    @property
    def consistency_bound(self) -> int:
        return self.get_int("RECMON_CONSISTENCY_BOUND", 6)

    @property
    def tight_extension_bound(self) -> int:
        return self.get_int("RECMON_TIGHT_EXTENSION_BOUND", 4)

    @property
    def tight_horizon(self) -> int:
        return self.get_int("RECMON_TIGHT_HORIZON", 6)

    @property
    def workers(self) -> int:
        return max(1, self.get_int("RECMON_WORKERS", 1))

    @property
    def seed(self) -> int:
        return self.get_int("RECMON_SEED", 0)

    @property
    def random_instances(self) -> int:
        return self.get_int("RECMON_RANDOM_INSTANCES", 10000)


_config_instance: Optional[Config] = None


def get_config() -> Config:
    global _config_instance
    if _config_instance is None:
        _config_instance = Config()
    return _config_instance


def reset_config() -> None:
    """Forget the cached instance so the next get_config() reloads."""
    global _config_instance
    _config_instance = None
