import os
import logging
import threading
from dataclasses import dataclass, field, asdict, replace, fields
from enum import Enum
from typing import Dict, Any, Optional, get_type_hints

import tomlkit
from tomlkit.exceptions import ParseError

# Use standard logging here to avoid circular imports
# (logging_config is configured from values held here)
logger = logging.getLogger(__name__)

CONFIG_ENV_VAR = "BRAIDJOHNSON_CONFIG"


class ConfigSection(Enum):
    GENERAL = "general"
    VERIFY = "verify"
    SEARCH = "search"


@dataclass
class GeneralConfig:
    log_level: str = "WARNING"


@dataclass
class VerifyConfig:
    seed: int = 20240901
    # random words per strand count for the τ₁θ = δ∘C check, pairs for the crossed-hom laws
    cases: int = 1000
    max_length: int = 50
    workers: int = 1


@dataclass
class SearchConfig:
    # 0 means "no limit"; the CLI rejects an explicit --limit 0
    limit: int = 1
    workers: int = 1
    canonical: bool = True


@dataclass
class AppConfig:
    general: GeneralConfig = field(default_factory=GeneralConfig)
    verify: VerifyConfig = field(default_factory=VerifyConfig)
    search: SearchConfig = field(default_factory=SearchConfig)

    def to_dict(self) -> Dict[str, Any]:
        return {f.name: asdict(getattr(self, f.name)) for f in fields(self)}

    @classmethod
    def from_dict(cls, config_dict: Dict[str, Any]) -> "AppConfig":
        for section in config_dict:
            if section not in {f.name for f in fields(cls)}:
                logger.warning(f"Unknown config section '{section}' will be ignored.")
        return cls(**{f.name: cls._create_section(f.name, config_dict) for f in fields(cls)})

    @staticmethod
    def _create_section(section: str, config_dict: Dict[str, Any]) -> Any:
        section_class = _SECTION_CLASSES.get(section)
        if section_class is None:
            raise ConfigError(f"Invalid configuration section: {section}")
        data = config_dict.get(section, {})
        valid_fields = get_type_hints(section_class)
        valid_data = {}
        for key, value in data.items():
            if key not in valid_fields:
                logger.warning(
                    f"Unknown field '{key}' in config section '{section}' will be ignored."
                )
                continue
            expected = valid_fields[key]
            if expected is int and (isinstance(value, bool) or not isinstance(value, int)):
                raise ConfigError(f"Field '{section}.{key}' must be an integer, got {value!r}")
            if expected is bool and not isinstance(value, bool):
                raise ConfigError(f"Field '{section}.{key}' must be a boolean, got {value!r}")
            valid_data[key] = value
        return section_class(**valid_data)


_SECTION_CLASSES = {
    ConfigSection.GENERAL.value: GeneralConfig,
    ConfigSection.VERIFY.value: VerifyConfig,
    ConfigSection.SEARCH.value: SearchConfig,
}


class ConfigError(Exception):
    pass


class Config:
    """
    Process-wide settings. Defaults come from the dataclasses above; a TOML file
    is only read when a path is given explicitly or via BRAIDJOHNSON_CONFIG.
    Nothing is ever written back.
    """
    _instance = None
    _lock = threading.Lock()

    def __new__(cls, *args, **kwargs):
        if cls._instance is None:
            with cls._lock:
                if cls._instance is None:
                    cls._instance = super().__new__(cls)
        return cls._instance

    def __init__(self, config_path: Optional[str] = None):
        with self._lock:
            if not hasattr(self, '_initialized'):
                self.config_path = config_path or os.getenv(CONFIG_ENV_VAR) or None
                try:
                    self._config = self._load_config()
                except ConfigError as e:
                    if config_path:
                        raise
                    # a bad BRAIDJOHNSON_CONFIG is reported again by the CLI
                    logger.warning(f"{e}; using default settings")
                    self._config = AppConfig()
                self._initialized = True

    def _load_config(self) -> AppConfig:
        if not self.config_path:
            return AppConfig()
        if not os.path.exists(self.config_path):
            raise ConfigError(f"Config file not found: {self.config_path}")
        with open(self.config_path, "r") as f:
            try:
                config_dict = tomlkit.parse(f.read()).unwrap()
            except ParseError as e:
                raise ConfigError(f"Invalid TOML in {self.config_path}: {e}") from e
        logger.debug(f"Loaded configuration from {self.config_path}")
        return AppConfig.from_dict(config_dict)

    def reload(self, config_path: Optional[str]) -> None:
        """Re-read settings from config_path (None restores the defaults)."""
        self.config_path = config_path
        self._config = self._load_config()

    def update_config(self, section: ConfigSection, updates: Dict[str, Any]) -> None:
        """Override fields of one section, skipping None values (unset CLI flags)."""
        section_config = getattr(self._config, section.value)
        updates = {k: v for k, v in updates.items() if v is not None}
        for field_name in updates:
            if not hasattr(section_config, field_name):
                raise ValueError(f"Unknown configuration field: {section.value}.{field_name}")
        setattr(self._config, section.value, replace(section_config, **updates))

    def to_toml(self) -> str:
        doc = tomlkit.document()
        for section, values in self._config.to_dict().items():
            table = tomlkit.table()
            for key, value in values.items():
                table.add(key, value)
            doc.add(section, table)
        return tomlkit.dumps(doc)

    @property
    def general(self) -> GeneralConfig:
        return self._config.general

    @property
    def verify(self) -> VerifyConfig:
        return self._config.verify

    @property
    def search(self) -> SearchConfig:
        return self._config.search


global_config = Config()
