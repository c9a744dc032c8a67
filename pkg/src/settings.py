"""
Configuration loading.

Values are layered, later layers winning: model defaults, the YAML config file,
``SYMAVOID_<FIELD>`` environment variables (a ``.env`` file is loaded first) and
finally explicit CLI flags.
"""

import logging
import os
from pathlib import Path
from typing import Any, Dict, Mapping, Optional

import yaml
from dotenv import load_dotenv

from src.models.config_schema import RunConfig

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = Path("config/verify_config.yaml")
ENV_PREFIX = "SYMAVOID_"


def read_yaml_config(path: Path) -> Dict[str, Any]:
    """Flatten the ``run:`` section (and ``logging.level``) of a YAML config file."""
    with open(path, encoding="utf-8") as f:
        raw = yaml.safe_load(f) or {}
    if not isinstance(raw, dict):
        raise ValueError(f"{path}: expected a mapping at the top level")
    values = dict(raw.get("run") or {})
    level = (raw.get("logging") or {}).get("level")
    if level is not None:
        values.setdefault("log_level", level)
    return values


def read_section(config_path: Optional[Path], name: str) -> Dict[str, Any]:
    """Another top-level section of the config file, e.g. ``census``; empty when absent."""
    path = Path(config_path) if config_path else DEFAULT_CONFIG_PATH
    if not path.exists():
        return {}
    with open(path, encoding="utf-8") as f:
        raw = yaml.safe_load(f) or {}
    return dict(raw.get(name) or {}) if isinstance(raw, dict) else {}


def read_environment(environ: Optional[Mapping[str, str]] = None) -> Dict[str, str]:
    environ = os.environ if environ is None else environ
    fields = RunConfig.model_fields
    values = {}
    for key, value in environ.items():
        if key.startswith(ENV_PREFIX):
            name = key[len(ENV_PREFIX):].lower()
            if name in fields:
                values[name] = value
    return values


def load_config(
    config_path: Optional[Path] = None,
    overrides: Optional[Mapping[str, Any]] = None,
    environ: Optional[Mapping[str, str]] = None,
    load_env_file: bool = True,
) -> RunConfig:
    """
    Build the run configuration.

    Args:
        config_path: YAML file; defaults to config/verify_config.yaml when it exists
        overrides: Values given on the command line (None entries are ignored)
        environ: Environment to read instead of os.environ
        load_env_file: Whether to load a .env file into the environment first

    Returns:
        Validated RunConfig
    """
    if load_env_file and environ is None:
        load_dotenv()

    values: Dict[str, Any] = {}
    path = Path(config_path) if config_path else DEFAULT_CONFIG_PATH
    if path.exists():
        values.update(read_yaml_config(path))
        logger.debug("Loaded config file %s", path)
    elif config_path:
        raise FileNotFoundError(f"config file not found: {path}")

    values.update(read_environment(environ))
    values.update({k: v for k, v in (overrides or {}).items() if v is not None})
    return RunConfig.model_validate(values)
