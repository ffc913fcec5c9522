"""Configuration management for deepr."""
import logging
import os
from pathlib import Path
from typing import Any, Dict, Optional

import yaml


logger = logging.getLogger(__name__)

DEFAULTS: Dict[str, Any] = {
    'digits': 7,
    'width': 80,
    'recursion_limit': 5000,
    'warn_partial_match_args': False,
    'history_file': '~/.deepr/history',
    'log_level': 'WARNING',
}

LOG_LEVELS = ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL')

# inclusive bounds, also enforced by options() and the harness pragmas
OPTION_RANGES = {'digits': (1, 17), 'width': (20, 10000)}


class ConfigError(ValueError):
    """An unknown key or a value of the wrong kind."""


def get_config_dir() -> Path:
    """Get the deepr configuration directory."""
    config_dir = Path.home() / '.deepr'
    config_dir.mkdir(exist_ok=True)
    return config_dir


def config_path(path: Optional[str] = None) -> Path:
    """The file to read: an explicit path, then ``DEEPR_CONFIG``, then the default."""
    if path:
        return Path(path).expanduser()
    env = os.environ.get('DEEPR_CONFIG')
    if env:
        return Path(env).expanduser()
    return get_config_dir() / 'config.yml'


def load_config(path: Optional[str] = None) -> dict:
    """Load the configuration, filling missing keys with defaults."""
    target = config_path(path)
    config = dict(DEFAULTS)
    if target.exists():
        try:
            with open(target, 'r', encoding='utf-8') as f:
                loaded = yaml.safe_load(f) or {}
        except yaml.YAMLError as exc:
            raise ConfigError(f"{target}: {exc}") from exc
        if not isinstance(loaded, dict):
            raise ConfigError(f"{target}: expected a mapping at the top level")
        for key, value in loaded.items():
            if key not in DEFAULTS:
                logger.warning("ignoring unknown configuration key %r in %s", key, target)
                continue
            config[key] = coerce_value(key, value)
    return config


def save_config(config: dict, path: Optional[str] = None) -> Path:
    """Save the configuration; only keys that differ from the defaults are written."""
    target = config_path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    changed = {k: v for k, v in config.items() if k in DEFAULTS and DEFAULTS[k] != v}
    with open(target, 'w', encoding='utf-8') as f:
        yaml.dump(changed, f, default_flow_style=False)
    return target


def coerce_value(key: str, value: Any) -> Any:
    """Convert ``value`` (possibly a command-line string) to the type ``key`` holds."""
    if key not in DEFAULTS:
        raise ConfigError(f"unknown configuration key '{key}'")
    default = DEFAULTS[key]
    if isinstance(default, bool):
        if isinstance(value, bool):
            return value
        text = str(value).strip().lower()
        if text in ('true', 'yes', 'on', '1'):
            return True
        if text in ('false', 'no', 'off', '0'):
            return False
        raise ConfigError(f"'{key}' expects true or false, got '{value}'")
    if isinstance(default, int):
        try:
            number = int(value)
        except (TypeError, ValueError):
            raise ConfigError(f"'{key}' expects an integer, got '{value}'") from None
        if number <= 0:
            raise ConfigError(f"'{key}' must be positive")
        if key in OPTION_RANGES:
            low, high = OPTION_RANGES[key]
            if not low <= number <= high:
                raise ConfigError(f"'{key}' must be between {low} and {high}")
        return number
    if key == 'log_level':
        level = str(value).upper()
        if level not in LOG_LEVELS:
            raise ConfigError(f"'log_level' must be one of {', '.join(LOG_LEVELS)}")
        return level
    return str(value)


def history_path(config: dict) -> Path:
    return Path(str(config.get('history_file', DEFAULTS['history_file']))).expanduser()
