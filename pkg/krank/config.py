"""
Configuration management.

Handles loading, validating, and discovering krank settings.

Configuration Search Order (lowest to highest priority):
1. ~/.krank/krank-config.json      (Global defaults)
2. ./.krank/krank-config.json      (Project-specific)
3. ./krank-config.json             (Current directory)
4. KRANK_CONFIG environment variable
5. --config CLI argument           (Explicit override)

Example file:

    {
      "table": {"maxN": 2000000, "cache": "~/.krank/ptab-100000.bin"},
      "enumeration": {"maxN": 45},
      "shift": {"maxMultiple": 10},
      "threads": 4,
      "verify": {"maxN": 100000, "quickMaxN": 10000,
                 "thresholds": {"stability": 0.10}}
    }
"""

import json
import logging
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from .asymptotics import DEFAULT_SHIFT_MULTIPLE
from .engine import DEFAULT_ENUMERATION_BUDGET, DEFAULT_TABLE_BUDGET

logger = logging.getLogger("krank.config")

CONFIG_FILENAME = "krank-config.json"
CONFIG_DIRNAME = ".krank"
ENV_CONFIG = "KRANK_CONFIG"

# Tolerances of the acceptance suite
DEFAULT_THRESHOLDS: Dict[str, float] = {
    "stability": 0.10,
    "breakdown_ceiling": 0.95,
    "corollary_low": 0.8,
    "corollary_high": 1.2,
    "lemma_growth": 0.01,
}


class ConfigError(Exception):
    """Raised when configuration is invalid."""

    pass


@dataclass(frozen=True)
class Settings:
    """Effective settings after defaults and the config file are merged."""

    table_budget: int = DEFAULT_TABLE_BUDGET
    table_cache: Optional[str] = None
    enumeration_budget: int = DEFAULT_ENUMERATION_BUDGET
    shift_multiple: float = DEFAULT_SHIFT_MULTIPLE
    threads: Optional[int] = None
    verify_max_n: int = 100_000
    verify_quick_max_n: int = 10_000
    verify_thresholds: Dict[str, float] = field(
        default_factory=lambda: dict(DEFAULT_THRESHOLDS)
    )


def _candidate_paths(explicit_path: Optional[str]) -> List[Tuple[str, Path]]:
    """Labelled config locations, highest priority first."""
    if explicit_path:
        # an explicit path is the only candidate
        return [("explicit path", Path(explicit_path).expanduser())]
    candidates = []
    env_path = os.environ.get(ENV_CONFIG)
    if env_path:
        candidates.append((ENV_CONFIG, Path(env_path).expanduser()))
    candidates += [
        ("current directory", Path.cwd() / CONFIG_FILENAME),
        ("project-specific", Path.cwd() / CONFIG_DIRNAME / CONFIG_FILENAME),
        ("global defaults", Path.home() / CONFIG_DIRNAME / CONFIG_FILENAME),
    ]
    return candidates


def find_config_file(
    explicit_path: Optional[str] = None, verbose: bool = False
) -> Tuple[Optional[Path], List[str]]:
    """
    Find the first existing krank-config.json in precedence order.

    Returns:
        (path or None, [CONFIG] trace lines; empty unless verbose)
    """
    trace = []
    for label, candidate in _candidate_paths(explicit_path):
        if verbose:
            trace.append(f"[CONFIG] Checking {label}: {candidate}")
        if candidate.exists():
            if verbose:
                trace.append(f"[CONFIG] ✓ Found ({label}): {candidate}")
            return candidate, trace
        if verbose:
            trace.append(f"[CONFIG] ✗ Not found: {candidate}")

    if verbose:
        trace.append("[CONFIG] ✗ No configuration file found")
    return None, trace


def load_config(config_path: str) -> Dict[str, Any]:
    """
    Read a config file as a JSON object.

    Raises:
        ConfigError: If the file is missing, unreadable or not a JSON object
    """
    path = Path(config_path).expanduser()
    if not path.exists():
        raise ConfigError(f"Configuration file not found: {config_path}")
    try:
        config = json.loads(path.read_text())
    except json.JSONDecodeError as e:
        raise ConfigError(f"Invalid JSON in {config_path}: {e}")
    except OSError as e:
        raise ConfigError(f"Error reading {config_path}: {e}")
    if not isinstance(config, dict):
        raise ConfigError(f"Top level of {config_path} must be an object")
    return config


def _is_int(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def _is_number(value: Any) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def validate_config(config: Dict[str, Any]) -> List[str]:
    """
    Validate configuration structure.

    Returns:
        List of error messages (empty if valid)
    """
    errors = []

    for section in ("table", "enumeration", "shift", "verify"):
        if section in config and not isinstance(config[section], dict):
            errors.append(f"'{section}' section must be a dictionary")

    table = config.get("table", {})
    if isinstance(table, dict):
        if "maxN" in table and not (_is_int(table["maxN"]) and table["maxN"] >= 0):
            errors.append("'table.maxN' must be a non-negative integer")
        if "cache" in table and not isinstance(table["cache"], str):
            errors.append("'table.cache' must be a string")

    enumeration = config.get("enumeration", {})
    if isinstance(enumeration, dict) and "maxN" in enumeration:
        if not (_is_int(enumeration["maxN"]) and enumeration["maxN"] >= 0):
            errors.append("'enumeration.maxN' must be a non-negative integer")

    shift = config.get("shift", {})
    if isinstance(shift, dict) and "maxMultiple" in shift:
        if not (_is_number(shift["maxMultiple"]) and shift["maxMultiple"] > 0):
            errors.append("'shift.maxMultiple' must be a positive number")

    if "threads" in config and config["threads"] is not None:
        if not (_is_int(config["threads"]) and config["threads"] >= 1):
            errors.append("'threads' must be a positive integer or null")

    verify = config.get("verify", {})
    if isinstance(verify, dict):
        for key in ("maxN", "quickMaxN"):
            if key in verify and not (_is_int(verify[key]) and verify[key] >= 1):
                errors.append(f"'verify.{key}' must be a positive integer")
        thresholds = verify.get("thresholds", {})
        if not isinstance(thresholds, dict):
            errors.append("'verify.thresholds' must be a dictionary")
        else:
            for name, value in thresholds.items():
                if name not in DEFAULT_THRESHOLDS:
                    errors.append(
                        f"'verify.thresholds.{name}' is unknown; expected one of: "
                        f"{', '.join(sorted(DEFAULT_THRESHOLDS))}"
                    )
                elif not _is_number(value):
                    errors.append(f"'verify.thresholds.{name}' must be a number")

    return errors


def settings_from_config(config: Dict[str, Any]) -> Settings:
    """Merge a validated configuration dictionary over the defaults."""
    table = config.get("table", {})
    enumeration = config.get("enumeration", {})
    shift = config.get("shift", {})
    verify = config.get("verify", {})
    thresholds = dict(DEFAULT_THRESHOLDS)
    thresholds.update(verify.get("thresholds", {}))
    defaults = Settings()
    return Settings(
        table_budget=table.get("maxN", defaults.table_budget),
        table_cache=table.get("cache", defaults.table_cache),
        enumeration_budget=enumeration.get("maxN", defaults.enumeration_budget),
        shift_multiple=float(shift.get("maxMultiple", defaults.shift_multiple)),
        threads=config.get("threads", defaults.threads),
        verify_max_n=verify.get("maxN", defaults.verify_max_n),
        verify_quick_max_n=verify.get("quickMaxN", defaults.verify_quick_max_n),
        verify_thresholds=thresholds,
    )


def load_settings(explicit_path: Optional[str] = None, verbose: bool = False) -> Settings:
    """
    Discover, load and validate configuration, falling back to defaults.

    An explicit path that cannot be loaded is an error; an auto-discovered
    file that is invalid is logged and ignored.

    Raises:
        ConfigError: If explicit_path is given but missing or invalid
    """
    path, trace = find_config_file(explicit_path, verbose=verbose)
    for msg in trace:
        logger.info(msg)

    if path is None:
        if explicit_path:
            raise ConfigError(f"Configuration file not found: {explicit_path}")
        return Settings()

    try:
        config = load_config(str(path))
    except ConfigError:
        if explicit_path:
            raise
        logger.warning(f"Could not load configuration {path}, using defaults")
        return Settings()

    errors = validate_config(config)
    if errors:
        if explicit_path:
            raise ConfigError(
                f"Configuration {path} is invalid: " + "; ".join(errors)
            )
        logger.warning(f"Configuration {path} is invalid, ignoring: {errors}")
        return Settings()

    return settings_from_config(config)
