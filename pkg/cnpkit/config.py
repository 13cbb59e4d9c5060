"""
cnpkit configuration

Defaults live on the dataclass; a YAML file (CNPKIT_CONFIG) and CNPKIT_*
environment variables override them, in that order.
"""

import os
import logging
from dataclasses import dataclass, fields, replace
from typing import Any, Dict, Optional

import yaml
from dotenv import load_dotenv

logger = logging.getLogger(__name__)

ENV_PREFIX = 'CNPKIT_'


@dataclass(frozen=True)
class CnpkitConfig:
    """Limits and logging settings shared by all solvers and oracles"""

    # Exhaustive search
    node_ceiling: int = 10 ** 7
    default_budget: int = 4

    # CNPC
    cnpc_size_guard: int = 10 ** 6
    oracle_size_guard: int = 8

    # Set cover oracles
    max_cover_sets: int = 24
    closure_guard: int = 10
    clique_guard: int = 10 ** 6

    # Logging
    log_level: str = 'WARNING'
    log_file: Optional[str] = None

    @classmethod
    def from_env(cls, base: Optional['CnpkitConfig'] = None) -> 'CnpkitConfig':
        """Load configuration from environment variables on top of `base`"""
        load_dotenv()
        base = base or cls()
        overrides: Dict[str, Any] = {}
        for f in fields(cls):
            raw = os.getenv(ENV_PREFIX + f.name.upper())
            if raw is None or raw == '':
                continue
            overrides[f.name] = _coerce(f.name, raw, getattr(base, f.name))
        return replace(base, **overrides)

    @classmethod
    def from_yaml(cls, path: str, base: Optional['CnpkitConfig'] = None) -> 'CnpkitConfig':
        """Load configuration from a YAML mapping of field names to values"""
        base = base or cls()
        with open(path, 'r') as f:
            data = yaml.safe_load(f) or {}
        if not isinstance(data, dict):
            raise ValueError(f"config file {path} must contain a mapping")

        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ValueError(f"unknown config keys in {path}: {', '.join(unknown)}")
        return replace(base, **data)


def _coerce(name: str, raw: str, current: Any) -> Any:
    if name == 'log_file':
        return raw
    if isinstance(current, int):
        try:
            return int(float(raw)) if 'e' in raw.lower() else int(raw)
        except ValueError:
            raise ValueError(f"{ENV_PREFIX}{name.upper()} must be an integer, got {raw!r}")
    return raw


def load_config() -> CnpkitConfig:
    """Defaults, then the YAML file named by CNPKIT_CONFIG, then environment variables"""
    load_dotenv()
    config = CnpkitConfig()
    path = os.getenv(ENV_PREFIX + 'CONFIG')
    if path:
        config = CnpkitConfig.from_yaml(path, base=config)
        logger.debug(f"Loaded configuration file {path}")
    return CnpkitConfig.from_env(base=config)
