"""Run configuration: defaults, key-value config files, flag overrides.

A config file holds ``key = value`` lines; ``#`` starts a comment.  The
path comes from ``--config`` or, failing that, the KAPPADOUBLE_CONFIG
environment variable.  Flags always win over the file.
"""

from __future__ import annotations

import configparser
import os
from dataclasses import dataclass, fields, replace

from ..kappa.presentations import ConventionProfile

ENV_VAR = "KAPPADOUBLE_CONFIG"


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    order: int = 6                       # truncation order N (lam^N kept)
    floor: int = 1                       # lowest lam power allowed is lam^-floor
    index_mode: str = "lowered"
    policy: str = "derive"
    kappa_hbar: tuple = (0.5, 1.0, 10.0)
    limit_kappa_hbar: float = 1e12
    n_levels: int = 40
    n_space: int = 1
    states: int = 100
    seed: int = 0
    dual_degree: int = 3
    output: str = ""                     # JSON report path, empty for stdout only
    csv: str = ""                        # uncertainty rows
    record_timing: bool = False          # duration_ms stays 0 unless set

    def __post_init__(self):
        validate(self)

    @property
    def profile(self):
        return ConventionProfile(self.index_mode, self.policy)


def validate(cfg):
    if cfg.order < 1:
        raise ConfigError("order must be >= 1")
    if cfg.floor < 0:
        raise ConfigError("floor must be >= 0")
    if cfg.index_mode not in ("lowered", "plain"):
        raise ConfigError("index_mode must be lowered or plain")
    if cfg.policy not in ("derive", "paper-literal"):
        raise ConfigError("policy must be derive or paper-literal")
    if not cfg.kappa_hbar or any(v <= 0 for v in cfg.kappa_hbar):
        raise ConfigError("kappa_hbar values must be positive")
    if cfg.limit_kappa_hbar <= 0:
        raise ConfigError("limit_kappa_hbar must be positive")
    if cfg.n_levels < 2:
        raise ConfigError("n_levels must be >= 2")
    if cfg.n_space not in (1, 2, 3):
        raise ConfigError("n_space must be 1, 2 or 3")
    if cfg.states < 1:
        raise ConfigError("states must be >= 1")
    if cfg.dual_degree < 1:
        raise ConfigError("dual_degree must be >= 1")


def _convert(name, raw):
    kind = {f.name: f.type for f in fields(RunConfig)}[name]
    try:
        if kind == "int":
            return int(raw)
        if kind == "float":
            return float(raw)
        if kind == "bool":
            low = str(raw).strip().lower()
            if low not in ("1", "0", "true", "false", "yes", "no", "on", "off"):
                raise ValueError(raw)
            return low in ("1", "true", "yes", "on")
        if kind == "tuple":
            if isinstance(raw, (list, tuple)):
                return tuple(float(v) for v in raw)
            return tuple(float(v) for v in raw.replace(",", " ").split())
        return str(raw)
    except ValueError:
        raise ConfigError("bad value for %s: %r" % (name, raw)) from None


def parse_config_text(text):
    cp = configparser.ConfigParser(inline_comment_prefixes=("#",))
    try:
        cp.read_string("[run]\n" + text)
    except configparser.Error as exc:
        raise ConfigError(str(exc)) from None
    known = {f.name for f in fields(RunConfig)}
    out = {}
    for key, raw in cp["run"].items():
        key = key.replace("-", "_")
        if key == "n":
            key = "order"
        if key not in known:
            raise ConfigError("unknown config key %r" % key)
        out[key] = _convert(key, raw)
    return out


def load_config(path=None, overrides=None, environ=None):
    """Defaults, then the config file, then ``overrides`` (None values ignored)."""
    environ = os.environ if environ is None else environ
    path = path or environ.get(ENV_VAR) or None
    values = {}
    if path:
        try:
            with open(path, encoding="utf-8") as fh:
                values.update(parse_config_text(fh.read()))
        except OSError as exc:
            raise ConfigError("cannot read config %s: %s" % (path, exc)) from None
    for key, val in (overrides or {}).items():
        if val is not None:
            values[key] = _convert(key, val)
    return replace(RunConfig(), **values)
