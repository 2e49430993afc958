"""Scenario configuration: a plain key = value text format.

Grammar: one ``key = value`` pair per line; blank lines and lines
starting with ``#`` are ignored; the wavenumber list is comma-separated.
``emit`` followed by ``parse`` reproduces the configuration exactly.
"""

from dataclasses import dataclass, field, fields, replace

import numpy as np

from .errors import ConfigError
from .potentials import DoubleDeltaBarrier, EckartBarrier
from .schedule import FFSchedule, PROFILES

MODELS = ("eckart", "double_delta")


@dataclass(frozen=True)
class ScenarioConfig:
    model: str = "eckart"
    l: float = 0.1
    a: float = 1.0
    h_min: float = 1.0
    h_max: float = 2.0
    k: tuple = (1.2,)
    vbar: float = 1.0
    t_ff: float = 10.0
    profile: str = "cosine"
    r0: float = 0.0
    x_min: float = -1.5
    x_max: float = 1.5
    nx: int = 3001
    nt: int = 100
    c: float = 0.0
    out: str = ""

    def barrier(self):
        if self.model == "eckart":
            return EckartBarrier(l=self.l)
        return DoubleDeltaBarrier(a=self.a, h_min=self.h_min, h_max=self.h_max)

    def schedule(self):
        return FFSchedule(vbar=self.vbar, t_ff=self.t_ff,
                          profile=self.profile, r0=self.r0)

    def grid(self):
        return np.linspace(self.x_min, self.x_max, self.nx)

    def refined(self):
        """Doubled resolutions for convergence studies."""
        return replace(self, nx=2 * (self.nx - 1) + 1, nt=2 * self.nt)


_INT_KEYS = {"nx", "nt"}
_FLOAT_KEYS = {"l", "a", "h_min", "h_max", "vbar", "t_ff", "r0",
               "x_min", "x_max", "c"}
_STR_KEYS = {"model", "profile", "out"}


def parse_config(text):
    """Parse the key = value grammar into a ScenarioConfig."""
    values = {}
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"line {ln}: expected 'key = value', got {raw!r}")
        key, _, val = line.partition("=")
        key = key.strip()
        val = val.strip()
        try:
            if key == "k":
                values[key] = tuple(float(p) for p in val.split(",") if p.strip())
            elif key in _INT_KEYS:
                values[key] = int(val)
            elif key in _FLOAT_KEYS:
                values[key] = float(val)
            elif key in _STR_KEYS:
                values[key] = val
            else:
                raise ConfigError(f"line {ln}: unknown key {key!r}")
        except ValueError as exc:
            raise ConfigError(f"line {ln}: bad value for {key!r}: {val!r}") from exc
    cfg = ScenarioConfig(**values)
    validate_config(cfg)
    return cfg


def emit_config(cfg: ScenarioConfig):
    """Canonical text form; parse(emit(cfg)) == cfg."""
    lines = []
    for f in fields(cfg):
        v = getattr(cfg, f.name)
        if f.name == "k":
            lines.append("k = " + ", ".join(repr(float(x)) for x in v))
        elif isinstance(v, str):
            lines.append(f"{f.name} = {v}")
        else:
            lines.append(f"{f.name} = {v!r}")
    return "\n".join(lines) + "\n"


def validate_config(cfg: ScenarioConfig):
    """Reject configurations that violate model or schedule constraints."""
    if cfg.model not in MODELS:
        raise ConfigError(f"model must be one of {MODELS}, got {cfg.model!r}")
    if cfg.profile not in PROFILES:
        raise ConfigError(f"profile must be one of {PROFILES}, got {cfg.profile!r}")
    if cfg.t_ff <= 0.0:
        raise ConfigError(f"t_ff must be positive, got {cfg.t_ff}")
    if cfg.vbar < 0.0:
        raise ConfigError(f"vbar must be >= 0, got {cfg.vbar}")
    if cfg.nx < 101:
        raise ConfigError(f"nx must be at least 101, got {cfg.nx}")
    if cfg.nt < 2:
        raise ConfigError(f"nt must be at least 2, got {cfg.nt}")
    if not cfg.k:
        raise ConfigError("at least one wavenumber k is required")
    model = cfg.barrier()
    geom = model.geometry()
    for k in cfg.k:
        if k <= geom.k_threshold:
            raise ConfigError(
                f"k = {k} does not propagate: threshold is {geom.k_threshold} "
                f"for model {cfg.model!r}")
    r_final = cfg.r0 + cfg.vbar * cfg.t_ff
    for r, tag in ((cfg.r0, "r0"), (r_final, "r0 + vbar*t_ff")):
        if not (model.r_min <= r <= model.r_max):
            raise ConfigError(
                f"{tag} = {r} outside the admitted range "
                f"[{model.r_min}, {model.r_max}] of model {cfg.model!r}")
    if not (cfg.x_min < geom.x1 and geom.x2 < cfg.x_max):
        raise ConfigError(
            f"grid [{cfg.x_min}, {cfg.x_max}] must strictly contain the "
            f"saturation interval [{geom.x1}, {geom.x2}]")
    if not (cfg.x_min <= cfg.c <= cfg.x_max):
        raise ConfigError(f"base point c = {cfg.c} outside the grid")
    return cfg
