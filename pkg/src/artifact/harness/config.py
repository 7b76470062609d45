"""Flat ``key = value`` experiment configuration."""

from __future__ import annotations

from dataclasses import dataclass, fields
from pathlib import Path


class ConfigError(ValueError):
    pass


def _floats(text: str) -> tuple[float, ...]:
    return tuple(float(v) for v in text.split(",") if v.strip())


def _bool(text: str) -> bool:
    low = text.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"not a boolean: {text!r}")


@dataclass(frozen=True)
class ExperimentConfig:
    suite: str = "ep"
    grid_n: int = 512
    domain_length: float = 6.283185307179586
    time_dt: float = 0.0  # 0 selects the CFL step
    time_tmax: float = 0.5
    time_samples: int = 11
    physics_c: float = 20.0
    physics_c_list: tuple[float, ...] = (10.0, 20.0, 40.0, 80.0)
    physics_eps_list: tuple[float, ...] = ()
    physics_entropy: float = 2.0
    init_n_bar: float = 1.0
    init_dn: float = 0.2
    init_du: float = 0.3
    init_dn1: float = 0.5
    init_du1: float = 0.5
    init_first_order: bool = True
    tol_slope: float = 0.2
    output_path: str = ""
    seed: int = 0

    def __post_init__(self):
        if self.grid_n < 8:
            raise ConfigError("grid.n must be at least 8")
        if self.tol_slope <= 0:
            raise ConfigError("tolerances must be positive")
        if self.time_tmax <= 0 or self.time_dt < 0 or self.time_samples < 1:
            raise ConfigError("invalid time settings")
        if self.seed < 0:
            raise ConfigError("seed must be an unsigned integer")


# field annotations are strings under postponed evaluation
_CONVERTERS = {
    "int": int,
    "float": float,
    "str": str,
    "bool": _bool,
    "tuple[float, ...]": _floats,
}


def _key_map() -> dict[str, tuple[str, object]]:
    out = {}
    for f in fields(ExperimentConfig):
        key = f.name.replace("_", ".", 1)
        out[key] = (f.name, f.type)
    return out


def parse_config(text: str) -> ExperimentConfig:
    """Parse ``key = value`` lines; '#' starts a comment; unknown keys are errors."""
    keys = _key_map()
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key = value")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in keys:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        name, typ = keys[key]
        conv = _CONVERTERS[typ]
        try:
            values[name] = conv(value)
        except ValueError as exc:
            raise ConfigError(f"line {lineno}: bad value for {key}: {exc}") from None
    return ExperimentConfig(**values)


def load_config(path: str | Path) -> ExperimentConfig:
    return parse_config(Path(path).read_text())
