"""JSON configuration: a ``physical`` section and a ``sweep`` section."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, fields
from pathlib import Path

from .dwelltime import U_MIN, Convention
from .errors import ConfigError, DomainError
from .langevin import PhysicalConfig

PHYSICAL_KEYS = ("M", "hbar", "omega0", "eta", "k", "sigma", "z0", "r")


@dataclass(frozen=True)
class SweepSpec:
    u_min: float = U_MIN
    u_max: float = 20.0
    steps: int = 64
    convention: Convention = Convention.REDERIVED
    include_numeric: bool = False
    include_classical: bool = False
    # classical comparator: alpha = gamma/(2 v0^2) = 0.01, beta = 1/v0 = 0.1
    gamma: float = 2.0
    v0: float = 10.0

    def __post_init__(self):
        try:
            object.__setattr__(self, "convention", Convention.parse(self.convention))
        except DomainError as exc:
            raise ConfigError(f"convention: {exc}") from None
        for name in ("u_min", "u_max", "gamma", "v0"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
                raise ConfigError(f"{name} must be a finite number, got {value!r}")
        if isinstance(self.steps, bool) or not isinstance(self.steps, int) or self.steps < 2:
            raise ConfigError(f"steps must be an integer >= 2, got {self.steps!r}")
        for name in ("include_numeric", "include_classical"):
            if not isinstance(getattr(self, name), bool):
                raise ConfigError(f"{name} must be true or false, got {getattr(self, name)!r}")
        if self.u_min < U_MIN * (1.0 - 1e-12):
            raise ConfigError(
                f"u_min={self.u_min!r} is below the zeta=1 regime (u_min must be >= 2*sqrt(2) ~ {U_MIN:.6f})"
            )
        if not self.u_max > self.u_min:
            raise ConfigError(f"u_max={self.u_max!r} must exceed u_min={self.u_min!r}")
        if self.gamma < 0:
            raise ConfigError(f"gamma must be >= 0, got {self.gamma!r}")
        if self.v0 <= 0:
            raise ConfigError(f"v0 must be > 0, got {self.v0!r}")


def parse_config(data) -> tuple[PhysicalConfig, SweepSpec]:
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object with 'physical' and 'sweep' sections")
    unknown = set(data) - {"physical", "sweep"}
    if unknown:
        raise ConfigError(f"unknown top-level keys: {sorted(unknown)}")
    phys = data.get("physical", {}) or {}
    sweep = data.get("sweep", {}) or {}
    for label, section, allowed in (
        ("physical", phys, PHYSICAL_KEYS),
        ("sweep", sweep, tuple(f.name for f in fields(SweepSpec))),
    ):
        if not isinstance(section, dict):
            raise ConfigError(f"'{label}' must be an object")
        extra = set(section) - set(allowed)
        if extra:
            raise ConfigError(f"unknown keys in '{label}': {sorted(extra)}")
    return PhysicalConfig(**phys), SweepSpec(**sweep)


def load_config(path) -> tuple[PhysicalConfig, SweepSpec]:
    """Read and validate a config file; omitted fields take their defaults."""
    text = Path(path).read_text()
    try:
        data = json.loads(text) if text.strip() else {}
    except json.JSONDecodeError as exc:
        line = text.splitlines()[exc.lineno - 1] if exc.lineno - 1 < len(text.splitlines()) else ""
        raise ConfigError(
            f"{path}: JSON parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}\n  {line}"
        ) from None
    return parse_config(data)


def config_to_dict(cfg: PhysicalConfig, spec: SweepSpec) -> dict:
    sweep = asdict(spec)
    sweep["convention"] = spec.convention.value
    return {"physical": {key: getattr(cfg, key) for key in PHYSICAL_KEYS}, "sweep": sweep}


def dump_config(cfg: PhysicalConfig, spec: SweepSpec, path) -> None:
    Path(path).write_text(json.dumps(config_to_dict(cfg, spec), indent=2) + "\n")
