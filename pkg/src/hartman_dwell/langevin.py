"""Damped inverted oscillator: configuration and Langevin solution coefficients.

The system coordinate obeys ``q'' + eta q' - omega0^2 q = f(t)`` where ``f``
is the force exerted by a bath of harmonic oscillators. The homogeneous
solution is carried by two coefficients ``a1`` (response to the initial
position) and ``a2`` (response to the initial velocity); bath modes enter
through Duhamel convolutions against ``a2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Iterable, Optional

import numpy as np

from .errors import ConfigError, DomainError
from .special import integrate_adaptive

SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class PhysicalConfig:
    """Physical parameters of the packet and the dissipative barrier.

    ``r`` is the width ratio entering the spreading factor
    ``x^2 = a1^2 + r^4 omega0^2 a2^2``. When omitted it defaults to
    ``sqrt(hbar / (2 M omega0 sigma^2))``, the value for which the spreading
    factor reproduces exact free Gaussian spreading on the undamped barrier.
    """

    M: float = 1.0
    hbar: float = 1.0
    omega0: float = 1.0
    eta: float = 0.5
    k: float = 1.0
    sigma: float = 1.0 / SQRT2
    z0: float = 2.0
    r: Optional[float] = field(default=None)

    def __post_init__(self):
        for name in ("M", "hbar", "omega0", "eta", "k", "sigma", "z0"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ConfigError(f"{name} must be a number, got {value!r}")
            if not math.isfinite(value):
                raise ConfigError(f"{name} must be finite, got {value!r}")
        for name in ("M", "hbar", "omega0", "sigma", "z0"):
            if getattr(self, name) <= 0:
                raise ConfigError(f"{name} must be > 0, got {getattr(self, name)!r}")
        if self.eta < 0:
            raise ConfigError(f"eta must be >= 0, got {self.eta!r}")
        if self.k == 0:
            raise ConfigError("k must be nonzero")
        if self.r is None:
            derived = math.sqrt(self.hbar / (2.0 * self.M * self.omega0 * self.sigma**2))
            object.__setattr__(self, "r", derived)
        elif (
            isinstance(self.r, bool)
            or not isinstance(self.r, (int, float))
            or not math.isfinite(self.r)
            or self.r <= 0
        ):
            raise ConfigError(f"r must be a positive number, got {self.r!r}")

    @property
    def omega(self) -> float:
        return effective_frequency(self)

    @property
    def zeta(self) -> float:
        """Scaled offset ``z0 / (sqrt(2) sigma)``."""
        return self.z0 / (SQRT2 * self.sigma)

    @property
    def width(self) -> float:
        """Barrier width ``w = 2 z0``."""
        return 2.0 * self.z0

    @property
    def u(self) -> float:
        """Scaled barrier width ``w / sigma``."""
        return self.width / self.sigma

    @property
    def spread_coeff(self) -> float:
        # r^4 omega0^2, the weight of a2^2 in the spreading factor
        return self.r**4 * self.omega0**2

    def with_zeta(self, zeta: float) -> "PhysicalConfig":
        return replace(self, z0=zeta * SQRT2 * self.sigma)

    def with_u(self, u: float) -> "PhysicalConfig":
        return replace(self, z0=0.5 * u * self.sigma)


@dataclass(frozen=True)
class CoefficientSet:
    t: float
    a1: float
    a2: float
    da1: float
    da2: float
    x_sq: float
    dx_sq: float


@dataclass(frozen=True)
class BathMode:
    c_j: float
    m_j: float
    omega_j: float

    def __post_init__(self):
        if not self.m_j > 0:
            raise DomainError(f"bath mass must be > 0, got {self.m_j!r}")
        if not self.omega_j > 0:
            raise DomainError(f"bath frequency must be > 0, got {self.omega_j!r}")


def effective_frequency(cfg: PhysicalConfig) -> float:
    """``omega = sqrt(omega0^2 + eta^2/4)``, the growth rate before damping."""
    return math.sqrt(cfg.omega0**2 + 0.25 * cfg.eta**2)


def _check_time(t):
    if np.any(np.asarray(t) < 0) or np.any(np.isnan(t)):
        raise DomainError(f"time must be >= 0, got {t!r}")


def coefficients(cfg: PhysicalConfig, t) -> CoefficientSet:
    """Homogeneous coefficients a1, a2, their rates and the spreading factor.

    Accepts a scalar or an array of times.
    """
    _check_time(t)
    t = np.asarray(t, dtype=float) if np.ndim(t) else float(t)
    omega = effective_frequency(cfg)
    half_eta = 0.5 * cfg.eta
    damp = np.exp(-half_eta * t)
    ch = np.cosh(omega * t)
    sh = np.sinh(omega * t)
    a1 = damp * (ch + half_eta / omega * sh)
    a2 = damp * sh / omega
    # a1' = omega0^2 a2 (same ODE, initial data (0, omega0^2))
    da1 = cfg.omega0**2 * a2
    da2 = damp * (ch - half_eta / omega * sh)
    c = cfg.spread_coeff
    x_sq = a1 * a1 + c * a2 * a2
    dx_sq = 2.0 * (a1 * da1 + c * a2 * da2)
    return CoefficientSet(t, a1, a2, da1, da2, x_sq, dx_sq)


def bath_response(cfg: PhysicalConfig, mode: BathMode, t: float, tol: float = 1e-13):
    """Response coefficients (b1, b2) of q(t) to one bath mode's initial data.

    ``b1`` multiplies the mode's initial displacement and ``b2`` its initial
    velocity; both are Duhamel convolutions of ``a2`` with the free motion
    of the mode.
    """
    _check_time(t)
    if t == 0.0 or mode.c_j == 0.0:
        return 0.0, 0.0
    scale = -mode.c_j / cfg.M
    wj = mode.omega_j

    def a2(s):
        return coefficients(cfg, s).a2

    b1 = integrate_adaptive(lambda s: a2(s) * math.cos(wj * (t - s)), 0.0, t, tol).value
    b2 = integrate_adaptive(lambda s: a2(s) * math.sin(wj * (t - s)), 0.0, t, tol).value
    return scale * b1, scale * b2 / wj


def compose_trajectory(
    cfg: PhysicalConfig,
    q0: float,
    qdot0: float,
    bath_terms: Iterable[tuple[BathMode, float, float]],
    t: float,
) -> float:
    """Trajectory q(t) from system and bath initial conditions."""
    co = coefficients(cfg, t)
    q = co.a1 * q0 + co.a2 * qdot0
    for mode, x0, xdot0 in bath_terms:
        b1, b2 = bath_response(cfg, mode, t)
        q += b1 * x0 + b2 * xdot0
    return float(q)
