"""Traversal time of a classical particle slowed by linear friction.

With ``v' = -gamma v`` the particle covers ``w`` in
``(1/gamma) ln(1 / (1 - gamma w / v0))``; it never arrives if
``gamma w >= v0``. The small-friction expansion is quadratic in ``w``:
``alpha w^2 + beta w`` with ``alpha = gamma / (2 v0^2)`` and ``beta = 1/v0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, RegimeError


@dataclass(frozen=True)
class ClassicalSpec:
    gamma: float
    v0: float
    w_cl: float

    def __post_init__(self):
        if not self.gamma >= 0:
            raise DomainError(f"gamma must be >= 0, got {self.gamma!r}")
        if not self.v0 > 0:
            raise DomainError(f"v0 must be > 0, got {self.v0!r}")
        if not self.w_cl > 0:
            raise DomainError(f"w_cl must be > 0, got {self.w_cl!r}")

    @classmethod
    def from_alpha_beta(cls, alpha: float, beta: float, w_cl: float) -> "ClassicalSpec":
        """Build from the quadratic coefficients alpha and beta."""
        v0 = 1.0 / beta
        return cls(gamma=2.0 * alpha * v0 * v0, v0=v0, w_cl=w_cl)

    @property
    def alpha(self) -> float:
        # second-order Taylor coefficient of the exact time; note the 1/2
        return 0.5 * self.gamma / self.v0**2

    @property
    def beta(self) -> float:
        return 1.0 / self.v0

    @property
    def tau0(self) -> float:
        """Frictionless crossing time."""
        return self.w_cl / self.v0

    @property
    def in_regime(self) -> bool:
        return self.gamma * self.w_cl < self.v0


def _require_regime(spec: ClassicalSpec):
    if not spec.in_regime:
        raise RegimeError(
            f"particle stops inside the interval: gamma*w_cl={spec.gamma * spec.w_cl!r} "
            f">= v0={spec.v0!r}"
        )


def traversal_exact(spec: ClassicalSpec) -> float:
    _require_regime(spec)
    if spec.gamma == 0.0:
        return spec.tau0
    # log1p keeps accuracy when gamma*tau0 is tiny
    return -math.log1p(-spec.gamma * spec.tau0) / spec.gamma


def traversal_quadratic(spec: ClassicalSpec) -> float:
    """Second-order expansion ``alpha w^2 + beta w`` of :func:`traversal_exact`.

    A plain polynomial, so it is evaluated past the stopping distance too;
    it is only a good approximation while ``gamma * tau0`` is small.
    """
    return spec.alpha * spec.w_cl**2 + spec.beta * spec.w_cl
