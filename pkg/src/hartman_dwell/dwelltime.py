"""Dwell time of the packet in the dissipative barrier.

Two routes are computed and compared:

* the time integral of the incoming-minus-outgoing current between the
  barrier edges ``q = 2 z0`` and ``q = 0``, truncated at the time ``T_long``
  where the spreading factor ``x`` reaches ``zeta``;
* the closed form obtained by the substitution ``y = zeta / x``, which turns
  the time integral into ``int_1^zeta exp(-y^2)/y^2 dy`` and, by parts, into
  error functions.

The closed form is only meaningful for ``zeta >= 1`` (offset at least
``sqrt(2)`` packet widths); below that a RegimeError is raised.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterable

from .errors import DomainError, RegimeError
from .langevin import SQRT2, PhysicalConfig, coefficients
from .special import erf, find_root_increasing, integrate_adaptive
from .wavepacket import current_canonical, fit_propagated_packet, packet_state

SQRT_PI = math.sqrt(math.pi)
INV_E = math.exp(-1.0)
ERF_ONE = erf(1.0)
U_MIN = 2.0 * SQRT2

# slack for zeta computed through z0 = u*sigma/2 and similar round trips
_ZETA_SLACK = 1e-12


class Convention(str, enum.Enum):
    """How prefactor and error-function argument are chosen.

    ``REDERIVED`` follows the substitution chain consistently; ``PAPER_LITERAL``
    uses the ``8 M zeta`` prefactor and ``Erf(u/2)`` exactly as printed.
    """

    PAPER_LITERAL = "paper_literal"
    REDERIVED = "rederived"

    @classmethod
    def parse(cls, value) -> "Convention":
        if isinstance(value, cls):
            return value
        if value == "paper":
            return cls.PAPER_LITERAL
        try:
            return cls(value)
        except ValueError:
            raise DomainError(
                f"unknown convention {value!r}; use 'paper', 'paper_literal' or 'rederived'"
            ) from None


@dataclass
class DwellResult:
    zeta: float
    u: float
    convention: Convention
    tau_closed_full: float
    tau_closed_approx: float
    T_long: float
    kernel_value: float
    tau_numeric: float | None = None
    diagnostics: dict[str, float] = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "zeta": self.zeta,
            "u": self.u,
            "convention": self.convention.value,
            "tau_numeric": self.tau_numeric,
            "tau_closed_full": self.tau_closed_full,
            "tau_closed_approx": self.tau_closed_approx,
            "T_long": self.T_long,
            "kernel_value": self.kernel_value,
            "diagnostics": dict(self.diagnostics),
        }


def _gate(zeta: float) -> float:
    if not zeta >= 1.0 - _ZETA_SLACK:
        raise RegimeError(
            f"closed-form regime requires z0 >= sqrt(2)*sigma (zeta >= 1), got zeta={zeta!r}"
        )
    return max(zeta, 1.0)


def flux_prefactor(cfg: PhysicalConfig) -> float:
    """Inverse incident flux ``M / (hbar |k|)``."""
    return cfg.M / (cfg.hbar * abs(cfg.k))


def current_difference(cfg: PhysicalConfig, t: float) -> float:
    """Current entering at ``q = 2 z0`` minus current leaving at ``q = 0``.

    Uses the literal closed-form current with the static width replaced by
    ``sigma_theta(t)``.
    """
    if t < 0:
        raise DomainError(f"time must be >= 0, got {t!r}")
    st = packet_state(cfg, t)
    x_sq = st.sigma_theta_sq / cfg.sigma**2
    return (
        4.0
        * cfg.z0
        * st.log_width_rate
        * x_sq
        / math.sqrt(2.0 * math.pi * st.sigma_theta_sq)
        * math.exp(-cfg.zeta**2 / x_sq)
    )


def truncation_time(cfg: PhysicalConfig, tol: float = 1e-14) -> float:
    """Time ``T_long`` at which ``x_sq`` reaches ``zeta^2``."""
    zeta = _gate(cfg.zeta)
    target = zeta * zeta
    if target == 1.0:
        return 0.0

    def g(t):
        return coefficients(cfg, t).x_sq - target

    hi = 1.0 / cfg.omega0
    while g(hi) < 0.0:
        hi *= 2.0
    return find_root_increasing(g, 0.0, hi, tol=tol * hi)


def dwell_kernel(zeta: float, tol: float = 1e-14) -> float:
    """``int_1^zeta exp(-y^2)/y^2 dy`` by adaptive quadrature."""
    zeta = _gate(zeta)
    return integrate_adaptive(lambda y: math.exp(-y * y) / (y * y), 1.0, zeta, tol).value


def dwell_bracket_full(zeta: float) -> float:
    """Closed form of :func:`dwell_kernel` from integration by parts."""
    zeta = _gate(zeta)
    return INV_E - math.exp(-zeta * zeta) / zeta + SQRT_PI * (ERF_ONE - erf(zeta))


def dwell_bracket_approx(zeta: float) -> float:
    """Full bracket without the ``exp(-zeta^2)/zeta`` boundary term."""
    zeta = _gate(zeta)
    return INV_E + SQRT_PI * (ERF_ONE - erf(zeta))


def dwell_bracket_printed(zeta: float) -> float:
    # as typeset, without sqrt(pi) on the erf difference; diagnostics only
    zeta = _gate(zeta)
    return INV_E - math.exp(-zeta * zeta) / zeta + (ERF_ONE - erf(zeta))


def shape_F(u: float, convention=Convention.REDERIVED) -> float:
    """Width dependence ``F(w/sigma)`` of the approximate dwell time."""
    convention = Convention.parse(convention)
    if not u >= U_MIN * (1.0 - _ZETA_SLACK):
        raise RegimeError(f"scaled width u must be >= 2*sqrt(2) (zeta >= 1), got u={u!r}")
    if convention is Convention.REDERIVED:
        return u * u * dwell_bracket_approx(u / U_MIN)
    return u * u * (INV_E + SQRT_PI * (ERF_ONE - erf(0.5 * u)))


def closed_prefactor(cfg: PhysicalConfig, convention=Convention.REDERIVED) -> float:
    """Time scale multiplying the bracket.

    Rederived: ``8 M zeta^2 / (hbar |k| sqrt(pi))``. Literal: ``8 M zeta / (...)``.
    """
    convention = Convention.parse(convention)
    zeta = cfg.zeta
    power = zeta * zeta if convention is Convention.REDERIVED else zeta
    return 8.0 * power * flux_prefactor(cfg) / SQRT_PI


def dwell_time_numeric(
    cfg: PhysicalConfig, mode: str = "paper_literal", tol: float = 1e-12
) -> float:
    """Dwell time as the time integral of the current difference up to ``T_long``.

    ``mode="paper_literal"`` integrates :func:`current_difference`;
    ``mode="canonical"`` uses the conserving current at the same two edges.
    """
    if mode not in ("paper_literal", "canonical"):
        raise DomainError(f"unknown numeric mode {mode!r}")
    T = truncation_time(cfg)
    if T == 0.0:
        return 0.0
    edge = 2.0 * cfg.z0

    def integrand(t):
        if mode == "paper_literal":
            return current_difference(cfg, t)
        return float(current_canonical(cfg, edge, t) - current_canonical(cfg, 0.0, t))

    value = integrate_adaptive(integrand, 0.0, T, tol).value
    return flux_prefactor(cfg) * value


def dwell_time_closed(
    cfg: PhysicalConfig, convention=Convention.REDERIVED, numeric: bool = False
) -> DwellResult:
    """Closed-form dwell time, optionally with the numeric route alongside."""
    convention = Convention.parse(convention)
    zeta = _gate(cfg.zeta)
    pre = closed_prefactor(cfg, convention)
    full = dwell_bracket_full(zeta)
    approx = dwell_bracket_approx(zeta)
    kernel = dwell_kernel(zeta)
    result = DwellResult(
        zeta=cfg.zeta,
        u=cfg.u,
        convention=convention,
        tau_closed_full=pre * full,
        tau_closed_approx=pre * approx,
        T_long=truncation_time(cfg),
        kernel_value=kernel,
    )
    diag = result.diagnostics
    diag["kernel_minus_bracket"] = kernel - full
    if full > 0.0:
        diag["approx_vs_full_rel"] = (approx - full) / full
    rederived = closed_prefactor(cfg, Convention.REDERIVED)
    diag["printed_zeta_prefactor_ratio"] = closed_prefactor(cfg, Convention.PAPER_LITERAL) / rederived
    diag["printed_width_prefactor_ratio"] = _width_prefactor(cfg) / rederived
    if numeric:
        tau_num = dwell_time_numeric(cfg, "paper_literal")
        tau_can = dwell_time_numeric(cfg, "canonical")
        result.tau_numeric = tau_num
        ref = rederived * full
        diag["tau_canonical"] = tau_can
        if ref > 0.0:
            diag["numeric_vs_closed_rel"] = (tau_num - ref) / ref
            diag["canonical_vs_closed_rel"] = (tau_can - ref) / ref
    return result


def _width_prefactor(cfg: PhysicalConfig) -> float:
    # printed form 2 M (w/sigma)^2 / (hbar |k| sqrt(pi)), bracket excluded
    return 2.0 * cfg.u**2 * flux_prefactor(cfg) / SQRT_PI


def group_delay(tau_d: float, tau_i: float = 0.0) -> float:
    """Group delay as dwell time plus self-interference delay.

    With ``tau_i = 0`` (dispersionless surroundings) it equals the dwell time.
    """
    if tau_d < 0:
        raise DomainError(f"dwell time must be >= 0, got {tau_d!r}")
    return tau_d + tau_i


def consistency_report(
    configs: Iterable[PhysicalConfig],
    numeric: bool = True,
    propagator: bool = False,
    propagator_time: float = 1.0,
) -> dict:
    """Quantify how the printed closed forms differ from the consistent ones.

    One row per configuration with the kernel/bracket identity residual,
    printed-vs-rederived prefactor ratios, the effect of the error-function
    argument on ``F``, the missing ``sqrt(pi)`` in the typeset bracket, the
    canonical-to-literal numeric ratio and, optionally, the deviation of the
    propagated packet width from the closed-form width.
    """
    rows = []
    for cfg in configs:
        zeta = _gate(cfg.zeta)
        u = cfg.u
        full = dwell_bracket_full(zeta)
        rederived = closed_prefactor(cfg, Convention.REDERIVED)
        f_red = shape_F(u, Convention.REDERIVED)
        f_pap = shape_F(u, Convention.PAPER_LITERAL)
        row = {
            "zeta": cfg.zeta,
            "u": u,
            "eta": cfg.eta,
            "omega0": cfg.omega0,
            "identity_residual": abs(dwell_kernel(zeta) - full),
            "printed_zeta_prefactor_ratio": closed_prefactor(cfg, Convention.PAPER_LITERAL)
            / rederived,
            "printed_width_prefactor_ratio": _width_prefactor(cfg) / rederived,
            "erf_argument_F_rel": (f_pap - f_red) / f_red,
            "erf_paper_arg": erf(0.5 * u),
            "erf_rederived_arg": erf(u / U_MIN),
            "printed_bracket_rel": (dwell_bracket_printed(zeta) - full) / full if full else None,
        }
        if numeric:
            literal = dwell_time_numeric(cfg, "paper_literal")
            canonical = dwell_time_numeric(cfg, "canonical")
            row["tau_numeric_literal"] = literal
            row["tau_numeric_canonical"] = canonical
            row["canonical_over_literal"] = canonical / literal if literal else None
        if propagator and cfg.eta > 0:
            _, variance = fit_propagated_packet(cfg, propagator_time)
            expected = packet_state(cfg, propagator_time).sigma_theta_sq
            row["propagator_width_rel"] = (variance - expected) / expected
        rows.append(row)
    return {"rows": rows}
