"""Evolution of the Gaussian packet on the dissipative inverted barrier.

Two readings of the evolved packet live side by side:

* the canonical one, a normalized Gaussian centred on ``q_c(t)`` with
  variance ``sigma_theta^2(t)``, whose current follows from the continuity
  equation;
* the literal closed-form current with static centre ``z0`` and width
  ``sigma`` in the Gaussian factor, kept for reproduction of the dwell-time
  integrand and for comparison.

The propagator and :func:`propagate_numeric` are an independent route to
the packet width and are not used in the dwell-time pipeline.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .langevin import PhysicalConfig, coefficients
from .special import integrate_adaptive


@dataclass(frozen=True)
class PacketState:
    t: float
    sigma_theta_sq: float
    q_c: float
    qdot_c: float
    log_width_rate: float
    c2: float
    c1: float
    c0: float


def packet_state(cfg: PhysicalConfig, t: float) -> PacketState:
    co = coefficients(cfg, t)
    drift = cfg.hbar * cfg.k / cfg.M
    sigma_theta_sq = cfg.sigma**2 * co.x_sq
    q_c = co.a1 * cfg.z0 + co.a2 * drift
    # analytic, never differenced
    qdot_c = co.da1 * cfg.z0 + co.da2 * drift
    rate = co.dx_sq / co.x_sq
    grow = math.exp(cfg.eta * t) if np.ndim(t) == 0 else np.exp(cfg.eta * np.asarray(t))
    pre = cfg.M * grow / (4.0 * cfg.hbar)
    c2 = pre * rate
    c1 = pre * (-2.0 * q_c * rate + 4.0 * qdot_c)
    c0 = 0.25 * cfg.k * co.a2 * grow * (q_c * rate - 2.0 * qdot_c) + (
        q_c * cfg.z0 / (4.0 * sigma_theta_sq) * cfg.omega0 * co.a2 * cfg.r**2
    )
    return PacketState(t, sigma_theta_sq, q_c, qdot_c, rate, c2, c1, c0)


def density(cfg: PhysicalConfig, q, t: float):
    """Normalized probability density of the evolved packet."""
    st = packet_state(cfg, t)
    dq = np.asarray(q) - st.q_c
    return np.exp(-0.5 * dq * dq / st.sigma_theta_sq) / np.sqrt(
        2.0 * np.pi * st.sigma_theta_sq
    )


def current_canonical(cfg: PhysicalConfig, q, t: float):
    """Probability current that exactly conserves :func:`density`.

    The velocity field of a spreading Gaussian is the centre velocity plus a
    linear stretch ``(q - q_c) * d/dt ln sigma_theta``.
    """
    st = packet_state(cfg, t)
    rho = density(cfg, q, t)
    return rho * (st.qdot_c + (np.asarray(q) - st.q_c) * 0.5 * st.log_width_rate)


def current_paper(cfg: PhysicalConfig, q, t: float):
    """Closed-form current with static Gaussian factor, as printed.

    Differs from :func:`current_canonical` by an overall factor of four in
    the drift term and by using ``sigma``/``z0`` instead of the evolving
    width and centre in the Gaussian factor.
    """
    st = packet_state(cfg, t)
    x_sq = st.sigma_theta_sq / cfg.sigma**2
    dq = np.asarray(q)
    bracket = 2.0 * (dq - st.q_c) * st.log_width_rate + 4.0 * st.qdot_c
    gauss = np.exp(-((dq - cfg.z0) ** 2) / (2.0 * cfg.sigma**2))
    return bracket * x_sq / math.sqrt(2.0 * math.pi * cfg.sigma**2) * gauss


def greens_function(cfg: PhysicalConfig, q: float, q0: float, t: float) -> complex:
    """Propagator from ``q0`` at time 0 to ``q`` at time ``t``.

    The ``q^2`` coefficient is ``a2' e^{eta t}``; at ``eta = 0`` this is the
    exact inverted-oscillator kernel. Principal branch for the square root.
    """
    if not t > 0:
        raise DomainError(f"propagator needs t > 0 (a2 vanishes at t=0), got {t!r}")
    co = coefficients(cfg, t)
    pre = cmath.sqrt(cfg.M / (2j * math.pi * cfg.hbar * co.a2))
    quad = co.a1 * q0 * q0 + co.da2 * math.exp(cfg.eta * t) * q * q - 2.0 * q0 * q
    return pre * cmath.exp(1j * cfg.M / (2.0 * cfg.hbar * co.a2) * quad)


def initial_wavefunction(cfg: PhysicalConfig, q: float) -> complex:
    amp = (2.0 * math.pi * cfg.sigma**2) ** -0.25
    return amp * cmath.exp(-((q - cfg.z0) ** 2) / (4.0 * cfg.sigma**2) + 1j * cfg.k * q)


def propagate_numeric(
    cfg: PhysicalConfig, q: float, t: float, tol: float = 1e-12, span: float = 8.0
) -> complex:
    """psi(q, t) by quadrature of the propagator against the initial packet.

    The initial packet is integrated over ``z0 +- span*sigma``.
    """
    lo = cfg.z0 - span * cfg.sigma
    hi = cfg.z0 + span * cfg.sigma

    def integrand(q0):
        return greens_function(cfg, q, q0, t) * initial_wavefunction(cfg, q0)

    re = integrate_adaptive(lambda s: integrand(s).real, lo, hi, tol).value
    im = integrate_adaptive(lambda s: integrand(s).imag, lo, hi, tol).value
    return complex(re, im)


def fit_propagated_packet(
    cfg: PhysicalConfig, t: float, points: int = 7, tol: float = 1e-12
) -> tuple[float, float]:
    """Centre and variance of ``|psi|^2`` from a log-quadratic fit.

    Samples :func:`propagate_numeric` at ``points`` positions spread over
    roughly +-2 widths of the expected packet and fits ``ln|psi|^2`` with a
    parabola; exact for a Gaussian.
    """
    guess = packet_state(cfg, t)
    s = math.sqrt(guess.sigma_theta_sq)
    qs = guess.q_c + s * np.linspace(-2.0, 2.0, points)
    logs = [math.log(abs(propagate_numeric(cfg, q, t, tol)) ** 2) for q in qs]
    # fit in a centred, scaled variable for conditioning
    xi = (qs - guess.q_c) / s
    c2, c1, _ = np.polyfit(xi, logs, 2)
    variance = -s * s / (2.0 * c2)
    center = guess.q_c + s * (-c1 / (2.0 * c2))
    return float(center), float(variance)
