"""Error function, adaptive Gauss-Kronrod quadrature and bisection.

Everything here is written in-repo so that the dwell-time checks do not
lean on the platform's libm or on scipy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .errors import BracketError, ConvergenceError, DomainError

_TWO_OVER_SQRT_PI = 2.0 / math.sqrt(math.pi)
_INV_SQRT_PI = 1.0 / math.sqrt(math.pi)

# Below this |x| the positive-term series is used, above it the continued
# fraction for erfc. Both reach ~1e-16 relative at the crossover.
_ERF_CROSSOVER = 2.5


def _erf_series(x: float) -> float:
    # erf(x) = 2/sqrt(pi) * exp(-x^2) * sum_n (2x^2)^n x / (2n+1)!!
    # all terms positive, so no cancellation for x >= 0
    x2 = x * x
    term = x
    total = x
    n = 0
    while True:
        n += 1
        term *= 2.0 * x2 / (2 * n + 1)
        total += term
        if term <= 1e-17 * total:
            break
    return _TWO_OVER_SQRT_PI * math.exp(-x2) * total


def _erfc_continued_fraction(x: float) -> float:
    # erfc(x) = exp(-x^2)/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
    # evaluated with the modified Lentz algorithm
    tiny = 1e-300
    f = x
    c = x
    d = 0.0
    for n in range(1, 500):
        a = 0.5 * n
        d = x + a * d
        d = 1.0 / (d if d != 0.0 else tiny)
        c = x + a / c
        if c == 0.0:
            c = tiny
        delta = c * d
        f *= delta
        if abs(delta - 1.0) < 1e-16:
            break
    return _INV_SQRT_PI * math.exp(-x * x) / f


def erf(x: float) -> float:
    """Gauss error function ``2/sqrt(pi) * int_0^x exp(-s^2) ds``."""
    if not math.isfinite(x):
        raise DomainError(f"erf requires a finite argument, got {x!r}")
    if x < 0.0:
        return -erf(-x)
    if x == 0.0:
        return 0.0
    if x < _ERF_CROSSOVER:
        return _erf_series(x)
    if x > 27.0:
        return 1.0
    return 1.0 - _erfc_continued_fraction(x)


def erfc(x: float) -> float:
    """Complementary error function, accurate in the far tail."""
    if not math.isfinite(x):
        raise DomainError(f"erfc requires a finite argument, got {x!r}")
    if x < _ERF_CROSSOVER:
        return 1.0 - erf(x)
    if x > 27.0:
        return 0.0
    return _erfc_continued_fraction(x)


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error_estimate: float
    evaluations: int


# 15-point Kronrod nodes/weights on [-1, 1] with the embedded 7-point Gauss
# rule (odd-indexed nodes). Only the non-negative half is stored.
_XGK = (
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
)
_WGK = (
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
)
_WG = (
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
)


def _kronrod15(f, a, b):
    center = 0.5 * (a + b)
    half = 0.5 * (b - a)
    fc = f(center)
    kronrod = fc * _WGK[7]
    gauss = fc * _WG[3]
    for j in range(7):
        dx = half * _XGK[j]
        s = f(center - dx) + f(center + dx)
        kronrod += _WGK[j] * s
        if j % 2 == 1:
            gauss += _WG[j // 2] * s
    return kronrod * half, abs((kronrod - gauss) * half)


def integrate_adaptive(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: float = 1e-10,
    max_depth: int = 60,
    max_intervals: int = 20000,
) -> QuadratureResult:
    """Integrate ``f`` over ``[a, b]`` by recursive interval halving.

    Each panel is estimated with the 15-point Kronrod rule and accepted once
    the difference to its embedded 7-point Gauss rule is below its share of
    ``tol`` (absolute). ``b`` may be ``+inf``; the tail is then mapped onto a
    finite interval with ``y = a + s/(1-s)``.

    Raises ConvergenceError, carrying the best estimate, when a panel hits
    ``max_depth`` or the panel budget runs out.
    """
    if not tol > 0.0:
        raise DomainError(f"tol must be positive, got {tol!r}")
    if math.isnan(a) or math.isnan(b) or not math.isfinite(a):
        raise DomainError(f"invalid integration limits [{a!r}, {b!r}]")
    if b < a:
        raise DomainError(f"integration limits out of order: a={a!r} > b={b!r}")
    if b == a:
        return QuadratureResult(0.0, 0.0, 1)

    if math.isinf(b):
        g = f

        def f(s, _g=g, _a=a):
            one_minus = 1.0 - s
            return _g(_a + s / one_minus) / (one_minus * one_minus)

        a, b = 0.0, 1.0

    width = b - a
    total = 0.0
    error = 0.0
    evaluations = 0
    stack = [(a, b, 0)]
    while stack:
        lo, hi, depth = stack.pop()
        value, err = _kronrod15(f, lo, hi)
        evaluations += 15
        if not math.isfinite(value):
            raise ConvergenceError(
                f"non-finite integrand on [{lo!r}, {hi!r}]", estimate=total
            )
        allowed = tol * (hi - lo) / width
        if err <= allowed or hi - lo <= 4.0 * math.ulp(max(abs(lo), abs(hi))):
            total += value
            error += err
            continue
        if depth >= max_depth or evaluations >= 15 * max_intervals:
            pending = total + value + sum(_kronrod15(f, l, h)[0] for l, h, _ in stack)
            raise ConvergenceError(
                f"adaptive quadrature did not reach tol={tol:g} on [{a!r}, {b!r}]",
                estimate=pending,
            )
        mid = 0.5 * (lo + hi)
        stack.append((mid, hi, depth + 1))
        stack.append((lo, mid, depth + 1))
    return QuadratureResult(total, error, evaluations)


def find_root_increasing(
    g: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = 1e-12,
    max_iter: int = 400,
) -> float:
    """Root of a monotone increasing ``g`` on ``[lo, hi]`` by bisection.

    The returned point lies within ``tol`` of the root.
    """
    if not tol > 0.0:
        raise DomainError(f"tol must be positive, got {tol!r}")
    if hi < lo:
        raise DomainError(f"bracket out of order: lo={lo!r} > hi={hi!r}")
    g_lo = g(lo)
    g_hi = g(hi)
    if g_lo == 0.0:
        return lo
    if g_hi == 0.0:
        return hi
    if g_lo * g_hi > 0.0:
        raise BracketError(
            f"no sign change on [{lo!r}, {hi!r}]: g(lo)={g_lo!r}, g(hi)={g_hi!r}"
        )
    if g_lo > 0.0:
        raise BracketError("g must be increasing: g(lo) > 0 > g(hi)")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if hi - lo <= tol or mid == lo or mid == hi:
            return mid
        g_mid = g(mid)
        if g_mid == 0.0:
            return mid
        if g_mid < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
