"""Barrier-width sweeps and their CSV / SVG output."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence
from xml.sax.saxutils import escape

import numpy as np

from .classical import ClassicalSpec, traversal_exact, traversal_quadratic
from .config import SweepSpec
from .dwelltime import Convention, U_MIN, dwell_time_closed, dwell_time_numeric, shape_F
from .errors import ConvergenceError, UsageError
from .langevin import PhysicalConfig

CSV_COLUMNS = (
    "u",
    "zeta",
    "F_rederived",
    "F_paper",
    "tau_closed_full",
    "tau_closed_approx",
    "tau_numeric",
    "tau_classical_exact",
    "tau_classical_quadratic",
)


@dataclass(frozen=True)
class SweepRow:
    u: float
    zeta: float
    F_rederived: float
    F_paper: float
    tau_closed_full: float
    tau_closed_approx: float
    tau_numeric: Optional[float] = None
    tau_classical_exact: Optional[float] = None
    tau_classical_quadratic: Optional[float] = None


def sweep_row(cfg: PhysicalConfig, u: float, spec: SweepSpec) -> SweepRow:
    point = cfg.with_u(u)
    res = dwell_time_closed(point, spec.convention)
    numeric = dwell_time_numeric(point) if spec.include_numeric else None
    exact = quadratic = None
    if spec.include_classical:
        # classical distance on the same numeric grid as u; the exact time
        # stays empty past the stopping distance v0/gamma
        cl = ClassicalSpec(gamma=spec.gamma, v0=spec.v0, w_cl=u)
        quadratic = traversal_quadratic(cl)
        if cl.in_regime:
            exact = traversal_exact(cl)
    return SweepRow(
        u=u,
        zeta=u / U_MIN,
        F_rederived=shape_F(u, Convention.REDERIVED),
        F_paper=shape_F(u, Convention.PAPER_LITERAL),
        tau_closed_full=res.tau_closed_full,
        tau_closed_approx=res.tau_closed_approx,
        tau_numeric=numeric,
        tau_classical_exact=exact,
        tau_classical_quadratic=quadratic,
    )


def run_sweep(cfg: PhysicalConfig, spec: SweepSpec) -> list[SweepRow]:
    """Evaluate one row per point of a uniform grid in ``u = w/sigma``.

    Errors are re-raised with the offending ``u`` in the message. The
    full-bracket dwell time must come out strictly increasing in ``u``.
    """
    rows = []
    for u in np.linspace(spec.u_min, spec.u_max, spec.steps):
        u = float(u)
        try:
            rows.append(sweep_row(cfg, u, spec))
        except ConvergenceError as exc:
            raise ConvergenceError(f"at u={u!r}: {exc}", exc.estimate) from exc
        except ValueError as exc:
            raise type(exc)(f"at u={u!r}: {exc}") from exc
    taus = [row.tau_closed_full for row in rows]
    if any(b <= a for a, b in zip(taus, taus[1:])):
        raise ArithmeticError("dwell time is not strictly increasing along the sweep")
    return rows


def format_number(value: Optional[float]) -> str:
    """Plain decimal with 12 significant digits; empty for missing values."""
    if value is None:
        return ""
    return np.format_float_positional(
        float(value), precision=12, unique=False, fractional=False, trim="-"
    )


def csv_text(rows: Sequence[SweepRow]) -> str:
    if not rows:
        raise UsageError("no rows to write")
    lines = [",".join(CSV_COLUMNS)]
    for row in rows:
        lines.append(",".join(format_number(getattr(row, col)) for col in CSV_COLUMNS))
    return "\n".join(lines) + "\n"


def emit_csv(rows: Sequence[SweepRow], path) -> None:
    text = csv_text(rows)
    try:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(exc.errno, f"cannot write CSV: {exc.strerror}", str(path)) from exc


def _as_mapping(row) -> dict:
    if dataclasses.is_dataclass(row):
        return dataclasses.asdict(row)
    return dict(row)


PLOTS = {
    "dwell_vs_width": ("u", ("tau_closed_full",), "scaled width w/sigma", "dwell time"),
    "classical_vs_width": (
        "w_cl",
        ("tau_classical_exact", "tau_classical_quadratic"),
        "distance w_cl",
        "classical traversal time",
    ),
}
_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd")


def _ticks(lo, hi, n=5):
    return [lo + (hi - lo) * i / (n - 1) for i in range(n)]


def emit_plot(rows, path, which: str = "dwell_vs_width", columns=None) -> None:
    """Static SVG line chart with one ``<polyline>`` per series.

    ``columns`` overrides the plotted y columns, e.g. ``("F_rederived",)``.
    Sweep rows have no ``w_cl`` key, so their ``u`` grid is used as distance.
    """
    if which not in PLOTS:
        raise UsageError(f"unknown plot {which!r}; choose from {sorted(PLOTS)}")
    if not rows:
        raise UsageError("no rows to plot")
    x_key, default_cols, x_label, y_label = PLOTS[which]
    columns = tuple(columns or default_cols)
    data = [_as_mapping(r) for r in rows]
    if x_key not in data[0]:
        x_key = "u"

    series = []
    for col in columns:
        if col not in data[0]:
            raise UsageError(f"rows have no column {col!r}")
        pts = [(d[x_key], d[col]) for d in data if d.get(col) is not None]
        if not pts:
            raise UsageError(f"column {col!r} is empty in every row")
        series.append((col, pts))

    xs = [p[0] for _, pts in series for p in pts]
    ys = [p[1] for _, pts in series for p in pts]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(0.0, min(ys)), max(ys)
    if x1 == x0:
        x1 = x0 + 1.0
    if y1 == y0:
        y1 = y0 + 1.0

    width, height = 640, 420
    left, right, top, bottom = 70, 20, 20, 50
    pw, ph = width - left - right, height - top - bottom

    def sx(x):
        return left + (x - x0) / (x1 - x0) * pw

    def sy(y):
        return top + ph - (y - y0) / (y1 - y0) * ph

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{left}" y1="{top + ph}" x2="{left + pw}" y2="{top + ph}" stroke="black"/>',
        f'<line x1="{left}" y1="{top}" x2="{left}" y2="{top + ph}" stroke="black"/>',
    ]
    for tx in _ticks(x0, x1):
        out.append(
            f'<text x="{sx(tx):.2f}" y="{top + ph + 16}" font-size="11" '
            f'text-anchor="middle">{tx:.3g}</text>'
        )
    for ty in _ticks(y0, y1):
        out.append(
            f'<text x="{left - 6}" y="{sy(ty) + 4:.2f}" font-size="11" '
            f'text-anchor="end">{ty:.3g}</text>'
        )
    out.append(
        f'<text x="{left + pw / 2}" y="{height - 10}" font-size="13" '
        f'text-anchor="middle">{escape(x_label)}</text>'
    )
    out.append(
        f'<text x="16" y="{top + ph / 2}" font-size="13" text-anchor="middle" '
        f'transform="rotate(-90 16 {top + ph / 2})">{escape(y_label)}</text>'
    )
    for i, (col, pts) in enumerate(series):
        coords = " ".join(f"{sx(x):.3f},{sy(y):.3f}" for x, y in pts)
        color = _COLORS[i % len(_COLORS)]
        out.append(
            f'<polyline data-series="{escape(col)}" fill="none" stroke="{color}" '
            f'stroke-width="1.5" points="{coords}"/>'
        )
        out.append(
            f'<text x="{left + 10}" y="{top + 14 + 14 * i}" font-size="11" '
            f'fill="{color}">{escape(col)}</text>'
        )
    out.append("</svg>")
    try:
        Path(path).write_text("\n".join(out) + "\n")
    except OSError as exc:
        raise OSError(exc.errno, f"cannot write plot: {exc.strerror}", str(path)) from exc
