"""Dwell time of a Gaussian packet tunneling through a dissipative inverted
parabolic barrier, with closed forms checked against quadrature and ODE
oracles."""

from .classical import ClassicalSpec, traversal_exact, traversal_quadratic
from .dwelltime import (
    Convention,
    DwellResult,
    consistency_report,
    current_difference,
    dwell_bracket_approx,
    dwell_bracket_full,
    dwell_kernel,
    dwell_time_closed,
    dwell_time_numeric,
    group_delay,
    shape_F,
    truncation_time,
)
from .errors import (
    BracketError,
    ConfigError,
    ConvergenceError,
    DomainError,
    RegimeError,
    UsageError,
)
from .langevin import (
    BathMode,
    CoefficientSet,
    PhysicalConfig,
    bath_response,
    coefficients,
    compose_trajectory,
    effective_frequency,
)
from .special import QuadratureResult, erf, erfc, find_root_increasing, integrate_adaptive
from .wavepacket import (
    PacketState,
    current_canonical,
    current_paper,
    density,
    greens_function,
    packet_state,
    propagate_numeric,
)

__version__ = "0.1.0"
