"""Critical widths and masses for the quantum-to-classical transition.

Two independent routes give the transition scale: balancing the averaged
quantum force against the averaged self-gravitational force, and minimizing
the mean stationary energy over the packet width.  Both are implemented with
their exact unit constants; literature reference formulas (which drop O(1)
constants) are provided alongside for order-of-magnitude comparisons.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from .averages import (avg_energy_object, avg_energy_point,
                       avg_quantum_potential, avg_qg_potential_object,
                       avg_qg_potential_point)
from .core import Body, PhysicalContext, WavePacket
from .errors import BodyKindError, DomainError
from .minimize import minimize_bracketed
from .potentials import (SQRT_2_OVER_PI, qg_force_object, qg_force_point,
                         quantum_force)

# Tie band around the critical mass: exact equality is measure zero, so the
# transition label applies within a narrow relative band.
TIE_BAND = 1e-6

# Exact unit constants of the transition widths, from the closed-form roots.
FORCE_BALANCE_POINT_CONST = math.sqrt(math.pi / 2.0)
ENERGY_MIN_POINT_CONST = 3.0 * math.sqrt(math.pi) / (2.0 * (2.0 * math.sqrt(2.0) - 1.0))
ENERGY_MIN_OBJECT_CONST = (3.0 / (8.0 * (0.75 - 1.0 / math.pi))) ** 0.25
FORCE_BALANCE_MACRO_CONST = (8.0 * math.sqrt(2.0) / 15.0) ** 0.25
FORCE_BALANCE_MICRO_CONST = math.sqrt(4.0 * math.sqrt(2.0) / 9.0)


class Regime(str, Enum):
    GRAVITY_DOMINANT = "gravity-dominant"
    TRANSITION = "transition"
    QUANTUM_DOMINANT = "quantum-dominant"


class CriticalMethod(str, Enum):
    FORCE_BALANCE = "force-balance"
    ENERGY_MINIMIZATION = "energy-minimization"


class ObjectRegime(str, Enum):
    MACRO = "macro"
    MICRO = "micro"
    INTERMEDIATE = "intermediate"


@dataclass(frozen=True)
class WidthEstimate:
    """A transition width with its exact constant and the unit-constant form."""

    value: float        # exact constant from the balance / minimization
    paper_form: float   # same scaling with the O(1) constant dropped
    label: str


@dataclass(frozen=True)
class RegimeReport:
    critical_mass: float
    critical_width: float
    force_ratio: float          # mean quantum force / |mean self-gravity force|
    regime: Regime
    method: CriticalMethod
    reference_values: dict = field(default_factory=dict)


def critical_width_point(body: Body, ctx: PhysicalContext) -> float:
    """Width at which the averaged forces balance: sqrt(pi/2) hbar^2 / (G m^3)."""
    if not body.is_point:
        raise BodyKindError("critical_width_point requires a point particle")
    return FORCE_BALANCE_POINT_CONST * ctx.hbar ** 2 / (ctx.G * body.mass ** 3)


def critical_mass(packet: WavePacket, ctx: PhysicalContext) -> float:
    """Mass balancing the averaged forces at fixed width: (pi/2)^(1/6) (hbar^2 / G sigma0)^(1/3)."""
    return (math.pi / 2.0) ** (1.0 / 6.0) * (ctx.hbar ** 2 / (ctx.G * packet.sigma0)) ** (1.0 / 3.0)


def force_ratio(packet: WavePacket, body: Body, ctx: PhysicalContext) -> float:
    """Mean quantum force over the magnitude of the mean self-gravity force,
    using the point-particle closed forms that define the regime classification."""
    fq = 0.5 * SQRT_2_OVER_PI * ctx.hbar ** 2 / (body.mass * packet.sigma0 ** 3)
    fqg = ctx.G * body.mass ** 2 / (math.pi * packet.sigma0 ** 2)
    return fq / fqg


def classify_regime(packet: WavePacket, body: Body, ctx: PhysicalContext,
                    method: CriticalMethod | None = None) -> RegimeReport:
    """Classify quantum- vs gravity-dominance of a (body, packet) pair.

    Gravity dominates when the mass exceeds the critical mass (equivalently,
    when the cube-law force ratio drops below one); a relative tie band of
    ``TIE_BAND`` around the critical mass maps to the transition label.
    """
    m_c = critical_mass(packet, ctx)
    ratio = force_ratio(packet, body, ctx)
    m = body.mass
    if m > m_c * (1.0 + TIE_BAND):
        regime = Regime.GRAVITY_DOMINANT
    elif m < m_c * (1.0 - TIE_BAND):
        regime = Regime.QUANTUM_DOMINANT
    else:
        regime = Regime.TRANSITION

    if method is None:
        method = (CriticalMethod.FORCE_BALANCE if body.is_point
                  else CriticalMethod.ENERGY_MINIMIZATION)
    if body.is_point:
        if method is CriticalMethod.FORCE_BALANCE:
            width = critical_width_point(body, ctx)
        else:
            width = critical_width_energy_min_exact(body, ctx)
    else:
        if method is CriticalMethod.FORCE_BALANCE:
            width = transition_width_object(body, ctx, ObjectRegime.MACRO).value
        else:
            width = critical_width_energy_min_exact(body, ctx)

    return RegimeReport(critical_mass=m_c, critical_width=width, force_ratio=ratio,
                        regime=regime, method=method,
                        reference_values=reference_formulas(body, packet, ctx))


def _energy_profile(body: Body, ctx: PhysicalContext):
    """Mean energy as a function of width, with its analytic derivative."""
    m = body.mass
    c2 = 3.0 * ctx.hbar ** 2 / (8.0 * m)
    if body.is_point:
        c1 = -(2.0 * math.sqrt(2.0) - 1.0) * ctx.G * m * m / (2.0 * math.sqrt(math.pi))

        def energy(s0):
            return avg_energy_point(WavePacket(s0), body, ctx)

        def derivative(s0):
            return -c1 / s0 ** 2 - 2.0 * c2 / s0 ** 3
    else:
        a = ctx.G * m * m * (0.75 - 1.0 / math.pi) / body.radius ** 3

        def energy(s0):
            return avg_energy_object(WavePacket(s0), body, ctx)

        def derivative(s0):
            return 2.0 * a * s0 - 2.0 * c2 / s0 ** 3

    return energy, derivative


def critical_width_energy_min_exact(body: Body, ctx: PhysicalContext) -> float:
    """Closed-form minimizer of the mean energy (the oracle for the numeric route)."""
    scale = ctx.hbar ** 2 / (ctx.G * body.mass ** 3)
    if body.is_point:
        return ENERGY_MIN_POINT_CONST * scale
    return ENERGY_MIN_OBJECT_CONST * (scale * body.radius ** 3) ** 0.25


def critical_width_energy_min(body: Body, ctx: PhysicalContext,
                              bracket: tuple[float, float] | None = None) -> float:
    """Minimize the mean energy over the packet width by derivative-sign bisection.

    The bracket must contain the single stationary point; by default it spans
    a factor of ten either side of the closed-form minimizer.
    """
    energy, derivative = _energy_profile(body, ctx)
    if bracket is None:
        guess = critical_width_energy_min_exact(body, ctx)
        bracket = (0.1 * guess, 10.0 * guess)
    lo, hi = bracket
    if not (0.0 < lo < hi):
        raise DomainError("bracket must satisfy 0 < lo < hi")
    return minimize_bracketed(energy, lo, hi, rel_tol=1e-12, dfdx=derivative)


def stationary_energy(body: Body, ctx: PhysicalContext) -> float:
    """Mean energy at the minimizing width; negative (bound), of order G^2 m^5 / hbar^2."""
    if not body.is_point:
        raise BodyKindError("stationary_energy requires a point particle")
    s_min = critical_width_energy_min_exact(body, ctx)
    return avg_energy_point(WavePacket(s_min), body, ctx)


def transition_width_object(body: Body, ctx: PhysicalContext,
                            regime: ObjectRegime) -> WidthEstimate:
    """Transition width of a homogeneous sphere in the given size regime.

    Macro (sigma0 << R): quarter-power law in (hbar^2/G m^3) with R^(3/4).
    Micro (sigma0 >> R): square-root law with R^(1/2).
    Intermediate (sigma0 = R): hbar^2 / (G m^3) itself.
    ``value`` carries the exact constant from the force balance; ``paper_form``
    drops it for order-of-magnitude work.
    """
    if not body.is_sphere:
        raise BodyKindError("transition_width_object requires a homogeneous sphere")
    scale = ctx.hbar ** 2 / (ctx.G * body.mass ** 3)
    R = body.radius
    if regime is ObjectRegime.MACRO:
        base = (scale * R ** 3) ** 0.25
        return WidthEstimate(value=FORCE_BALANCE_MACRO_CONST * base,
                             paper_form=base, label="macro")
    if regime is ObjectRegime.MICRO:
        base = (scale * R) ** 0.5
        return WidthEstimate(value=FORCE_BALANCE_MICRO_CONST * base,
                             paper_form=base, label="micro")
    return WidthEstimate(value=scale, paper_form=scale, label="intermediate")


def force_balance_residual(r: float, packet: WavePacket, body: Body,
                           ctx: PhysicalContext) -> float:
    """Pointwise sum of the quantum and self-gravitational forces.

    Zero means neighboring guidance trajectories stay locally parallel; its
    ensemble average vanishes exactly at the force-balance critical width.
    """
    if r < 0.0:
        raise DomainError("radius must be non-negative")
    fq = quantum_force(r, packet, body, ctx)
    if body.is_point:
        fqg = qg_force_point(r, packet, body, ctx)
    else:
        fqg = qg_force_object(r, packet, body, ctx)
    return fq + fqg


def reference_formulas(body: Body, packet: WavePacket, ctx: PhysicalContext) -> dict:
    """Literature reference widths and times (unit constants dropped).

    Point particles get the elementary-particle width hbar^2 / (G m^3) and the
    associated localization time m sigma_c^2 / hbar; spheres additionally get
    the three object widths built from R.
    """
    m = body.mass
    scale = ctx.hbar ** 2 / (ctx.G * m ** 3)
    out = {
        "karolyhazy_width": scale,
        "karolyhazy_time": m * scale ** 2 / ctx.hbar,
    }
    if body.is_sphere:
        R = body.radius
        out["karolyhazy_object_width"] = scale ** (1.0 / 3.0) * R ** (2.0 / 3.0)
        out["diosi_macro_width"] = scale ** 0.25 * R ** 0.75
        out["diosi_micro_width"] = scale ** 0.5 * R ** 0.5
    return out
