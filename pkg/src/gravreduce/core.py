"""Physical constants, unit systems, and the domain records used everywhere else.

The math core is unit-agnostic: a :class:`PhysicalContext` simply carries the
numerical values of hbar and G in whatever system the caller chose, and every
formula multiplies the numbers it is given.  Unit conversion, if any, happens
at the CLI boundary.

The probability density is always that of a spherically symmetric Gaussian
wave packet of initial width sigma0, normalized so that the radial integral
of density * 4 pi r^2 equals one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import DomainError

# CODATA 2018 values.
HBAR_SI = 1.054571817e-34      # J s
G_SI = 6.67430e-11             # m^3 kg^-1 s^-2
HBAR_CGS = 1.054571817e-27     # erg s
G_CGS = 6.67430e-8             # cm^3 g^-1 s^-2


class UnitSystem(str, Enum):
    SI = "si"
    CGS = "cgs"
    DIMENSIONLESS = "dimensionless"


@dataclass(frozen=True)
class PhysicalContext:
    """Values of hbar and G plus the unit-system label they are expressed in."""

    hbar: float
    G: float
    unit_system: UnitSystem = UnitSystem.DIMENSIONLESS

    def __post_init__(self):
        if not (self.hbar > 0.0 and self.G > 0.0):
            raise DomainError("hbar and G must be positive")
        if self.unit_system is UnitSystem.DIMENSIONLESS:
            if self.hbar != 1.0 or self.G != 1.0:
                raise DomainError("dimensionless mode requires hbar = G = 1 exactly")

    @classmethod
    def si(cls, hbar: float = HBAR_SI, G: float = G_SI) -> "PhysicalContext":
        return cls(hbar=hbar, G=G, unit_system=UnitSystem.SI)

    @classmethod
    def cgs(cls, hbar: float = HBAR_CGS, G: float = G_CGS) -> "PhysicalContext":
        return cls(hbar=hbar, G=G, unit_system=UnitSystem.CGS)

    @classmethod
    def dimensionless(cls) -> "PhysicalContext":
        return cls(hbar=1.0, G=1.0, unit_system=UnitSystem.DIMENSIONLESS)


class BodyKind(str, Enum):
    POINT_PARTICLE = "point"
    HOMOGENEOUS_SPHERE = "sphere"


@dataclass(frozen=True)
class Body:
    """A point particle, or a homogeneous sphere of the given radius."""

    mass: float
    kind: BodyKind = BodyKind.POINT_PARTICLE
    radius: float | None = None

    def __post_init__(self):
        if not self.mass > 0.0:
            raise DomainError("mass must be positive")
        if self.kind is BodyKind.HOMOGENEOUS_SPHERE:
            if self.radius is None or not self.radius > 0.0:
                raise DomainError("sphere radius must be positive")
        elif self.radius is not None:
            raise DomainError("point particle takes no radius")

    @classmethod
    def point(cls, mass: float) -> "Body":
        return cls(mass=mass, kind=BodyKind.POINT_PARTICLE)

    @classmethod
    def sphere(cls, mass: float, radius: float) -> "Body":
        return cls(mass=mass, kind=BodyKind.HOMOGENEOUS_SPHERE, radius=radius)

    @property
    def is_point(self) -> bool:
        return self.kind is BodyKind.POINT_PARTICLE

    @property
    def is_sphere(self) -> bool:
        return self.kind is BodyKind.HOMOGENEOUS_SPHERE


@dataclass(frozen=True)
class WavePacket:
    """Spherically symmetric Gaussian packet of initial width sigma0, centered at r = 0."""

    sigma0: float

    def __post_init__(self):
        if not self.sigma0 > 0.0:
            raise DomainError("sigma0 must be positive")


def density(r: float, packet: WavePacket) -> float:
    """Probability density (2 pi sigma0^2)^(-3/2) exp(-r^2 / 2 sigma0^2).

    Strictly positive and monotone decreasing in r; integrates to one
    against the radial measure 4 pi r^2 dr.
    """
    if r < 0.0:
        raise DomainError("radius must be non-negative")
    s0 = packet.sigma0
    return (2.0 * math.pi * s0 * s0) ** -1.5 * math.exp(-(r * r) / (2.0 * s0 * s0))


def width_at(t: float, packet: WavePacket, body: Body, ctx: PhysicalContext) -> float:
    """Free-spreading packet width sigma0 * sqrt(1 + hbar^2 t^2 / (4 m^2 sigma0^4)).

    Diagnostic only: the short-time treatment used by every force and average
    in this package freezes the width at sigma0.
    """
    if t < 0.0:
        raise DomainError("time must be non-negative")
    s0 = packet.sigma0
    x = ctx.hbar * t / (2.0 * body.mass * s0 * s0)
    return s0 * math.sqrt(1.0 + x * x)
