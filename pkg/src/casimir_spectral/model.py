"""Geometry and media of the spheroid-substrate system.

Conventions
-----------
* The spheroid's rotation (symmetry) axis is perpendicular to the substrate.
* ``r_major >= r_minor > 0``; a sphere has both equal.
* Prolate: symmetry axis half-length is ``r_major``; oblate: ``r_minor``.
* The gap ``z`` is the closest particle-substrate distance, so the center
  height is ``d = z + r_perp`` with ``r_perp`` the semi-axis along the
  surface normal.
* Oblate spheroidal coordinates use focal-ring radius ``F = e * r_major``
  and radial coordinate ``zeta0 = r_minor / F``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Union

from .errors import (
    ContactError,
    DegenerateCoordinateError,
    DivergentSpectralVariableError,
    InvalidMediumError,
)

_ASPECT_EQ_TOL = 0.0  # family 'sphere' requires exact equality of semi-axes


class Family(str, Enum):
    PROLATE = "prolate"
    OBLATE = "oblate"
    SPHERE = "sphere"


@dataclass(frozen=True)
class Spheroid:
    """A spheroid with semi-axes ``r_major >= r_minor``."""

    r_major: float
    r_minor: float
    family: Family

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        if not (self.r_minor > 0.0 and math.isfinite(self.r_major)):
            raise ValueError("semi-axes must be positive and finite")
        if self.r_major < self.r_minor:
            raise ValueError("r_major must be >= r_minor")
        equal = self.r_major == self.r_minor
        if equal != (self.family is Family.SPHERE):
            raise ValueError("family must be 'sphere' iff r_major == r_minor")

    @classmethod
    def sphere(cls, radius: float) -> "Spheroid":
        return cls(radius, radius, Family.SPHERE)

    @classmethod
    def prolate(cls, r_major: float, r_minor: float) -> "Spheroid":
        return cls(r_major, r_minor, Family.PROLATE)

    @classmethod
    def oblate(cls, r_major: float, r_minor: float) -> "Spheroid":
        return cls(r_major, r_minor, Family.OBLATE)

    @property
    def aspect_ratio(self) -> float:
        return self.r_major / self.r_minor

    @property
    def eccentricity(self) -> float:
        return math.sqrt(1.0 - (self.r_minor / self.r_major) ** 2)

    @property
    def focal_scale(self) -> float:
        """Semi-focal distance (prolate) or focal-ring radius (oblate)."""
        if self.family is Family.SPHERE:
            raise DegenerateCoordinateError("sphere has no focal scale")
        return self.eccentricity * self.r_major

    @property
    def r_perp(self) -> float:
        """Semi-axis along the substrate normal."""
        if self.family is Family.OBLATE:
            return self.r_minor
        return self.r_major

    @property
    def r_par(self) -> float:
        """Semi-axis parallel to the substrate."""
        if self.family is Family.OBLATE:
            return self.r_major
        return self.r_minor

    @property
    def volume(self) -> float:
        if self.family is Family.OBLATE:
            return 4.0 * math.pi / 3.0 * self.r_major**2 * self.r_minor
        return 4.0 * math.pi / 3.0 * self.r_major * self.r_minor**2

    @property
    def apex_curvature_radius(self) -> float:
        """Radius of curvature at the point closest to the substrate."""
        if self.family is Family.OBLATE:
            return self.r_major**2 / self.r_minor
        if self.family is Family.PROLATE:
            return self.r_minor**2 / self.r_major
        return self.r_major

    def scaled(self, factor: float) -> "Spheroid":
        return Spheroid(self.r_major * factor, self.r_minor * factor, self.family)


def spheroid_xi0(spheroid: Spheroid) -> float:
    """Radial spheroidal coordinate of the surface.

    Prolate: xi0 = 1/e > 1.  Oblate: zeta0 = r_minor / (e * r_major) > 0.
    """
    if spheroid.family is Family.SPHERE:
        raise DegenerateCoordinateError(
            "spheroidal coordinate degenerates for a sphere; use the spherical branch"
        )
    e = spheroid.eccentricity
    if spheroid.family is Family.PROLATE:
        return 1.0 / e
    return spheroid.r_minor / (e * spheroid.r_major)


@dataclass(frozen=True)
class PlacedParticle:
    """A spheroid at gap ``gap`` above the substrate plane."""

    spheroid: Spheroid
    gap: float

    def __post_init__(self):
        if not (self.gap > 0.0 and math.isfinite(self.gap)):
            raise ContactError("gap must be positive (particle must not touch substrate)")

    @property
    def center_height(self) -> float:
        return self.gap + self.spheroid.r_perp

    def scaled(self, factor: float) -> "PlacedParticle":
        return PlacedParticle(self.spheroid.scaled(factor), self.gap * factor)


@dataclass(frozen=True)
class GapGeometry:
    d: float
    z: float
    r_perp: float
    r_par: float


def gap_geometry(particle: PlacedParticle) -> GapGeometry:
    """Center height, gap, and the axis assignment for a placed particle."""
    sph = particle.spheroid
    return GapGeometry(
        d=particle.center_height,
        z=particle.gap,
        r_perp=sph.r_perp,
        r_par=sph.r_par,
    )


class MediumKind(str, Enum):
    CONSTANT = "constant"
    DRUDE = "drude"
    PERFECT_CONDUCTOR = "perfect_conductor"


@dataclass(frozen=True)
class Medium:
    """Dielectric medium: constant epsilon, Drude plasma, or perfect conductor."""

    kind: MediumKind
    epsilon: float | None = None
    omega_p: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", MediumKind(self.kind))
        if self.kind is MediumKind.CONSTANT:
            if self.epsilon is None or not self.epsilon > 0.0:
                raise InvalidMediumError("constant medium requires epsilon > 0")
        elif self.kind is MediumKind.DRUDE:
            if self.omega_p is None or not self.omega_p > 0.0:
                raise InvalidMediumError("Drude medium requires omega_p > 0")

    @classmethod
    def constant(cls, epsilon: float) -> "Medium":
        return cls(MediumKind.CONSTANT, epsilon=epsilon)

    @classmethod
    def drude(cls, omega_p: float = 1.0) -> "Medium":
        return cls(MediumKind.DRUDE, omega_p=omega_p)

    @classmethod
    def perfect_conductor(cls) -> "Medium":
        return cls(MediumKind.PERFECT_CONDUCTOR)

    def epsilon_at(self, omega: float) -> float:
        """Dielectric function at (real) frequency omega."""
        if self.kind is MediumKind.CONSTANT:
            return self.epsilon
        if self.kind is MediumKind.DRUDE:
            if omega == 0.0:
                raise InvalidMediumError("Drude epsilon diverges at omega = 0")
            return 1.0 - (self.omega_p / omega) ** 2
        raise InvalidMediumError("perfect conductor has no finite epsilon")


def contrast_fc(ambient_epsilon: float, substrate: Medium) -> float:
    """Substrate contrast factor (eps_amb - eps_sub)/(eps_amb + eps_sub).

    A perfect conductor gives exactly -1.  Result lies in [-1, 1).
    """
    if not ambient_epsilon > 0.0:
        raise InvalidMediumError("ambient epsilon must be positive")
    if substrate.kind is MediumKind.PERFECT_CONDUCTOR:
        return -1.0
    if substrate.kind is not MediumKind.CONSTANT:
        raise InvalidMediumError(
            "substrate must be a constant-epsilon medium or a perfect conductor"
        )
    eps_sub = substrate.epsilon
    if not eps_sub > 0.0:
        raise InvalidMediumError("substrate epsilon must be positive")
    return (ambient_epsilon - eps_sub) / (ambient_epsilon + eps_sub)


def spectral_u(particle_epsilon: Union[float, complex], ambient_epsilon: float):
    """Spectral variable u = [1 - eps_part/eps_amb]^{-1}."""
    if not ambient_epsilon > 0.0:
        raise InvalidMediumError("ambient epsilon must be positive")
    denom = 1.0 - particle_epsilon / ambient_epsilon
    if denom == 0.0:
        raise DivergentSpectralVariableError(
            "spectral variable diverges when eps_part == eps_amb"
        )
    return 1.0 / denom


@dataclass(frozen=True)
class SystemConfig:
    """Full system description: placed particle, media, truncation order."""

    particle: PlacedParticle
    substrate_medium: Medium
    particle_medium: Medium = field(default_factory=lambda: Medium.drude(1.0))
    ambient_epsilon: float = 1.0
    l_max: int = 10
    m_max: int | None = None

    def __post_init__(self):
        if not self.ambient_epsilon > 0.0:
            raise InvalidMediumError("ambient epsilon must be positive")
        if self.l_max < 1:
            raise ValueError("l_max must be >= 1")
        if self.m_max is None:
            object.__setattr__(self, "m_max", self.l_max)
        if not (0 <= self.m_max <= self.l_max):
            raise ValueError("m_max must lie in [0, l_max]")
        # Keys f_c early so invalid substrate media fail at construction.
        contrast_fc(self.ambient_epsilon, self.substrate_medium)

    @property
    def f_c(self) -> float:
        return contrast_fc(self.ambient_epsilon, self.substrate_medium)

    def with_l_max(self, l_max: int, m_max: int | None = None) -> "SystemConfig":
        return SystemConfig(
            particle=self.particle,
            substrate_medium=self.substrate_medium,
            particle_medium=self.particle_medium,
            ambient_epsilon=self.ambient_epsilon,
            l_max=l_max,
            m_max=m_max,
        )

    def scaled(self, factor: float) -> "SystemConfig":
        return SystemConfig(
            particle=self.particle.scaled(factor),
            substrate_medium=self.substrate_medium,
            particle_medium=self.particle_medium,
            ambient_epsilon=self.ambient_epsilon,
            l_max=self.l_max,
            m_max=self.m_max,
        )
