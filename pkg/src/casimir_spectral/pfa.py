"""Non-retarded plate-plate zero-point energy and the Proximity Force
Approximation for curved surfaces.

The coupled surface-plasmon branch of a Drude half-space facing a static
dielectric across a gap z follows from the quasi-static reflection
condition r_metal(omega) r_sub exp(-2 k z) = 1:

    omega(k, z) = omega_p sqrt((1 + f_c exp(-2 k z)) / 2),

so the energy per unit area is

    V(z) = (hbar omega_p / (4 sqrt(2) pi)) z^{-2} I(f_c),
    I(f_c) = int_0^inf u (sqrt(1 + f_c exp(-2u)) - 1) du,

a pure z^{-2} law.  Energies are returned in units of hbar*omega_p unless
an explicit hbar_omega_p is supplied.  Retardation (the large-distance
z^{-3} force regime) is out of scope.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.integrate import quad

from .errors import ContactError, InvalidMediumError
from .model import Medium, MediumKind, SystemConfig, contrast_fc
from .energy import DEFAULT_L_CAP, DEFAULT_L_STEP, DEFAULT_TOLERANCE, convergence_ladder

PFA_GAP_WARNING_RATIO = 0.2


@dataclass(frozen=True)
class PlatePair:
    """A Drude metal half-space facing a static substrate across a gap."""

    metal: Medium
    substrate: Medium
    ambient_epsilon: float
    gap: float

    def __post_init__(self):
        if self.metal.kind is not MediumKind.DRUDE:
            raise InvalidMediumError("plate metal must be a Drude medium")
        if not self.gap > 0.0:
            raise ContactError("plate gap must be positive")
        contrast_fc(self.ambient_epsilon, self.substrate)

    @property
    def f_c(self) -> float:
        return contrast_fc(self.ambient_epsilon, self.substrate)


@dataclass(frozen=True)
class CurvedSurfacePFA:
    """Two curved surfaces with radii R1 (may be inf) and R2."""

    R1: float
    R2: float
    gap: float

    def __post_init__(self):
        if not (self.R1 > 0.0 and self.R2 > 0.0):
            raise ValueError("radii must be positive")
        if not self.gap > 0.0:
            raise ContactError("gap must be positive")

    @property
    def effective_radius(self) -> float:
        if math.isinf(self.R1):
            return self.R2
        if math.isinf(self.R2):
            return self.R1
        return self.R1 * self.R2 / (self.R1 + self.R2)

    @property
    def pfa_questionable(self) -> bool:
        return self.gap / min(self.R1, self.R2) > PFA_GAP_WARNING_RATIO


def plate_mode_omega(k: float, pair: PlatePair) -> float:
    """Coupled surface-plasmon dispersion omega(k, z); omega_p/sqrt(2) at
    k -> infinity."""
    if k < 0.0:
        raise ValueError("wavenumber must be >= 0")
    arg = 1.0 + pair.f_c * math.exp(-2.0 * k * pair.gap)
    assert arg >= 0.0, "cannot occur for f_c in [-1, 1)"
    return pair.metal.omega_p * math.sqrt(0.5 * arg)


def mode_integral(f_c: float, rel_tol: float = 1e-10) -> float:
    """I(f_c) = int_0^inf u (sqrt(1 + f_c e^{-2u}) - 1) du; I(0) = 0,
    strictly increasing on [-1, 1)."""
    if f_c == 0.0:
        return 0.0
    val, err = quad(
        lambda u: u * (math.sqrt(1.0 + f_c * math.exp(-2.0 * u)) - 1.0),
        0.0,
        40.0,
        epsabs=0.0,
        epsrel=rel_tol,
        limit=200,
    )
    return val


def plate_energy_per_area(pair: PlatePair, hbar_omega_p: float = 1.0) -> float:
    """V(z) = (hbar omega_p / (4 sqrt(2) pi)) z^{-2} I(f_c); negative for
    attractive contrast f_c < 0."""
    if not pair.gap > 0.0:
        raise ContactError("gap must be positive")
    return (
        hbar_omega_p
        * mode_integral(pair.f_c)
        / (4.0 * math.sqrt(2.0) * math.pi * pair.gap**2)
    )


@dataclass(frozen=True)
class PfaForce:
    force: float
    questionable: bool


def pfa_force(curved: CurvedSurfacePFA, pair: PlatePair, hbar_omega_p: float = 1.0) -> PfaForce:
    """F = 2 pi (R1 R2/(R1+R2)) V(z); R1 = inf reduces to F = 2 pi R V(z)."""
    V = plate_energy_per_area(
        PlatePair(pair.metal, pair.substrate, pair.ambient_epsilon, curved.gap),
        hbar_omega_p,
    )
    return PfaForce(
        force=2.0 * math.pi * curved.effective_radius * V,
        questionable=curved.pfa_questionable,
    )


def pfa_energy_sphere_plane(R: float, gap: float, f_c_pair: PlatePair) -> float:
    """PFA interaction energy of a curved apex (radius R) above a plate, in
    units of hbar*omega_p: integral of the PFA force from infinity to the
    gap, = 2 pi R z V(z) for the z^{-2} plate law."""
    pair = PlatePair(f_c_pair.metal, f_c_pair.substrate, f_c_pair.ambient_epsilon, gap)
    return 2.0 * math.pi * R * gap * plate_energy_per_area(pair)


@dataclass(frozen=True)
class PfaComparisonRow:
    z: float
    z_over_rmin: float
    xi_exact: float
    xi_pfa: float
    ratio: float
    l_max_used: int
    apex_radius: float


def pfa_vs_spectral_report(
    config: SystemConfig,
    z_grid,
    tolerance: float = DEFAULT_TOLERANCE,
    l_step: int = DEFAULT_L_STEP,
    l_cap: int = DEFAULT_L_CAP,
) -> list:
    """Exact spectral energy vs the apex-curvature PFA estimate per gap.

    The PFA maps the spheroid to its apex radius of curvature
    (prolate: r_minor^2/r_major, oblate: r_major^2/r_minor).
    """
    from .model import PlacedParticle  # local import to avoid cycle noise

    rows = []
    sph = config.particle.spheroid
    R_apex = sph.apex_curvature_radius
    pair_template = PlatePair(
        metal=config.particle_medium
        if config.particle_medium.kind is MediumKind.DRUDE
        else Medium.drude(1.0),
        substrate=config.substrate_medium,
        ambient_epsilon=config.ambient_epsilon,
        gap=1.0,
    )
    for z in sorted(float(v) for v in z_grid):
        cfg = SystemConfig(
            particle=PlacedParticle(sph, z),
            substrate_medium=config.substrate_medium,
            particle_medium=config.particle_medium,
            ambient_epsilon=config.ambient_epsilon,
            l_max=config.l_max,
        )
        sample = convergence_ladder(cfg, tolerance=tolerance, l_step=l_step, l_cap=l_cap)
        xi_pfa = pfa_energy_sphere_plane(R_apex, z, pair_template)
        rows.append(
            PfaComparisonRow(
                z=z,
                z_over_rmin=z / sph.r_minor,
                xi_exact=sample.xi,
                xi_pfa=xi_pfa,
                ratio=sample.xi / xi_pfa if xi_pfa != 0.0 else math.nan,
                l_max_used=sample.l_max_used,
                apex_radius=R_apex,
            )
        )
    return rows
