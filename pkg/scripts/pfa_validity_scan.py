#!/usr/bin/env python3
"""Scan the exact-to-PFA energy ratio for a spheroid family.

Prints one line per gap: the exact multipolar energy, the apex-curvature
PFA estimate, and their ratio (which should approach 1 as the gap closes
relative to the apex radius, and decay as multipole truncation of PFA
becomes severe at large gaps).

Usage: python scripts/pfa_validity_scan.py [aspect] [family]
"""

import sys

import numpy as np

from casimir_spectral.model import Medium, PlacedParticle, Spheroid, SystemConfig
from casimir_spectral.pfa import pfa_vs_spectral_report


def run(aspect: float, family: str) -> int:
    ctor = {"prolate": Spheroid.prolate, "oblate": Spheroid.oblate}[family]
    spheroid = ctor(aspect, 1.0) if aspect != 1.0 else Spheroid.sphere(1.0)
    cfg = SystemConfig(
        particle=PlacedParticle(spheroid, gap=1.0),
        substrate_medium=Medium.perfect_conductor(),
        l_max=90,
    )
    rows = pfa_vs_spectral_report(cfg, np.geomspace(0.1, 5.0, 12))
    print(f"# {family} aspect {aspect}, apex radius {spheroid.apex_curvature_radius:g}")
    print(f"{'z/r_min':>10} {'xi_exact':>14} {'xi_pfa':>14} {'ratio':>8} {'l_max':>6}")
    for row in rows:
        print(
            f"{row.z_over_rmin:10.4f} {row.xi_exact:14.6e} {row.xi_pfa:14.6e} "
            f"{row.ratio:8.4f} {row.l_max_used:6d}"
        )
    return 0


if __name__ == "__main__":
    aspect = float(sys.argv[1]) if len(sys.argv) > 1 else 2.0
    family = sys.argv[2] if len(sys.argv) > 2 else "prolate"
    raise SystemExit(run(aspect, family))
