#!/usr/bin/env python3
"""Regenerate all four figure-scenario CSV bundles into an output directory.

Usage: python scripts/reproduce_figures.py [outdir]
"""

import pathlib
import sys
import tempfile

from casimir_spectral.cli import main

CONFIGS = {
    "fig1": "sweep.z_over_rmin = 0.2:20:25\n",
    "fig2": "sweep.z_over_rmin = 0.3:5:13\n",
    "fig3": "sweep.aspect_ratio = 0.4:2.5:11\n",
    "fig4": "sweep.z_over_rmin = 0.3:5:13\n",
}


def run(outdir: pathlib.Path) -> int:
    outdir.mkdir(parents=True, exist_ok=True)
    for scenario, config_text in CONFIGS.items():
        with tempfile.NamedTemporaryFile("w", suffix=".cfg", delete=False) as fh:
            fh.write(config_text)
            config_path = fh.name
        output = outdir / f"{scenario}.csv"
        code = main([scenario, "--config", config_path, "--output", str(output)])
        if code != 0:
            print(f"{scenario}: exit {code}", file=sys.stderr)
            return code
        print(f"{scenario}: wrote {output}")
    return 0


if __name__ == "__main__":
    target = pathlib.Path(sys.argv[1]) if len(sys.argv) > 1 else pathlib.Path("figures")
    raise SystemExit(run(target))
