"""Batch front-end: config parsing, sweep orchestration, CSV emission.

Usage::

    casimir-spectral <scenario> --config <path> [--output <path>] [--strict]

Scenarios: modes, energy_sweep, exponent, pfa_compare, convergence,
verify, fig1, fig2, fig3, fig4.  Exit codes: 0 ok, 1 usage/parse error,
2 numerical non-convergence (strict mode) or failed verification,
3 I/O error.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .energy import (
    DEFAULT_L_CAP,
    EnergySample,
    DEFAULT_TOLERANCE,
    convergence_ladder,
    energy_sweep,
)
from .errors import ConfigParseError
from .model import Family, Medium, PlacedParticle, Spheroid, SystemConfig
from .pfa import PlatePair, pfa_energy_sphere_plane
from .spectral import mode_spectrum

SCENARIOS = (
    "modes",
    "energy_sweep",
    "exponent",
    "pfa_compare",
    "convergence",
    "verify",
    "fig1",
    "fig2",
    "fig3",
    "fig4",
)

_BASE_COLUMNS = ("z_over_rmin", "xi", "beta_local", "l_max_used", "converged")


def _parse_bool(s: str) -> bool:
    low = s.strip().lower()
    if low in ("true", "yes", "1"):
        return True
    if low in ("false", "no", "0"):
        return False
    raise ValueError(f"not a boolean: {s!r}")


def _parse_grid(s: str) -> tuple:
    parts = s.split(":")
    if len(parts) != 3:
        raise ValueError("grid must be start:stop:points")
    start, stop, points = float(parts[0]), float(parts[1]), int(parts[2])
    if not (start > 0.0 and stop >= start and points >= 1):
        raise ValueError("grid requires 0 < start <= stop and points >= 1")
    if stop == start and points > 1:
        raise ValueError("degenerate grid needs points = 1")
    return (start, stop, points)


_KEY_PARSERS = {
    "geometry.r_major": float,
    "geometry.r_minor": float,
    "geometry.family": str,
    "substrate.epsilon": float,
    "substrate.perfect_conductor": _parse_bool,
    "ambient.epsilon": float,
    "sweep.z_over_rmin": _parse_grid,
    "sweep.aspect_ratio": _parse_grid,
    "truncation.l_max": int,
    "truncation.tolerance": float,
    "scenario": str,
    "output": str,
}

_DEFAULTS = {
    "geometry.r_major": 1.0,
    "geometry.r_minor": 1.0,
    "ambient.epsilon": 1.0,
    "sweep.z_over_rmin": (0.2, 20.0, 25),
    "truncation.l_max": DEFAULT_L_CAP,
    "truncation.tolerance": DEFAULT_TOLERANCE,
}


@dataclass(frozen=True)
class RunConfig:
    """A validated scenario run: typed parameters plus output path."""

    scenario: str
    parameters: dict = field(default_factory=dict)
    output_path: str = "output.csv"
    strict: bool = False


def parse_config(text: str, scenario: str | None = None) -> RunConfig:
    """Parse a line-oriented ``key = value`` document with # comments."""
    params = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigParseError(
                f"expected 'key = value' on line {lineno}", line=lineno
            )
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key not in _KEY_PARSERS:
            raise ConfigParseError(
                f"unknown key {key!r} on line {lineno}", line=lineno, key=key
            )
        if key in params:
            raise ConfigParseError(
                f"duplicate key {key!r} on line {lineno}", line=lineno, key=key
            )
        try:
            params[key] = _KEY_PARSERS[key](value)
        except ValueError as exc:
            raise ConfigParseError(
                f"bad value for {key!r} on line {lineno}: {exc}",
                line=lineno,
                key=key,
            ) from exc

    file_scenario = params.pop("scenario", None)
    if scenario is None:
        scenario = file_scenario
    elif file_scenario is not None and file_scenario != scenario:
        raise ConfigParseError(
            f"scenario mismatch: command line says {scenario!r}, "
            f"config says {file_scenario!r}"
        )
    if scenario is None:
        raise ConfigParseError("no scenario given")
    if scenario not in SCENARIOS:
        raise ConfigParseError(f"unknown scenario {scenario!r}")

    output = params.pop("output", "output.csv")
    merged = dict(_DEFAULTS)
    merged.update(params)
    _validate(scenario, merged)
    return RunConfig(scenario=scenario, parameters=merged, output_path=output)


def _validate(scenario: str, params: dict) -> None:
    for key in ("geometry.r_major", "geometry.r_minor", "ambient.epsilon"):
        if not params[key] > 0.0:
            raise ConfigParseError(f"{key} must be positive", key=key)
    if params["truncation.l_max"] < 1:
        raise ConfigParseError("truncation.l_max must be >= 1")
    if not params["truncation.tolerance"] > 0.0:
        raise ConfigParseError("truncation.tolerance must be positive")
    has_eps = "substrate.epsilon" in params
    has_pc = params.get("substrate.perfect_conductor", False)
    if has_eps and has_pc:
        raise ConfigParseError(
            "substrate.epsilon and substrate.perfect_conductor are exclusive"
        )
    needs_system = scenario in (
        "modes",
        "energy_sweep",
        "exponent",
        "pfa_compare",
        "convergence",
    )
    if needs_system and not (has_eps or has_pc):
        raise ConfigParseError(
            f"scenario {scenario!r} requires substrate.epsilon or "
            "substrate.perfect_conductor"
        )
    if needs_system and has_eps and not params["substrate.epsilon"] > 0.0:
        raise ConfigParseError("substrate.epsilon must be positive")
    ratio = params["geometry.r_major"] / params["geometry.r_minor"]
    family = params.get("geometry.family")
    if family is None:
        if abs(ratio - 1.0) > 1e-12:
            raise ConfigParseError(
                "geometry.family required when r_major != r_minor"
            )
        params["geometry.family"] = "sphere"
    elif family not in ("sphere", "prolate", "oblate"):
        raise ConfigParseError(f"unknown geometry.family {family!r}")
    elif family == "sphere" and abs(ratio - 1.0) > 1e-12:
        raise ConfigParseError("sphere requires r_major == r_minor")
    elif family != "sphere" and not ratio > 1.0:
        raise ConfigParseError("spheroid requires r_major > r_minor")


def _spheroid_from(params: dict) -> Spheroid:
    family = Family(params["geometry.family"])
    if family is Family.SPHERE:
        return Spheroid.sphere(params["geometry.r_major"])
    ctor = Spheroid.prolate if family is Family.PROLATE else Spheroid.oblate
    return ctor(params["geometry.r_major"], params["geometry.r_minor"])


def _substrate_from(params: dict) -> Medium:
    if params.get("substrate.perfect_conductor", False):
        return Medium.perfect_conductor()
    return Medium.constant(params["substrate.epsilon"])


def _system_config(params: dict, gap: float, l_max: int) -> SystemConfig:
    return SystemConfig(
        particle=PlacedParticle(_spheroid_from(params), gap=gap),
        substrate_medium=_substrate_from(params),
        ambient_epsilon=params["ambient.epsilon"],
        l_max=l_max,
    )


def _grid(params: dict, key: str = "sweep.z_over_rmin") -> np.ndarray:
    start, stop, points = params[key]
    if points == 1:
        return np.asarray([start])
    return np.geomspace(start, stop, points)


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if math.isnan(value):
            return ""
        if math.isinf(value):
            return "inf"
        return f"{value:.12g}"
    return str(value)


def _preamble(run: RunConfig, extra: dict | None = None) -> list:
    lines = [
        f"# casimir-spectral {__version__}",
        f"# scenario = {run.scenario}",
    ]
    for key in sorted(run.parameters):
        value = run.parameters[key]
        if isinstance(value, tuple):
            value = ":".join(_fmt(v) for v in value)
        else:
            value = _fmt(value)
        lines.append(f"# {key} = {value}")
    for key in sorted(extra or {}):
        lines.append(f"# {key} = {_fmt((extra or {})[key])}")
    lines.extend(
        [
            "# convention: eigenvalues are depolarization factors n in (0, 1)",
            "# convention: z_over_rmin = gap / r_minor",
            "# convention: mode multiplicity is 1 for m = 0 and 2 for m > 0",
        ]
    )
    return lines


def _write_csv(path: str, preamble: list, columns: tuple, rows: list) -> None:
    lines = list(preamble)
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(_fmt(row.get(c)) for c in columns))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def _sweep_rows(sweep_result, rows: list, extra: dict | None = None) -> list:
    """Flatten one (SweepResult, per-point rows) pair to CSV row dicts."""
    betas = {}
    exponents = sweep_result.local_exponents()
    for sample, beta in zip(sweep_result.samples, exponents):
        betas[sample.z_over_rmin] = beta
    out = []
    for row in rows:
        record = dict(extra or {})
        if row.sample is None:
            record.update(
                z_over_rmin=None, xi=None, beta_local=None,
                l_max_used=None, converged=False, error=row.error,
            )
        else:
            s = row.sample
            record.update(
                z_over_rmin=s.z_over_rmin,
                xi=s.xi,
                beta_local=betas.get(s.z_over_rmin, math.nan),
                l_max_used=s.l_max_used,
                converged=s.converged,
            )
        out.append(record)
    return out


def _fill_beta(records: list) -> None:
    """Fill beta_local on converged z-sweep rows by centered differences."""
    from .energy import SweepResult

    good = [r for r in records if r.get("converged")]
    samples = tuple(
        EnergySample(
            z=r["z_over_rmin"],
            z_over_rmin=r["z_over_rmin"],
            xi=r["xi"],
            l_max_used=r["l_max_used"],
            converged=True,
            rel_change_last_step=math.nan,
        )
        for r in good
    )
    betas = SweepResult(samples=samples, fingerprint="", label={}).local_exponents()
    for record, beta in zip(good, betas):
        record["beta_local"] = float(beta)


def _has_failures(records: list) -> bool:
    return any(not record.get("converged", False) for record in records)


def _run_sweep_like(run: RunConfig) -> tuple:
    params = run.parameters
    grid = _grid(params)
    r_minor = params["geometry.r_minor"]

    def make_config(label, z_rel):
        return _system_config(params, z_rel * r_minor, params["truncation.l_max"])

    ((sweep, rows),) = energy_sweep(
        make_config,
        grid,
        tolerance=params["truncation.tolerance"],
        l_cap=params["truncation.l_max"],
    )
    records = _sweep_rows(sweep, rows)
    f_c = make_config((), grid[0]).f_c
    return records, {"f_c": f_c}


def _scenario_modes(run: RunConfig) -> int:
    params = run.parameters
    z = _grid(params)[0] * params["geometry.r_minor"]
    cfg = _system_config(params, z, params["truncation.l_max"])
    spectrum = mode_spectrum(cfg)
    records = []
    for block in spectrum.blocks:
        for index, n in enumerate(np.sort(block.eigenvalues)):
            records.append(
                {
                    "m": block.m,
                    "mode_index": index,
                    "n": float(n),
                    "omega_over_omega_p": math.sqrt(float(n)),
                    "multiplicity": block.multiplicity,
                }
            )
    columns = ("m", "mode_index", "n", "omega_over_omega_p", "multiplicity")
    _write_csv(
        run.output_path,
        _preamble(run, {"f_c": cfg.f_c, "z_over_rmin": z / params["geometry.r_minor"]}),
        columns,
        records,
    )
    return 0


def _scenario_energy(run: RunConfig) -> int:
    records, extra = _run_sweep_like(run)
    _write_csv(run.output_path, _preamble(run, extra), _BASE_COLUMNS, records)
    return 2 if run.strict and _has_failures(records) else 0


def _scenario_convergence(run: RunConfig) -> int:
    params = run.parameters
    r_minor = params["geometry.r_minor"]
    records = []
    for z_rel in _grid(params):
        cfg = _system_config(params, z_rel * r_minor, params["truncation.l_max"])
        record = {"z_over_rmin": z_rel, "beta_local": math.nan}
        try:
            sample = convergence_ladder(
                cfg,
                tolerance=params["truncation.tolerance"],
                l_cap=params["truncation.l_max"],
            )
            record.update(
                xi=sample.xi,
                l_max_used=sample.l_max_used,
                converged=True,
                rel_change=sample.rel_change_last_step,
            )
        except Exception as exc:
            record.update(
                xi=None, l_max_used=None, converged=False,
                rel_change=None, error=str(exc),
            )
        records.append(record)
    _fill_beta(records)
    columns = _BASE_COLUMNS + ("rel_change",)
    f_c = _system_config(params, r_minor, 1).f_c
    _write_csv(run.output_path, _preamble(run, {"f_c": f_c}), columns, records)
    return 2 if run.strict and _has_failures(records) else 0


def _scenario_pfa_compare(run: RunConfig) -> int:
    params = run.parameters
    spheroid = _spheroid_from(params)
    substrate = _substrate_from(params)
    r_minor = params["geometry.r_minor"]
    r_apex = spheroid.apex_curvature_radius
    records = []
    for z_rel in _grid(params):
        z = z_rel * r_minor
        cfg = _system_config(params, z, params["truncation.l_max"])
        pair = PlatePair(
            metal=cfg.particle_medium,
            substrate=substrate,
            ambient_epsilon=params["ambient.epsilon"],
            gap=z,
        )
        xi_pfa = pfa_energy_sphere_plane(r_apex, z, pair)
        record = {"z_over_rmin": z_rel, "beta_local": math.nan}
        try:
            sample = convergence_ladder(
                cfg,
                tolerance=params["truncation.tolerance"],
                l_cap=params["truncation.l_max"],
            )
            ratio = sample.xi / xi_pfa if xi_pfa != 0.0 else math.nan
            record.update(
                xi=sample.xi,
                l_max_used=sample.l_max_used,
                converged=True,
                pfa_ratio=ratio,
            )
        except Exception as exc:
            record.update(
                xi=None, l_max_used=None, converged=False,
                pfa_ratio=None, error=str(exc),
            )
        records.append(record)
    _fill_beta(records)
    columns = _BASE_COLUMNS + ("pfa_ratio",)
    f_c = _system_config(params, r_minor, 1).f_c
    _write_csv(run.output_path, _preamble(run, {"f_c": f_c}), columns, records)
    return 2 if run.strict and _has_failures(records) else 0


FIG1_SUBSTRATES = (
    ("inf", None),
    ("7p8", 7.8),
    ("3p12", 3.12),
    ("1p6", 1.6),
)


def _tagged_path(path: str, tag: str) -> str:
    if path.endswith(".csv"):
        return f"{path[:-4]}_{tag}.csv"
    return f"{path}_{tag}"


def _scenario_fig1(run: RunConfig) -> int:
    """Oblate aspect 1.4 over the four substrates of increasing contrast."""
    params = run.parameters
    grid = _grid(params)
    spheroid = Spheroid.oblate(1.4, 1.0)
    failures = False
    for tag, epsilon in FIG1_SUBSTRATES:
        substrate = (
            Medium.perfect_conductor() if epsilon is None else Medium.constant(epsilon)
        )

        def make_config(label, z_rel):
            return SystemConfig(
                particle=PlacedParticle(spheroid, gap=z_rel),
                substrate_medium=substrate,
                l_max=params["truncation.l_max"],
            )

        ((sweep, rows),) = energy_sweep(
            make_config,
            grid,
            tolerance=params["truncation.tolerance"],
            l_cap=params["truncation.l_max"],
        )
        eps_label = math.inf if epsilon is None else epsilon
        records = _sweep_rows(sweep, rows, {"epsilon_sub": eps_label})
        failures = failures or _has_failures(records)
        _write_csv(
            _tagged_path(run.output_path, f"eps_{tag}"),
            _preamble(run, {"epsilon_sub": eps_label, "aspect_ratio": 1.4}),
            _BASE_COLUMNS + ("epsilon_sub",),
            records,
        )
    return 2 if run.strict and failures else 0


FIG2_ASPECTS = (1.2, 1.6, 2.0)
FIG2_EPSILON = 3.12


def _scenario_fig2(run: RunConfig) -> int:
    """Prolate aspect families over sapphire; energy vs z/r_<."""
    params = run.parameters
    grid = _grid(params)
    substrate = Medium.constant(FIG2_EPSILON)
    failures = False
    all_records = []
    for aspect in FIG2_ASPECTS:
        spheroid = Spheroid.prolate(aspect, 1.0)

        def make_config(label, z_rel):
            return SystemConfig(
                particle=PlacedParticle(spheroid, gap=z_rel),
                substrate_medium=substrate,
                l_max=params["truncation.l_max"],
            )

        ((sweep, rows),) = energy_sweep(
            make_config,
            grid,
            tolerance=params["truncation.tolerance"],
            l_cap=params["truncation.l_max"],
        )
        records = _sweep_rows(sweep, rows, {"aspect_ratio": aspect})
        failures = failures or _has_failures(records)
        all_records.extend(records)
    _write_csv(
        run.output_path,
        _preamble(run, {"epsilon_sub": FIG2_EPSILON}),
        _BASE_COLUMNS + ("aspect_ratio",),
        all_records,
    )
    return 2 if run.strict and failures else 0


FIG3_Z_OVER_RPERP = 0.25
FIG3_EPSILON = 3.12
FIG3_DEFAULT_GRID = (0.4, 2.5, 11)


def _scenario_fig3(run: RunConfig) -> int:
    """Sweep aspect ratio r = r_par / r_perp at fixed z / r_perp = 0.25;
    r > 1 is oblate (flat), r < 1 prolate (tall), r = 1 a sphere."""
    params = run.parameters
    aspect_grid = (
        _grid(params, "sweep.aspect_ratio")
        if "sweep.aspect_ratio" in params
        else np.geomspace(*FIG3_DEFAULT_GRID[:2], FIG3_DEFAULT_GRID[2])
    )
    substrate = Medium.constant(FIG3_EPSILON)
    records = []
    failures = False
    for r in aspect_grid:
        if abs(r - 1.0) < 1e-9:
            spheroid = Spheroid.sphere(1.0)
        elif r > 1.0:
            spheroid = Spheroid.oblate(r, 1.0)  # r_perp = 1, r_par = r
        else:
            spheroid = Spheroid.prolate(1.0, r)  # r_perp = 1, r_par = r
        gap = FIG3_Z_OVER_RPERP * spheroid.r_perp

        cfg = SystemConfig(
            particle=PlacedParticle(spheroid, gap=gap),
            substrate_medium=substrate,
            l_max=params["truncation.l_max"],
        )
        record = {"aspect_ratio": float(r), "beta_local": math.nan}
        try:
            sample = convergence_ladder(
                cfg,
                tolerance=params["truncation.tolerance"],
                l_cap=params["truncation.l_max"],
            )
            record.update(
                z_over_rmin=sample.z_over_rmin,
                xi=sample.xi,
                l_max_used=sample.l_max_used,
                converged=True,
            )
        except Exception as exc:
            record.update(
                z_over_rmin=None, xi=None, l_max_used=None,
                converged=False, error=str(exc),
            )
            failures = True
        records.append(record)
    _write_csv(
        run.output_path,
        _preamble(
            run,
            {"epsilon_sub": FIG3_EPSILON, "z_over_rperp": FIG3_Z_OVER_RPERP},
        ),
        _BASE_COLUMNS + ("aspect_ratio",),
        records,
    )
    return 2 if run.strict and failures else 0


# two prolate families with the same apex curvature radius r_minor^2 / r_major
FIG4_FAMILIES = (
    {"r_major": 2.0, "r_minor": 1.0},  # apex radius 0.5
    {"r_major": 3.125, "r_minor": 1.25},  # apex radius 0.5
)
FIG4_EPSILON = 3.12


def _scenario_fig4(run: RunConfig) -> int:
    """Fixed-curvature prolate families: same PFA prediction, different Xi."""
    params = run.parameters
    grid = _grid(params)
    substrate = Medium.constant(FIG4_EPSILON)
    all_records = []
    failures = False
    for geom in FIG4_FAMILIES:
        spheroid = Spheroid.prolate(geom["r_major"], geom["r_minor"])
        aspect = spheroid.aspect_ratio
        r_apex = spheroid.apex_curvature_radius
        family_records = []
        for z_rel in grid:
            z = z_rel * spheroid.r_minor
            cfg = SystemConfig(
                particle=PlacedParticle(spheroid, gap=z),
                substrate_medium=substrate,
                l_max=params["truncation.l_max"],
            )
            pair = PlatePair(
                metal=cfg.particle_medium,
                substrate=substrate,
                ambient_epsilon=1.0,
                gap=z,
            )
            xi_pfa = pfa_energy_sphere_plane(r_apex, z, pair)
            record = {
                "aspect_ratio": aspect,
                "beta_local": math.nan,
                "z_over_rmin": z_rel,
            }
            try:
                sample = convergence_ladder(
                    cfg,
                    tolerance=params["truncation.tolerance"],
                    l_cap=params["truncation.l_max"],
                )
                ratio = sample.xi / xi_pfa if xi_pfa != 0.0 else math.nan
                record.update(
                    xi=sample.xi,
                    l_max_used=sample.l_max_used,
                    converged=True,
                    pfa_ratio=ratio,
                )
            except Exception as exc:
                record.update(
                    xi=None, l_max_used=None, converged=False,
                    pfa_ratio=None, error=str(exc),
                )
                failures = True
            family_records.append(record)
        _fill_beta(family_records)
        all_records.extend(family_records)
    _write_csv(
        run.output_path,
        _preamble(run, {"epsilon_sub": FIG4_EPSILON, "apex_radius": 0.5}),
        _BASE_COLUMNS + ("aspect_ratio", "pfa_ratio"),
        all_records,
    )
    return 2 if run.strict and failures else 0


def _scenario_verify(run: RunConfig) -> int:
    """Oracle report: nonzero exit if any oracle-vs-core deviation exceeds
    its tolerance."""
    from . import oracles
    from .spectral import isolated_depolarization, spectral_block

    checks = []

    def check(name, deviation, tolerance):
        checks.append((name, deviation, tolerance, deviation <= tolerance))

    # isolated sphere spectrum
    sphere = Spheroid.sphere(1.0)
    worst = 0.0
    for l in range(1, 31):
        worst = max(worst, abs(isolated_depolarization(sphere, l, 0) - l / (2 * l + 1)))
    check("isolated_sphere_spectrum", worst, 1e-10)

    # dipole depolarization vs quadrature oracle
    for family, ctor in (("prolate", Spheroid.prolate), ("oblate", Spheroid.oblate)):
        sp = ctor(1.4, 1.0)
        for axis, (l, m) in (("symmetry", (1, 0)), ("transverse", (1, 1))):
            ref = oracles.depolarization_integral(sp, axis)
            got = isolated_depolarization(sp, l, m)
            check(f"depolarization_{family}_{axis}", abs(got - ref), 1e-8)

    # image-dipole shifts for a sphere at z/a = 5, f_c = -1
    particle = PlacedParticle(sphere, gap=5.0)
    modes = oracles.image_dipole_modes(1.0, particle.center_height, -1.0)
    cfg = SystemConfig(
        particle=particle, substrate_medium=Medium.perfect_conductor(), l_max=20
    )
    for m, key in ((0, "n_perp"), (1, "n_par")):
        block = spectral_block(cfg, m)
        n1 = float(np.sort(block.eigenvalues)[0 if m == 0 else 0])
        shift_ref = modes[key] - 1.0 / 3.0
        shift = n1 - 1.0 / 3.0
        check(f"image_dipole_m{m}", abs(shift - shift_ref) / abs(shift_ref), 0.02)

    # boundary-integral cross-check, sphere at z/a = 1 over a conductor
    particle = PlacedParticle(sphere, gap=1.0)
    cfg = SystemConfig(
        particle=particle, substrate_medium=Medium.perfect_conductor(), l_max=30
    )
    for m in (0, 1):
        u_bem = oracles.quasistatic_bem(particle, -1.0, m)
        block = spectral_block(cfg, m)
        u_core = np.sort(block.eigenvalues)[:3]
        dev = float(np.max(np.abs(u_core - u_bem) / np.abs(u_bem)))
        check(f"bem_sphere_m{m}", dev, 0.01)

    lines = []
    ok = True
    for name, deviation, tolerance, passed in checks:
        ok = ok and passed
        status = "pass" if passed else "FAIL"
        lines.append(f"{status}  {name}: deviation {deviation:.3e} (tol {tolerance:g})")
    report = "\n".join(lines) + "\n"
    sys.stdout.write(report)
    if run.output_path != "output.csv" or "output" in run.parameters:
        with open(run.output_path, "w", encoding="utf-8") as fh:
            fh.write(report)
    return 0 if ok else 2


_SCENARIO_RUNNERS = {
    "modes": _scenario_modes,
    "energy_sweep": _scenario_energy,
    "exponent": _scenario_energy,
    "pfa_compare": _scenario_pfa_compare,
    "convergence": _scenario_convergence,
    "verify": _scenario_verify,
    "fig1": _scenario_fig1,
    "fig2": _scenario_fig2,
    "fig3": _scenario_fig3,
    "fig4": _scenario_fig4,
}


def run(config: RunConfig) -> int:
    """Execute a scenario; returns the process exit code."""
    try:
        return _SCENARIO_RUNNERS[config.scenario](config)
    except OSError as exc:
        sys.stderr.write(f"i/o error: {exc}\n")
        return 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit 1 on usage errors, not argparse's 2
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(1)


def main(argv=None) -> int:
    parser = _Parser(prog="casimir-spectral", description=__doc__)
    parser.add_argument("scenario", choices=SCENARIOS)
    parser.add_argument("--config", required=True)
    parser.add_argument("--output", default=None)
    parser.add_argument("--strict", action="store_true")
    args = parser.parse_args(argv)

    try:
        with open(args.config, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        sys.stderr.write(f"i/o error: {exc}\n")
        return 3
    try:
        config = parse_config(text, scenario=args.scenario)
    except ConfigParseError as exc:
        sys.stderr.write(f"config error: {exc}\n")
        return 1
    if args.output is not None:
        config = RunConfig(
            scenario=config.scenario,
            parameters=config.parameters,
            output_path=args.output,
            strict=args.strict,
        )
    elif args.strict:
        config = RunConfig(
            scenario=config.scenario,
            parameters=config.parameters,
            output_path=config.output_path,
            strict=True,
        )
    return run(config)


if __name__ == "__main__":
    raise SystemExit(main())
