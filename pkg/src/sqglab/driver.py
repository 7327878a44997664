"""Run orchestration: schedules, checkpointing, norm recording, oracle suites."""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .config import RunConfig
from .diagnostics import NormSeries, record_norms
from .dynamics import SolverConfig, SolverState, initial_state, nonlinear_term, run_until
from .errors import ConfigError
from .initial import make_initial
from .modulus import (
    BreachReport,
    build_knv_modulus,
    check_modulus,
    default_offsets,
    gradient_bound_check,
)
from .oracles import (
    OracleReport,
    convolution_nonlinearity,
    linear_heat_exact,
    scaling_consistency,
    single_mode_exact,
)
from .snapshot import read_snapshot, write_snapshot
from .spectral import (
    Grid,
    SpectralField,
    forward_transform,
    inverse_transform,
    sobolev_norm,
)


@dataclass
class RunResult:
    state: SolverState
    series: NormSeries
    breaches: list
    gradient_ok: bool
    output_dir: Path
    norms_path: Path


def solver_config(config: RunConfig) -> SolverConfig:
    return SolverConfig(
        gamma=config.gamma,
        kappa=config.kappa,
        cfl=config.cfl,
        dt_max=config.dt_max,
        dt_min=config.dt_min,
        dealias_enabled=config.dealias,
        nonlinear_enabled=config.nonlinear,
    )


def resolve_output_dir(config: RunConfig, override=None) -> Path:
    if override is not None:
        return Path(override)
    env = os.environ.get("SQG_OUTPUT_DIR")
    return Path(env) if env else Path(config.directory)


def _cadence_times(dt: float, t_end: float):
    if dt <= 0.0:
        return []
    count = int(math.floor(t_end / dt + 1e-9))
    return [i * dt for i in range(1, count + 1)]


def sample_times(config: RunConfig):
    """Diagnostic sample times: the uniform sample_dt grid, optional
    log-spaced times, and t_end itself."""
    times = set(_cadence_times(config.sample_dt, config.t_end))
    times.add(float(config.t_end))
    if config.log_sampling:
        per = max(1, int(config.log_per_decade))
        decades = math.log10(config.t_end / config.log_min)
        count = int(math.ceil(decades * per)) + 1
        for j in range(count + 1):
            tj = config.log_min * 10.0 ** (j / per)
            if tj <= config.t_end:
                times.add(float(tj))
    return sorted(times)


def run_simulation(config: RunConfig, restart=None, output_override=None) -> RunResult:
    """Execute a configured run, writing norms.csv, snapshots and checkpoints.

    When ``restart`` names a snapshot, the run resumes from its field and
    time; the event schedule is regenerated from t = 0 and filtered, so a
    resumed run reproduces the uninterrupted trajectory exactly (snapshot
    writes round-trip the in-memory state through the serialized values).
    """
    out_dir = resolve_output_dir(config, output_override)
    out_dir.mkdir(parents=True, exist_ok=True)

    grid = Grid(config.n, config.length)
    sconfig = solver_config(config)
    if restart is not None:
        snap = read_snapshot(restart)
        if snap.field.grid.n != grid.n or not math.isclose(
                snap.field.grid.length, grid.length, rel_tol=1e-12):
            raise ConfigError(
                f"snapshot grid ({snap.field.grid.n}, {snap.field.grid.length}) "
                f"does not match config ({grid.n}, {grid.length})")
        state = SolverState(t=snap.t, theta=forward_transform(snap.field),
                            dt=sconfig.dt_max, config=sconfig)
    else:
        state = initial_state(
            make_initial(config.preset, grid, seed=config.seed,
                         amplitude=config.amplitude,
                         sigma=config.sigma if config.sigma > 0 else None),
            sconfig)

    samples = sample_times(config)
    snapshots = set(_cadence_times(config.snapshot_dt, config.t_end))
    checkpoints = set(_cadence_times(config.checkpoint_dt, config.t_end))

    events: dict[float, set] = {}
    for t in samples:
        events.setdefault(t, set()).add("sample")
    for t in snapshots:
        events.setdefault(t, set()).add("snapshot")
    for t in checkpoints:
        events.setdefault(t, set()).add("checkpoint")

    series = NormSeries(betas=config.betas)
    mod = None
    offsets = None
    if config.modulus_enabled:
        mod = build_knv_modulus(config.delta3, config.r_max,
                                table_size=config.table_size)
        offsets = default_offsets(grid, config.r_max)
    breaches: list[BreachReport] = []
    gradient_ok = True

    def observe(st: SolverState):
        nonlocal gradient_ok
        record_norms(st, series)
        if mod is not None and offsets:
            phys = inverse_transform(st.theta)
            report = check_modulus(phys, mod, offsets, t=st.t)
            if report.breached:
                breaches.append(report)
            if not gradient_bound_check(phys, mod).ok:
                gradient_ok = False

    def persist(st: SolverState, kinds) -> SolverState:
        phys = inverse_transform(st.theta)
        if "snapshot" in kinds:
            write_snapshot(out_dir / f"snap_{st.t:.6f}.bin", phys, st.t,
                           config.gamma, config.kappa)
        if "checkpoint" in kinds:
            write_snapshot(out_dir / "checkpoint.bin", phys, st.t,
                           config.gamma, config.kappa)
        # re-project through the stored values so a resumed run continues
        # from bit-identical state
        return replace(st, theta=forward_transform(phys))

    start = state.t
    if start == 0.0 or any(abs(start - t) <= 1e-12 * max(1.0, start) for t in samples):
        observe(state)

    norms_path = out_dir / "norms.csv"
    try:
        for t_ev in sorted(events):
            if t_ev <= start:
                continue
            state = run_until(state, t_ev)
            kinds = events[t_ev]
            if "snapshot" in kinds or "checkpoint" in kinds:
                state = persist(state, kinds)
            if "sample" in kinds:
                observe(state)
        if state.t < config.t_end:
            state = run_until(state, config.t_end)
    finally:
        series.write_csv(norms_path)

    return RunResult(state=state, series=series, breaches=breaches,
                     gradient_ok=gradient_ok, output_dir=out_dir,
                     norms_path=norms_path)


# ---------------------------------------------------------------------------
# oracle suites


def _report(name, max_abs, max_rel, tol) -> OracleReport:
    return OracleReport(name=name, max_abs_error=float(max_abs),
                        max_rel_error=float(max_rel), tolerance=tol,
                        passed=bool(max_rel <= tol))


def linear_suite(seed: int = 0):
    reports = []
    grid = Grid(32, 2.0 * math.pi)
    theta0 = make_initial("random_h1", grid, seed=seed)
    for gamma in (0.5, 1.0, 1.5, 2.0):
        config = SolverConfig(gamma=gamma, kappa=1.0, nonlinear_enabled=False)
        state = run_until(initial_state(theta0, config), 1.0)
        exact = linear_heat_exact(theta0, gamma, 1.0, 1.0)
        diff = SpectralField(grid, state.theta.coeffs - exact.coeffs)
        rel = sobolev_norm(diff, 0.0) / sobolev_norm(exact, 0.0)
        max_abs = float(np.max(np.abs(diff.coeffs)))
        reports.append(_report(f"linear_gamma{gamma:g}", max_abs, rel, 1e-12))
    return reports


def single_mode_suite():
    grid = Grid(64, 2.0 * math.pi)
    config = SolverConfig(gamma=1.0, kappa=1.0, cfl=0.5)
    state = run_until(initial_state(make_initial("single_mode", grid), config), 1.0)
    exact = single_mode_exact(grid, 1.0)
    diff = inverse_transform(state.theta).values - exact.values
    rel = float(np.max(np.abs(diff))) / math.exp(-1.0)
    return [_report("single_mode", float(np.max(np.abs(diff))), rel, 1e-8)]


def scaling_suite(seed: int = 0):
    from .initial import band_limited_random

    grid = Grid(128, 2.0 * math.pi)
    theta0 = band_limited_random(grid, seed=seed, max_mode=grid.n // 6,
                                 amplitude=0.5)
    nonlinear = scaling_consistency(theta0, 2, 0.5, nonlinear=True,
                                    tolerance=1e-5)
    linear = scaling_consistency(theta0, 2, 0.5, nonlinear=False,
                                 tolerance=1e-12)
    return [nonlinear, linear]


def convolution_suite(seeds=range(5)):
    from .initial import band_limited_random

    grid = Grid(16, 2.0 * math.pi)
    reports = []
    for seed in seeds:
        theta0 = band_limited_random(grid, seed=seed, max_mode=5, amplitude=1.0)
        direct = convolution_nonlinearity(theta0)
        pseudo = nonlinear_term(theta0, dealias_enabled=True)
        diff = np.max(np.abs(direct.coeffs - pseudo.coeffs))
        scale = np.max(np.abs(direct.coeffs))
        rel = float(diff / scale) if scale > 0 else 0.0
        reports.append(_report(f"convolution_seed{seed}", diff, rel, 1e-10))
    return reports


SUITES = {
    "linear": lambda: linear_suite(),
    "single-mode": lambda: single_mode_suite(),
    "scaling": lambda: scaling_suite(),
    "convolution": lambda: convolution_suite(),
}


def run_oracle_suite(name: str):
    if name == "all":
        reports = []
        for key in ("linear", "single-mode", "scaling", "convolution"):
            reports.extend(SUITES[key]())
        return reports
    if name not in SUITES:
        raise ConfigError(
            f"unknown oracle suite {name!r}; choose all, {', '.join(SUITES)}")
    return SUITES[name]()
