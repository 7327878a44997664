"""Acceptance suite: every criterion at its stated tolerance and budget.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
pass/fail lines as they are produced.
"""

import math
import time

import numpy as np
import pytest

from sqglab import (
    Grid,
    NormSeries,
    SolverConfig,
    SpectralField,
    band_limited_random,
    build_knv_modulus,
    check_boundedness,
    check_modulus,
    convergence_ratio,
    convolution_nonlinearity,
    default_offsets,
    find_scaling,
    fit_decay_exponent,
    forward_transform,
    gradient_bound_check,
    initial_state,
    integral_tail_fraction,
    inverse_transform,
    linear_heat_exact,
    make_initial,
    nonlinear_term,
    record_norms,
    run_until,
    scaling_consistency,
    single_mode_exact,
    sobolev_norm,
    step,
)

TWO_PI = 2.0 * math.pi


def report(number, ok, detail):
    status = "PASS" if ok else "FAIL"
    print(f"ACCEPTANCE {number:2d} {status}: {detail}", flush=True)
    assert ok, f"criterion {number}: {detail}"


def sampled_run(theta0, config, t_end, sample_dt, betas=(), extra_times=()):
    series = NormSeries(betas=betas)
    state = initial_state(theta0, config)
    record_norms(state, series)
    times = sorted({round(i * sample_dt, 12)
                    for i in range(1, int(t_end / sample_dt + 1e-9) + 1)}
                   | set(extra_times) | {t_end})
    state = run_until(state, t_end,
                      callbacks=[lambda st: record_norms(st, series)],
                      callback_times=times)
    return state, series


@pytest.fixture(scope="module")
def cmt_run_10():
    """Criterion 4 run: gamma = kappa = 1, cmt data, n = 128, t in [0, 10]."""
    grid = Grid(128, TWO_PI)
    config = SolverConfig(gamma=1.0, kappa=1.0, cfl=0.5, dt_max=0.05)
    t0 = time.perf_counter()
    state, series = sampled_run(make_initial("cmt", grid), config, 10.0, 0.25)
    return state, series, time.perf_counter() - t0


@pytest.fixture(scope="module")
def cmt_run_50():
    grid = Grid(128, TWO_PI)
    config = SolverConfig(gamma=1.0, kappa=1.0, cfl=0.5, dt_max=0.05)
    t0 = time.perf_counter()
    state, series = sampled_run(make_initial("cmt", grid), config, 50.0, 0.25)
    return state, series, time.perf_counter() - t0


@pytest.fixture(scope="module")
def smoothing_run():
    """Criterion 7 run: rough H^1 data at n = 256 with log-spaced sampling."""
    grid = Grid(256, TWO_PI)
    config = SolverConfig(gamma=1.0, kappa=1.0, cfl=0.5, dt_max=0.05)
    log_times = {1e-4 * 10 ** (j / 12) for j in range(12 * 6 + 1)}
    log_times = {t for t in log_times if t <= 30.0}
    t0 = time.perf_counter()
    state, series = sampled_run(make_initial("random_h1", grid, seed=7), config,
                                30.0, 1.0, betas=(0.5, 1.0),
                                extra_times=log_times)
    return state, series, time.perf_counter() - t0


def test_criterion_01_single_mode_exact():
    t0 = time.perf_counter()
    grid = Grid(64, TWO_PI)
    config = SolverConfig(gamma=1.0, kappa=1.0, cfl=0.5)
    state = run_until(initial_state(make_initial("single_mode", grid), config), 1.0)
    err = np.max(np.abs(inverse_transform(state.theta).values
                        - single_mode_exact(grid, 1.0).values)) / math.exp(-1.0)
    wall = time.perf_counter() - t0
    report(1, err <= 1e-8 and wall < 5.0,
           f"single-mode rel Linf error {err:.3e} <= 1e-8, {wall:.2f}s < 5s")


def test_criterion_02_linear_semigroup():
    t0 = time.perf_counter()
    grid = Grid(64, TWO_PI)
    theta0 = make_initial("random_h1", grid, seed=11)
    worst = 0.0
    for gamma in (0.5, 1.0, 1.5, 2.0):
        config = SolverConfig(gamma=gamma, kappa=1.0, nonlinear_enabled=False)
        state = run_until(initial_state(theta0, config), 1.0)
        exact = linear_heat_exact(theta0, gamma, 1.0, 1.0)
        diff = SpectralField(grid, state.theta.coeffs - exact.coeffs)
        worst = max(worst, sobolev_norm(diff, 0.0) / sobolev_norm(exact, 0.0))
    wall = time.perf_counter() - t0
    report(2, worst <= 1e-12 and wall < 5.0,
           f"linear semigroup worst rel L2 error {worst:.3e} <= 1e-12, "
           f"{wall:.2f}s < 5s")


def test_criterion_03_inviscid_conservation():
    t0 = time.perf_counter()
    grid = Grid(128, TWO_PI)
    theta0 = make_initial("cmt", grid)
    config = SolverConfig(gamma=1.0, kappa=0.0, cfl=0.5, dt_max=0.05)
    state = run_until(initial_state(theta0, config), 1.0)
    l2_0 = sobolev_norm(theta0, 0.0)
    drift = abs(sobolev_norm(state.theta, 0.0) - l2_0) / l2_0
    wall = time.perf_counter() - t0
    report(3, drift <= 1e-6 and wall < 60.0,
           f"inviscid L2 drift {drift:.3e} <= 1e-6, {wall:.2f}s < 60s")


def test_criterion_04_maximum_principle_trend(cmt_run_10):
    _, series, wall = cmt_run_10
    linf = series.column("linf")
    worst_rise = float(np.max(np.diff(linf)))
    report(4, worst_rise <= 1e-4 and wall < 300.0,
           f"worst Linf rise between samples {worst_rise:.3e} <= 1e-4, "
           f"run {wall:.1f}s < 300s")


def test_criterion_05_linf_decay_bound(cmt_run_10):
    _, series, _ = cmt_run_10
    t = series.t
    weighted = (1.0 + t) * series.column("linf")
    sup = float(np.max(weighted))
    early = float(np.max(weighted[t <= 1.0]))  # last decade of [0, 10] is t > 1
    stabilized = early >= sup * 0.99
    report(5, np.isfinite(sup) and stabilized,
           f"sup (1+t) Linf = {sup:.4f} finite, last-decade increase "
           f"{(sup - early) / sup:.2e} < 1%")


def test_criterion_06_h1_monotone_and_h32_integrable(cmt_run_10):
    _, series, _ = cmt_run_10
    t = series.t
    linf = series.column("linf")
    h1 = series.column("h1")
    h32 = series.column("h3_2")
    below = np.nonzero(linf <= 0.1 * linf[0])[0]
    assert below.size > 0, "Linf never reached 10% of its initial value"
    i_star = int(below[0])
    t_star = t[i_star]
    rel_rise = float(np.max(np.diff(h1[i_star:]) / h1[i_star:-1]))
    total, tail = integral_tail_fraction(t[i_star:], h32[i_star:] ** 2)
    ok = rel_rise <= 1e-6 and tail < 0.01
    report(6, ok,
           f"t* = {t_star:.2f}; H1 worst rel rise {rel_rise:.3e} <= 1e-6; "
           f"integral of H3/2^2 = {total:.4g} with tail fraction {tail:.2e} < 1%")


def test_criterion_07_smoothing_rates(smoothing_run):
    _, series, wall = smoothing_run
    details = []
    ok = wall < 600.0
    for beta in (0.5, 1.0):
        column = f"h1+{beta:g}"
        fit = fit_decay_exponent(series, column, (1e-3, 1e-1))
        bound = check_boundedness(series, beta, column)
        in_band = -beta - 0.3 <= fit.alpha <= 0.0
        ok = ok and in_band and bound.stabilized and np.isfinite(bound.sup)
        details.append(f"beta={beta}: alpha={fit.alpha:.3f} in "
                       f"[{-beta - 0.3:.2f}, 0], sup={bound.sup:.3f} "
                       f"stabilized={bound.stabilized}")
    report(7, ok, "; ".join(details) + f"; run {wall:.1f}s < 600s")


def test_criterion_08_higher_norm_decay(cmt_run_50):
    _, series, wall = cmt_run_50
    bound = check_boundedness(series, 0.9, "h2", window=(1.0, 50.0))
    ok = np.isfinite(bound.sup) and bound.stabilized and wall < 600.0
    report(8, ok,
           f"sup t^0.9 H2 over [1, 50] = {bound.sup:.4f} finite, "
           f"stabilized={bound.stabilized}, run {wall:.1f}s < 600s")


def test_criterion_09_modulus_monitor():
    t0 = time.perf_counter()
    grid = Grid(128, TWO_PI)
    theta0 = inverse_transform(make_initial("cmt", grid))
    mod = build_knv_modulus(0.05, 10.0)
    result = find_scaling(theta0, mod)
    offsets = default_offsets(result.field.grid, mod.r_max)
    config = SolverConfig(gamma=1.0, kappa=1.0, cfl=0.5, dt_max=1.0)
    state = initial_state(forward_transform(result.field), config)
    ratios, margins = [], []

    def monitor(st):
        phys = inverse_transform(st.theta)
        ratios.append(check_modulus(phys, mod, offsets, t=st.t).worst_ratio)
        margins.append(gradient_bound_check(phys, mod).margin)

    monitor(state)
    run_until(state, 10.0, callbacks=[monitor],
              callback_times=[0.5 * i for i in range(1, 21)])
    wall = time.perf_counter() - t0
    ok = (result.report.worst_ratio <= 0.9 and max(ratios) <= 1.0
          and min(margins) > 0.0 and wall < 600.0)
    report(9, ok,
           f"C = {result.c} with ratio {result.report.worst_ratio:.3f} <= 0.9; "
           f"max ratio along run {max(ratios):.3f} <= 1; min gradient margin "
           f"{min(margins):.3e} > 0; {wall:.1f}s < 600s")


def test_criterion_10_scaling_symmetry():
    t0 = time.perf_counter()
    grid = Grid(128, TWO_PI)
    theta0 = band_limited_random(grid, seed=3, max_mode=grid.n // 6, amplitude=0.5)
    rep = scaling_consistency(theta0, 2, 0.5, tolerance=1e-5)
    wall = time.perf_counter() - t0
    report(10, rep.passed and wall < 120.0,
           f"C = 2 scaling discrepancy {rep.max_rel_error:.3e} <= 1e-5, "
           f"{wall:.2f}s < 120s")


def test_criterion_11_nonlinear_term_oracle():
    t0 = time.perf_counter()
    grid = Grid(16, TWO_PI)
    worst = 0.0
    for seed in range(20):
        theta = band_limited_random(grid, seed=seed, max_mode=5, amplitude=1.0)
        direct = convolution_nonlinearity(theta)
        pseudo = nonlinear_term(theta)
        scale = float(np.max(np.abs(direct.coeffs)))
        worst = max(worst, float(np.max(np.abs(direct.coeffs - pseudo.coeffs)))
                    / scale)
    wall = time.perf_counter() - t0
    report(11, worst <= 1e-10 and wall < 60.0,
           f"20-seed convolution mismatch {worst:.3e} <= 1e-10, "
           f"{wall:.2f}s < 60s")


def test_criterion_12_rk4_order():
    t0 = time.perf_counter()
    grid = Grid(64, TWO_PI)
    config = SolverConfig(gamma=1.0, kappa=1.0, dt_max=0.05)
    # the single-mode solution is reproduced exactly (the advection term
    # vanishes identically and the dissipation factor is exact), so assert
    # that first, then measure the dt^4 Richardson ratio on data with an
    # active nonlinear term
    exact = single_mode_exact(grid, 0.1)
    for dt in (0.01, 0.005):
        state = initial_state(make_initial("single_mode", grid), config)
        for _ in range(int(round(0.1 / dt))):
            state = step(state, dt)
        err = np.max(np.abs(inverse_transform(state.theta).values - exact.values))
        assert err <= 1e-12, f"single-mode step error {err:.3e} not at roundoff"
    ratio = convergence_ratio(make_initial("cmt", grid), config, 0.1, 0.01)
    wall = time.perf_counter() - t0
    report(12, 14.0 <= ratio <= 18.0 and wall < 60.0,
           f"Richardson ratio {ratio:.2f} in [14, 18] "
           f"(single-mode exact to 1e-12), {wall:.2f}s < 60s")
