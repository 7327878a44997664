"""Time evolution of the dissipative quasi-geostrophic equation.

The state advances by classical RK4 applied to the integrating-factor
variable phi(t) = exp(kappa |k|^gamma t) theta(t), so the dissipation
semigroup is applied exactly and only the advection term is integrated
numerically.  Advection is assembled pseudo-spectrally with 2/3-rule
dealiasing.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .errors import BlowUpError, BudgetError, ParameterError
from .spectral import (
    SpectralField,
    _ifft_real,
    dealias,
    gradient,
    inverse_transform,
    riesz_velocity,
)


@dataclass(frozen=True)
class SolverConfig:
    """Dynamics parameters.

    kappa = 1 is the dissipative equation; kappa = 0 the inviscid advection
    used by conservation oracles.  nonlinear_enabled = False drops the
    advection term (pure fractional heat flow).
    """

    gamma: float
    kappa: float = 1.0
    cfl: float = 0.5
    dt_max: float = 0.05
    dt_min: float = 1e-10
    dealias_enabled: bool = True
    nonlinear_enabled: bool = True

    def __post_init__(self):
        if not 0.0 < self.gamma <= 2.0:
            raise ParameterError(f"gamma must lie in (0, 2], got {self.gamma}")
        if self.kappa < 0.0:
            raise ParameterError(f"kappa must be >= 0, got {self.kappa}")
        if not 0.0 < self.cfl <= 1.0:
            raise ParameterError(f"cfl must lie in (0, 1], got {self.cfl}")
        if not 0.0 < self.dt_min <= self.dt_max:
            raise ParameterError(
                f"need 0 < dt_min <= dt_max, got ({self.dt_min}, {self.dt_max})")


@dataclass(frozen=True)
class SolverState:
    """One point on a trajectory: (t, theta, current dt, config, step count)."""

    t: float
    theta: SpectralField
    dt: float
    config: SolverConfig
    step_count: int = 0


def initial_state(theta0: SpectralField, config: SolverConfig) -> SolverState:
    theta = dealias(theta0) if config.dealias_enabled else theta0
    return SolverState(t=0.0, theta=theta, dt=config.dt_max, config=config)


def nonlinear_term(theta: SpectralField, dealias_enabled: bool = True,
                   validate: bool = True) -> SpectralField:
    """Spectral coefficients of u . grad(theta), assembled pseudo-spectrally.

    Velocity and gradient are evaluated by multipliers, the product is formed
    in physical space, transformed back, and truncated by the 2/3 rule when
    enabled.  For divergence-free u the mean of the product vanishes, so the
    zero mode of the output is zero up to roundoff.  With validate=False the
    inverse transforms skip their symmetry checks (solver hot path; the
    stepper screens for non-finite output itself).
    """
    vel = riesz_velocity(theta)
    g1, g2 = gradient(theta)
    if validate:
        u1 = inverse_transform(vel.u1).values
        u2 = inverse_transform(vel.u2).values
        t1 = inverse_transform(g1).values
        t2 = inverse_transform(g2).values
    else:
        u1, u2 = _ifft_real(vel.u1), _ifft_real(vel.u2)
        t1, t2 = _ifft_real(g1), _ifft_real(g2)
    n = theta.grid.n
    product = np.fft.fft2(u1 * t1 + u2 * t2) / (n ** 2)
    out = SpectralField(theta.grid, product)
    return dealias(out) if dealias_enabled else out


def _rhs(theta: SpectralField, config: SolverConfig) -> np.ndarray:
    if not config.nonlinear_enabled:
        return np.zeros_like(theta.coeffs)
    return -nonlinear_term(theta, config.dealias_enabled, validate=False).coeffs


def step(state: SolverState, dt: float | None = None) -> SolverState:
    """Advance one integrating-factor RK4 step of size dt (default state.dt)."""
    config = state.config
    if dt is None:
        dt = state.dt
    if not np.isfinite(dt) or dt <= 0.0:
        raise ParameterError(f"step size must be positive, got {dt}")
    if dt > config.dt_max * (1.0 + 1e-12):
        raise ParameterError(f"step size {dt} exceeds dt_max = {config.dt_max}")

    grid = state.theta.grid
    lam = config.kappa * grid.kmag_pow(config.gamma)
    e_full = np.exp(-lam * dt)
    e_half = np.exp(-lam * (0.5 * dt))

    th = state.theta.coeffs
    field = lambda c: SpectralField(grid, c)
    with np.errstate(over="ignore", invalid="ignore"):
        g1 = _rhs(state.theta, config)
        g2 = _rhs(field(e_half * (th + (0.5 * dt) * g1)), config)
        g3 = _rhs(field(e_half * th + (0.5 * dt) * g2), config)
        g4 = _rhs(field(e_full * th + dt * (e_half * g3)), config)
        new = e_full * th + (dt / 6.0) * (e_full * g1 + 2.0 * e_half * (g2 + g3) + g4)

    if not np.all(np.isfinite(new)):
        bad = ~np.isfinite(new)
        kmag_bad = np.where(bad, grid.kmag, -1.0)
        mode = np.unravel_index(int(np.argmax(kmag_bad)), new.shape)
        m = np.fft.fftfreq(grid.n, d=1.0 / grid.n).astype(int)
        raise BlowUpError(state.t + dt, state.step_count + 1,
                          (m[mode[0]], m[mode[1]]))

    return SolverState(
        t=state.t + dt,
        theta=SpectralField(grid, new),
        dt=dt,
        config=config,
        step_count=state.step_count + 1,
    )


def adapt_dt(state: SolverState) -> float:
    """Advective CFL step: clamp(cfl * dx / ||u||_inf, dt_min, dt_max)."""
    config = state.config
    if not config.nonlinear_enabled:
        return config.dt_max
    vel = riesz_velocity(state.theta)
    umax = float(np.max(np.hypot(_ifft_real(vel.u1), _ifft_real(vel.u2))))
    if umax == 0.0:
        return config.dt_max
    dt = config.cfl * state.theta.grid.dx / umax
    return float(min(config.dt_max, max(config.dt_min, dt)))


def run_until(
    state: SolverState,
    t_end: float,
    callbacks=(),
    callback_times=None,
    max_steps: int = 1_000_000,
) -> SolverState:
    """Advance to t_end, landing exactly on t_end and every callback time.

    callback_times is an increasing sequence of times in (state.t, t_end];
    every callback is invoked with the state at each of those times (and not
    otherwise).  Steps are chosen by adapt_dt, truncated to hit scheduled
    times exactly, so the trajectory is deterministic for a given schedule.
    """
    if t_end < state.t:
        raise ParameterError(f"t_end = {t_end} precedes current t = {state.t}")
    events = [] if callback_times is None else sorted(
        {float(tc) for tc in callback_times if state.t < tc <= t_end})
    schedule = list(events)
    if not schedule or schedule[-1] < t_end:
        schedule.append(float(t_end))
    event_set = set(events)
    steps_taken = 0
    for target in schedule:
        eps = 1e-14 * max(1.0, abs(target))
        while state.t < target - eps:
            if steps_taken >= max_steps:
                raise BudgetError(
                    f"exceeded {max_steps} steps before reaching t = {t_end}")
            dt = min(adapt_dt(state), target - state.t)
            state = step(state, dt)
            steps_taken += 1
        # snap to the scheduled time so diagnostic stamps are exact
        if state.t != target:
            state = replace(state, t=target)
        if target in event_set:
            for cb in callbacks:
                cb(state)
    return state
