"""Instantaneous smoothing from rough data.

The random_h1 preset has unit homogeneous H1 norm but a spectrum right at
the edge of H1, so higher Sobolev norms are large at t = 0+ and collapse
immediately.  Weighted sups t^beta ||theta||_{H^{1+beta}} stay bounded,
and log-log fits over early times recover smoothing exponents between
-beta and 0 (the grid cuts the spectrum, so the measured exponent is
shallower than the continuum rate).
"""

import math

import numpy as np

import sqglab as sq

grid = sq.Grid(128, 2 * math.pi)
theta0 = sq.make_initial("random_h1", grid, seed=7)
print(f"initial norms: H1 = {sq.sobolev_norm(theta0, 1.0):.4f}, "
      f"H1.5 = {sq.sobolev_norm(theta0, 1.5):.4f}, "
      f"H2 = {sq.sobolev_norm(theta0, 2.0):.4f}")

config = sq.SolverConfig(gamma=1.0, kappa=1.0, cfl=0.5, dt_max=0.05)
series = sq.NormSeries(betas=(0.5, 1.0))
state = sq.initial_state(theta0, config)
sq.record_norms(state, series)

# log-spaced samples from t = 1e-4 through t = 10
times = sorted({1e-4 * 10 ** (j / 12) for j in range(61)} | {10.0})
times = [t for t in times if t <= 10.0]
print("running to t = 10 with log-spaced sampling ...")
sq.run_until(state, 10.0, callbacks=[lambda st: sq.record_norms(st, series)],
             callback_times=times)

for beta in (0.5, 1.0):
    column = f"h1+{beta:g}"
    fit = sq.fit_decay_exponent(series, column, (1e-3, 1e-1))
    bound = sq.check_boundedness(series, beta, column)
    print(f"beta = {beta}:")
    print(f"  fitted exponent of ||theta||_H{1 + beta:g} on [1e-3, 1e-1]: "
          f"{fit.alpha:.3f} (residual {fit.residual_rms:.1e})")
    print(f"  sup t^{beta:g} ||theta||_H{1 + beta:g} = {bound.sup:.4f}, "
          f"stabilized: {bound.stabilized}")

t = series.t
h2 = series.column("h2")
early = t[(t > 0) & (t < 2e-3)]
print(f"H2 at t = {early[0]:.1e}: {h2[1]:.3f}  ->  H2 at t = 1: "
      f"{h2[np.searchsorted(t, 1.0)]:.5f} (instantaneous collapse, then decay)")
