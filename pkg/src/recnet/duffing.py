"""Driven, damped, coupled Duffing oscillators.

Two oscillators with identical stiffness and cubic nonlinearity are
coupled linearly; only the first is driven:

    x1'' = -delta1*x1' - w^2*x1 - zeta*x1^3 + W^2*x2 + f*sin(Omega_d*t)
    x2'' = -delta2*x2' - w^2*x2 - zeta*x2^3 + W^2*x1

(w = omega_cl stiffness, W = Omega_cl coupling).  The analyzed observable
is the velocity x2'.  Integration is classic fixed-step fourth-order
Runge-Kutta: the downstream delay embedding requires a strictly uniform
sampling grid, so adaptive stepping is deliberately not offered.
"""

from __future__ import annotations

from dataclasses import dataclass

import numba
import numpy as np

from .errors import DivergenceError
from .timeseries import TimeSeries

DIVERGENCE_LIMIT = 1e12


@dataclass(frozen=True)
class DuffingParams:
    """Parameters, initial state and sampling plan of the integrator.

    ``decimate`` keeps one sample per that many integrator steps;
    ``n_samples``/``n_transient`` count recorded samples, so the series
    step is ``dt * decimate``.
    """

    delta1: float
    delta2: float
    omega_cl: float
    Omega_cl: float
    zeta: float
    f_amp: float
    Omega_d: float
    dt: float
    n_samples: int
    n_transient: int = 0
    x1_0: float = 1.0
    v1_0: float = 0.0
    x2_0: float = 0.0
    v2_0: float = 0.0
    decimate: int = 1

    def __post_init__(self):
        if self.dt <= 0:
            raise ValueError("dt must be positive")
        if self.delta1 < 0 or self.delta2 < 0:
            raise ValueError("damping coefficients must be >= 0")
        if self.decimate < 1:
            raise ValueError("decimate must be >= 1")
        if not 0 <= self.n_transient < self.n_samples:
            raise ValueError("need 0 <= n_transient < n_samples")
        for name in ("delta1", "delta2", "omega_cl", "Omega_cl", "zeta",
                     "f_amp", "Omega_d", "dt", "x1_0", "v1_0", "x2_0", "v2_0"):
            if not np.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")

    def snapshot(self) -> dict:
        return {
            "generator": "duffing",
            "delta1": self.delta1,
            "delta2": self.delta2,
            "omega_cl": self.omega_cl,
            "Omega_cl": self.Omega_cl,
            "zeta": self.zeta,
            "f_amp": self.f_amp,
            "Omega_d": self.Omega_d,
            "dt": self.dt,
            "n_samples": self.n_samples,
            "n_transient": self.n_transient,
            "x1_0": self.x1_0,
            "v1_0": self.v1_0,
            "x2_0": self.x2_0,
            "v2_0": self.v2_0,
            "decimate": self.decimate,
        }


@dataclass
class OscState:
    """Positions and velocities of both oscillators at time t."""

    x1: float
    v1: float
    x2: float
    v2: float
    t: float = 0.0


def derivative(state: OscState, params: DuffingParams) -> OscState:
    """Flow field (x1', x1'', x2', x2'') packed as an OscState rate."""
    w2 = params.omega_cl**2
    c2 = params.Omega_cl**2
    a1 = (-params.delta1 * state.v1 - w2 * state.x1 - params.zeta * state.x1**3
          + c2 * state.x2 + params.f_amp * np.sin(params.Omega_d * state.t))
    a2 = (-params.delta2 * state.v2 - w2 * state.x2 - params.zeta * state.x2**3
          + c2 * state.x1)
    return OscState(x1=state.v1, v1=a1, x2=state.v2, v2=a2, t=1.0)


@numba.njit(cache=True)
def _rk4_run(y0, t0, dt, n_record, decimate, d1, d2, w2, c2, zeta, f, wd, out):
    """Record y[3] (= x2') every `decimate` steps; returns -1 or the step
    index at which the state magnitude first exceeded the divergence limit."""
    x1, v1, x2, v2 = y0[0], y0[1], y0[2], y0[3]
    step = 0
    for k in range(n_record):
        out[k, 0] = x1
        out[k, 1] = v1
        out[k, 2] = x2
        out[k, 3] = v2
        if k == n_record - 1:
            break
        for _ in range(decimate):
            t = t0 + step * dt
            # k1
            a1 = -d1 * v1 - w2 * x1 - zeta * x1**3 + c2 * x2 + f * np.sin(wd * t)
            a2 = -d2 * v2 - w2 * x2 - zeta * x2**3 + c2 * x1
            k1 = (v1, a1, v2, a2)
            # k2
            xa = x1 + 0.5 * dt * k1[0]
            va = v1 + 0.5 * dt * k1[1]
            xb = x2 + 0.5 * dt * k1[2]
            vb = v2 + 0.5 * dt * k1[3]
            th = t + 0.5 * dt
            a1 = -d1 * va - w2 * xa - zeta * xa**3 + c2 * xb + f * np.sin(wd * th)
            a2 = -d2 * vb - w2 * xb - zeta * xb**3 + c2 * xa
            k2 = (va, a1, vb, a2)
            # k3
            xa = x1 + 0.5 * dt * k2[0]
            va = v1 + 0.5 * dt * k2[1]
            xb = x2 + 0.5 * dt * k2[2]
            vb = v2 + 0.5 * dt * k2[3]
            a1 = -d1 * va - w2 * xa - zeta * xa**3 + c2 * xb + f * np.sin(wd * th)
            a2 = -d2 * vb - w2 * xb - zeta * xb**3 + c2 * xa
            k3 = (va, a1, vb, a2)
            # k4
            xa = x1 + dt * k3[0]
            va = v1 + dt * k3[1]
            xb = x2 + dt * k3[2]
            vb = v2 + dt * k3[3]
            tf = t + dt
            a1 = -d1 * va - w2 * xa - zeta * xa**3 + c2 * xb + f * np.sin(wd * tf)
            a2 = -d2 * vb - w2 * xb - zeta * xb**3 + c2 * xa
            k4 = (va, a1, vb, a2)

            x1 += dt * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]) / 6.0
            v1 += dt * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]) / 6.0
            x2 += dt * (k1[2] + 2.0 * k2[2] + 2.0 * k3[2] + k4[2]) / 6.0
            v2 += dt * (k1[3] + 2.0 * k2[3] + 2.0 * k3[3] + k4[3]) / 6.0
            step += 1
            m = max(abs(x1), abs(v1), abs(x2), abs(v2))
            if m > DIVERGENCE_LIMIT or not np.isfinite(m):
                return step
    return -1


def integrate_states(params: DuffingParams, t0: float = 0.0) -> np.ndarray:
    """Full (n_samples, 4) state history at the sampling grid, transient
    included.  Used by the velocity observable and by the integrator tests."""
    y0 = np.array([params.x1_0, params.v1_0, params.x2_0, params.v2_0])
    out = np.empty((params.n_samples, 4))
    bad_step = _rk4_run(
        y0, t0, params.dt, params.n_samples, params.decimate,
        params.delta1, params.delta2, params.omega_cl**2, params.Omega_cl**2,
        params.zeta, params.f_amp, params.Omega_d, out,
    )
    if bad_step >= 0:
        raise DivergenceError(bad_step)
    return out


def integrate(params: DuffingParams) -> TimeSeries:
    """Velocity series x2'(t) sampled every dt*decimate, transient removed."""
    states = integrate_states(params)
    return TimeSeries(
        states[params.n_transient:, 3].copy(),
        params.dt * params.decimate,
        params.snapshot(),
    )
