"""Closed-form dynamics of the tripartite optomechanical model.

The model couples a cavity mode to a two-level atom (with an
intensity-dependent coupling ``f(n) = sqrt(1 + kappa*n)``) and a vibrating
mirror.  Starting from a coherent field, ground-state mirror and an atomic
superposition ``cos(phi)|e> + sin(phi)|g>``, each photon sector ``n``
evolves independently with three complex amplitudes ``(A_n, B_n, C_n)``.
This module evaluates those amplitudes and the mean photon number
``<N>(tau)`` on a uniform grid of the dimensionless time ``tau``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammaln

from .errors import DegenerateFrequencyError, TruncationError
from .timeseries import TimeSeries

#: Maximum Poisson tail mass tolerated outside the Fock truncation.
TAIL_TOLERANCE = 1e-12


def default_n_max(alpha_sq: float) -> int:
    """Fock cutoff with a 12-sigma Poisson tail (mass < 1e-12 at alpha_sq=25)."""
    return math.ceil(alpha_sq + 12.0 * math.sqrt(alpha_sq))


@dataclass(frozen=True)
class OptoParams:
    """Full parameter set of the optomechanical generator.

    kappa      -- intensity parameter of the coupling, in [0, 1]
    beta       -- atom-field/optomechanical coupling ratio, order unity
    alpha_sq   -- mean photon number |alpha|^2 of the initial coherent state
    phi        -- atomic superposition angle (phi=0: fully excited atom)
    n_max      -- Fock truncation index (defaults to a 12-sigma cutoff)
    tau_step   -- sampling step of the dimensionless time
    n_samples  -- samples generated before transient removal
    n_transient-- leading samples discarded
    """

    kappa: float
    beta: float
    alpha_sq: float
    phi: float
    tau_step: float
    n_samples: int
    n_transient: int = 0
    n_max: int = field(default=-1)

    def __post_init__(self):
        if self.n_max < 0:
            object.__setattr__(self, "n_max", default_n_max(self.alpha_sq))
        if not 0.0 <= self.kappa <= 1.0:
            raise ValueError(f"kappa must be in [0, 1], got {self.kappa}")
        if self.alpha_sq <= 0:
            raise ValueError("alpha_sq must be positive")
        if self.n_max < self.alpha_sq:
            raise ValueError(f"n_max={self.n_max} below alpha_sq={self.alpha_sq}")
        if self.tau_step <= 0:
            raise ValueError("tau_step must be positive")
        if not 0 <= self.n_transient < self.n_samples:
            raise ValueError("need 0 <= n_transient < n_samples")

    def snapshot(self) -> dict:
        return {
            "generator": "quantum",
            "kappa": self.kappa,
            "beta": self.beta,
            "alpha_sq": self.alpha_sq,
            "phi": self.phi,
            "n_max": self.n_max,
            "tau_step": self.tau_step,
            "n_samples": self.n_samples,
            "n_transient": self.n_transient,
        }


@dataclass(frozen=True)
class CoefficientTriple:
    """Sector amplitudes (A_n, B_n, C_n) at one (n, tau)."""

    a: complex
    b: complex
    c: complex

    def norm_sq(self) -> float:
        return abs(self.a) ** 2 + abs(self.b) ** 2 + abs(self.c) ** 2


def poisson_weights(alpha_sq: float, n_max: int) -> np.ndarray:
    """Coherent-state photon distribution, computed in log space."""
    n = np.arange(n_max + 1)
    return np.exp(-alpha_sq + n * math.log(alpha_sq) - gammaln(n + 1.0))


def sector_constants(kappa: float, beta: float, n):
    """Per-sector constants (gamma1, gamma2, u, R^2, f^2).

    ``u = n - 1/2 - beta^2 n`` is the real part entering Delta_b; the sector
    frequency satisfies R^2 = u^2 + beta^2 n f^2(n), so R^2 > 0 for every
    integer n >= 0, but the full expression is evaluated as published and
    checked rather than assumed.
    """
    n = np.asarray(n, dtype=np.float64)
    b2 = beta * beta
    f_sq = 1.0 + kappa * n
    gamma1 = n * n + b2 * (n + 1.0)
    gamma2 = n * n - n + 0.5
    u = n - 0.5 - b2 * n
    r_sq = gamma2 * gamma2 + b2 * n * f_sq - n * ((n - 1.0) ** 2 + b2 * n) * (n - b2)
    return gamma1, gamma2, u, r_sq, f_sq


class _SectorTable:
    """Constants for all sectors n = 0..n_max, cached once per parameter set."""

    def __init__(self, params: OptoParams):
        self.params = params
        n = np.arange(params.n_max + 1, dtype=np.float64)
        self.gamma1, self.gamma2, u, r_sq, f_sq = sector_constants(
            params.kappa, params.beta, n
        )
        bad = (r_sq <= 0.0) | (np.sqrt(np.abs(r_sq)) < 1e-12)
        if np.any(bad):
            i = int(np.argmax(bad))
            raise DegenerateFrequencyError(i, params.kappa, params.beta, r_sq[i])
        self.r = np.sqrt(r_sq)
        self.delta_b = -1j * u / self.r
        self.delta_c = -1j * params.beta * np.sqrt(n * f_sq) / self.r
        self.weights = poisson_weights(params.alpha_sq, params.n_max)
        tail = 1.0 - self.weights.sum()
        if tail > TAIL_TOLERANCE:
            raise TruncationError(
                f"Poisson tail mass {tail:.3e} beyond n_max={params.n_max} "
                f"exceeds {TAIL_TOLERANCE:.0e}"
            )
        self.cos_phi = math.cos(params.phi)
        self.sin_phi = math.sin(params.phi)
        self.n_values = n

    def amplitudes(self, taus: np.ndarray):
        """Complex (A, B, C) arrays of shape (len(taus), n_max + 1)."""
        taus = np.atleast_1d(np.asarray(taus, dtype=np.float64))
        rt = np.outer(taus, self.r)
        cos_rt = np.cos(rt)
        sin_rt = np.sin(rt)
        a = self.cos_phi * np.exp(1j * np.outer(taus, self.gamma1))
        phase2 = np.exp(1j * np.outer(taus, self.gamma2))
        b = self.sin_phi * phase2 * (cos_rt + self.delta_b[None, :] * sin_rt)
        c = self.sin_phi * phase2 * (self.delta_c[None, :] * sin_rt)
        return a, b, c

    def mean_photon(self, taus: np.ndarray) -> np.ndarray:
        a, b, c = self.amplitudes(taus)
        n = self.n_values
        per_sector = n * (np.abs(a) ** 2 + np.abs(b) ** 2) + (n - 1.0) * np.abs(c) ** 2
        return per_sector @ self.weights


def coefficients_at(params: OptoParams, n: int, tau: float) -> CoefficientTriple:
    """Sector amplitudes (A_n, B_n, C_n) at dimensionless time tau.

    Raises DegenerateFrequencyError if the sector frequency R is zero or
    imaginary (the closed form would divide by zero); C_0 vanishes
    identically.
    """
    if n < 0:
        raise ValueError("photon index n must be >= 0")
    gamma1, gamma2, u, r_sq, f_sq = sector_constants(params.kappa, params.beta, n)
    if r_sq <= 0.0 or math.sqrt(abs(r_sq)) < 1e-12:
        raise DegenerateFrequencyError(n, params.kappa, params.beta, float(r_sq))
    r = math.sqrt(r_sq)
    delta_b = -1j * u / r
    delta_c = -1j * params.beta * math.sqrt(n * f_sq) / r
    a = math.cos(params.phi) * np.exp(1j * gamma1 * tau)
    phase2 = np.exp(1j * gamma2 * tau)
    b = math.sin(params.phi) * phase2 * (math.cos(r * tau) + delta_b * math.sin(r * tau))
    c = phase2 * delta_c * math.sin(params.phi) * math.sin(r * tau)
    return CoefficientTriple(complex(a), complex(b), complex(c))


def mean_photon_number(params: OptoParams, tau: float) -> float:
    """Mean photon number <N>(tau) of the evolving state.

    Each sector contributes n photons through the (A_n, B_n) branches and
    n - 1 through the phonon branch C_n, weighted by the coherent-state
    Poisson distribution.
    """
    table = _SectorTable(params)
    return float(table.mean_photon(np.array([tau]))[0])


def generate_series(params: OptoParams, _chunk: int = 4096) -> TimeSeries:
    """Sample <N> at tau_k = k*tau_step and drop the leading transient."""
    table = _SectorTable(params)
    taus = np.arange(params.n_samples, dtype=np.float64) * params.tau_step
    values = np.empty(params.n_samples)
    for start in range(0, params.n_samples, _chunk):
        stop = min(start + _chunk, params.n_samples)
        values[start:stop] = table.mean_photon(taus[start:stop])
    return TimeSeries(values[params.n_transient:], params.tau_step, params.snapshot())
