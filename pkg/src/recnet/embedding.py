"""Delay estimation and phase-space reconstruction from a scalar series.

The delay t_d comes from the first minimum of the average mutual
information between the series and its lagged copy (histogram estimator,
base-2 logarithm); the embedding dimension from a Kennel-style false
nearest neighbor scan.  Delay vectors are

    x_j = [s(j), s(j + t_d), ..., s(j + (d_emb - 1) t_d)],

giving M' = M - (d_emb - 1) t_d points in d_emb dimensions.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

from .errors import (
    ConstantSeriesWarning,
    InsufficientDataError,
    LagTooLargeError,
    NoLocalMinimumWarning,
    ThresholdNeverMetWarning,
)
from .timeseries import TimeSeries


@dataclass
class AmiCurve:
    """Average mutual information I(T) in bits at the scanned lags."""

    lags: np.ndarray
    bits: np.ndarray


@dataclass
class DelayVectors:
    """Embedded state vectors plus the embedding that produced them."""

    vectors: np.ndarray
    t_d: int
    d_emb: int
    source_len: int

    def __len__(self):
        return self.vectors.shape[0]


def _as_values(series) -> np.ndarray:
    if isinstance(series, TimeSeries):
        return series.values
    return np.asarray(series, dtype=np.float64)


def average_mutual_information(series, lag: int, n_bins: int = 64) -> float:
    """I(T) in bits between s(i) and s(i+T), from an equal-width 2-D histogram.

    Marginals are taken from the same overlapping pair set as the joint
    histogram, so the estimate is symmetric under time reversal and
    non-negative.  A constant series carries no information: returns 0.0
    with a ConstantSeriesWarning.
    """
    s = _as_values(series)
    m = s.size
    if not 0 < lag < m:
        raise ValueError(f"lag must be in (0, {m}), got {lag}")
    if n_bins < 2:
        raise ValueError("n_bins must be >= 2")
    if m - lag < 10 * n_bins:
        raise LagTooLargeError(
            f"only {m - lag} pairs at lag {lag}; need >= {10 * n_bins} "
            f"for {n_bins} bins"
        )
    lo, hi = s.min(), s.max()
    if lo == hi:
        warnings.warn("constant series: mutual information defined as 0",
                      ConstantSeriesWarning)
        return 0.0
    joint, _, _ = np.histogram2d(
        s[:m - lag], s[lag:], bins=n_bins, range=[[lo, hi], [lo, hi]]
    )
    total = joint.sum()
    p_joint = joint / total
    p_x = p_joint.sum(axis=1)
    p_y = p_joint.sum(axis=0)
    nz = p_joint > 0
    denom = np.outer(p_x, p_y)
    return float(np.sum(p_joint[nz] * np.log2(p_joint[nz] / denom[nz])))


def ami_curve(series, lags, n_bins: int = 64) -> AmiCurve:
    """Scan I(T) over the given lags (positive, strictly increasing)."""
    lags = np.asarray(lags, dtype=np.int64)
    if lags.size == 0 or np.any(np.diff(lags) <= 0) or lags[0] < 1:
        raise ValueError("lags must be positive and strictly increasing")
    bits = np.array([average_mutual_information(series, int(t), n_bins)
                     for t in lags])
    return AmiCurve(lags=lags, bits=bits)


def find_delay(curve: AmiCurve) -> int:
    """First local minimum of the AMI curve, ties broken toward smaller lag.

    Falls back to the argmin (with a NoLocalMinimumWarning) when the curve is
    monotone within the scanned range.
    """
    bits = curve.bits
    if bits.size < 3:
        raise ValueError("need at least 3 curve points to locate a minimum")
    for k in range(1, bits.size - 1):
        if bits[k - 1] > bits[k] <= bits[k + 1]:
            return int(curve.lags[k])
    warnings.warn("no local AMI minimum in scanned range; using argmin",
                  NoLocalMinimumWarning)
    return int(curve.lags[int(np.argmin(bits))])


def embed(series, t_d: int, d_emb: int) -> DelayVectors:
    """Delay vectors x_j; coordinate c of vector j is series[j + c*t_d]."""
    s = _as_values(series)
    m = s.size
    if d_emb < 1:
        raise ValueError("d_emb must be >= 1")
    if t_d < 1:
        raise ValueError("t_d must be >= 1")
    span = (d_emb - 1) * t_d
    if span >= m:
        raise ValueError(
            f"(d_emb - 1)*t_d = {span} must be < series length {m}"
        )
    m_prime = m - span
    vectors = np.empty((m_prime, d_emb))
    for c in range(d_emb):
        vectors[:, c] = s[c * t_d:c * t_d + m_prime]
    return DelayVectors(vectors=vectors, t_d=t_d, d_emb=d_emb, source_len=m)


def false_nearest_neighbors(series, t_d: int, d: int,
                            r_tol: float = 10.0, a_tol: float = 2.0) -> float:
    """Fraction of dimension-d nearest neighbors that are false in d+1.

    A neighbor pair is false if the extra-coordinate separation exceeds
    r_tol times its distance in dimension d, or if the lifted distance
    exceeds a_tol standard deviations of the series.
    """
    s = _as_values(series)
    if t_d < 1:
        raise ValueError("t_d must be >= 1")
    if d < 1:
        raise ValueError("trial dimension d must be >= 1")
    span = d * t_d
    if span >= s.size:
        raise InsufficientDataError(
            f"series of {s.size} cannot be embedded in dimension {d + 1} "
            f"with t_d={t_d}"
        )
    n_pts = s.size - span
    if n_pts < 100:
        raise InsufficientDataError(
            f"only {n_pts} points at dimension {d + 1}; need >= 100"
        )
    base = embed(s, t_d, d).vectors[:n_pts]
    extra = s[span:span + n_pts]
    sigma = s.std()
    tree = cKDTree(base)
    dist, idx = tree.query(base, k=2)
    neighbor = idx[:, 1]
    r_d = dist[:, 1]
    gap = np.abs(extra - extra[neighbor])
    lifted = np.sqrt(r_d**2 + gap**2)
    ratio = np.full(n_pts, np.inf)
    nz = r_d > 0
    ratio[nz] = gap[nz] / r_d[nz]
    ratio[(r_d == 0) & (gap == 0)] = 0.0
    false = (ratio > r_tol) | (lifted > a_tol * sigma)
    return float(false.mean())


def choose_embedding_dim(series, t_d: int, d_max: int = 10,
                         threshold: float = 0.01) -> int:
    """Smallest dimension whose false-neighbor fraction drops below threshold.

    Returns d_max with a ThresholdNeverMetWarning when no dimension
    qualifies (noise-like series never unfold).
    """
    s = _as_values(series)
    if s.min() == s.max():
        raise ValueError("constant series cannot be embedded meaningfully")
    last_feasible = None
    for d in range(1, d_max + 1):
        try:
            frac = false_nearest_neighbors(s, t_d, d)
        except InsufficientDataError:
            break
        last_feasible = d
        if frac < threshold:
            return d
    if last_feasible is None:
        raise InsufficientDataError(
            f"series too short for any embedding dimension at t_d={t_d}"
        )
    warnings.warn(
        f"false-neighbor fraction never dropped below {threshold} "
        f"(scanned d <= {last_feasible})", ThresholdNeverMetWarning)
    return last_feasible
