"""Maximal Lyapunov exponent from average neighbor-divergence curves.

Rosenstein-style estimator: every reference point is paired with its
nearest neighbor outside a Theiler window, the pair separation is followed
for k forward steps, and the slope of <ln d_k> versus k over a linear
region is the exponent per sample.  A single nearest neighbor (lowest
index on distance ties) keeps the estimate deterministic and is adequate
for sweep-level comparisons.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

from .embedding import DelayVectors
from .errors import (
    ConstantSeriesError,
    DegeneratePairsWarning,
    InsufficientDataError,
    NoLinearRegionWarning,
)


@dataclass
class DivergenceCurve:
    """<ln d_k> against forward step k, plus the pair count feeding each mean."""

    steps: np.ndarray
    log_mean_div: np.ndarray
    n_pairs: np.ndarray


@dataclass
class MleEstimate:
    """Fitted exponent per sample; divide by the sampling step for per-time."""

    lambda_per_sample: float
    fit_range: tuple[int, int]
    fit_residual: float

    def per_time(self, dt: float) -> float:
        return self.lambda_per_sample / dt


def _nearest_valid_neighbors(base: np.ndarray, refs: np.ndarray,
                             theiler_window: int) -> tuple[np.ndarray, np.ndarray]:
    """Nearest neighbor of each reference with index gap > theiler_window."""
    n_base = base.shape[0]
    tree = cKDTree(base)
    neighbor = np.full(refs.size, -1, dtype=np.int64)
    unresolved = np.arange(refs.size)
    k_query = min(n_base, max(4, 2 * theiler_window + 2))
    while unresolved.size:
        dist, idx = tree.query(base[refs[unresolved]], k=k_query)
        dist = np.atleast_2d(dist)
        idx = np.atleast_2d(idx)
        valid = np.abs(idx - refs[unresolved][:, None]) > theiler_window
        masked = np.where(valid, dist, np.inf)
        dmin = masked.min(axis=1)
        found = np.isfinite(dmin)
        # lowest index wins among equidistant candidates
        tie_pick = np.where(masked == dmin[:, None], idx, n_base).min(axis=1)
        neighbor[unresolved[found]] = tie_pick[found]
        unresolved = unresolved[~found]
        if unresolved.size:
            if k_query >= n_base:
                raise InsufficientDataError(
                    f"{unresolved.size} reference points have no neighbor "
                    f"outside the Theiler window of {theiler_window}"
                )
            k_query = min(n_base, k_query * 2)
    return refs, neighbor


def divergence_curve(vectors: DelayVectors, theiler_window: int,
                     k_max: int, max_refs: int | None = None) -> DivergenceCurve:
    """Average log separation of neighbor pairs after k forward iterations.

    Pairs that ever coincide exactly are dropped from that step onward (and
    flagged), so every recorded mean is finite and the pair count is
    non-increasing.  ``max_refs`` thins the reference points on an even
    stride; all points are used by default.
    """
    x = vectors.vectors
    m_prime = x.shape[0]
    if m_prime <= 2 * theiler_window + k_max:
        raise InsufficientDataError(
            f"M'={m_prime} too small for theiler_window={theiler_window}, "
            f"k_max={k_max}"
        )
    n_base = m_prime - k_max
    refs = np.arange(n_base)
    if max_refs is not None and max_refs < n_base:
        stride = int(np.ceil(n_base / max_refs))
        refs = refs[::stride]
    refs, nbrs = _nearest_valid_neighbors(x[:n_base], refs, theiler_window)

    d0 = np.linalg.norm(x[refs] - x[nbrs], axis=1)
    active = d0 > 0.0
    if not np.any(active):
        raise ConstantSeriesError(
            "every neighbor pair has zero separation; embedding is degenerate"
        )
    if not np.all(active):
        warnings.warn(
            f"{int((~active).sum())} neighbor pairs at zero distance excluded",
            DegeneratePairsWarning,
        )
    steps = np.arange(k_max + 1)
    log_mean = np.full(k_max + 1, np.nan)
    n_pairs = np.zeros(k_max + 1, dtype=np.int64)
    for k in steps:
        d_k = np.linalg.norm(x[refs + k] - x[nbrs + k], axis=1)
        active &= d_k > 0.0
        n_pairs[k] = int(active.sum())
        if n_pairs[k]:
            log_mean[k] = float(np.mean(np.log(d_k[active])))
    return DivergenceCurve(steps=steps, log_mean_div=log_mean, n_pairs=n_pairs)


def _auto_fit_range(steps: np.ndarray, y: np.ndarray,
                    slope_tol: float = 0.2) -> tuple[int, int] | None:
    """Longest contiguous window whose local slopes stay within ``slope_tol``
    of their median (relative); None when no 3-point window qualifies."""
    slopes = np.diff(y) / np.diff(steps)
    n = slopes.size
    best = None
    best_len = 1
    for a in range(n):
        for b in range(a + best_len, n):
            window = slopes[a:b + 1]
            med = np.median(window)
            if med == 0.0 or not np.all(np.abs(window - med) <= slope_tol * abs(med)):
                continue
            if b - a + 1 > best_len:
                best_len = b - a + 1
                best = (int(steps[a]), int(steps[b + 1]))
    return best


def fit_mle(curve: DivergenceCurve,
            fit_range: tuple[int, int] | None = None) -> MleEstimate:
    """Least-squares slope of the divergence curve over the linear region.

    With no explicit range the longest slope-stable window is used; if none
    exists the whole populated curve is fitted and a NoLinearRegionWarning
    is emitted (best effort, e.g. on flat curves).
    """
    good = (curve.n_pairs > 0) & np.isfinite(curve.log_mean_div)
    steps = curve.steps[good]
    y = curve.log_mean_div[good]
    if steps.size < 3:
        raise InsufficientDataError("need >= 3 populated curve points to fit")
    if fit_range is None:
        fit_range = _auto_fit_range(steps, y)
        if fit_range is None:
            warnings.warn("no slope-stable linear region; fitting whole curve",
                          NoLinearRegionWarning)
            fit_range = (int(steps[0]), int(steps[-1]))
    lo, hi = fit_range
    mask = (steps >= lo) & (steps <= hi)
    if mask.sum() < 3:
        raise InsufficientDataError(
            f"fit range {fit_range} covers {int(mask.sum())} populated points; "
            f"need >= 3"
        )
    sx = steps[mask]
    sy = y[mask]
    slope, intercept = np.polyfit(sx, sy, 1)
    residual = float(np.sqrt(np.mean((sy - (slope * sx + intercept)) ** 2)))
    return MleEstimate(lambda_per_sample=float(slope),
                       fit_range=(int(lo), int(hi)),
                       fit_residual=residual)
