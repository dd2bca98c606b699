"""Social cost and the best-response operator in all three exponent regimes.

Every agent's best response is computed by the same row kernel, whether one
row is passed (``best_response_agent``) or all of them (``best_response``).
Reductions always run along the last, contiguous axis so a row gives the
same bits either way.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .core import InfluenceMatrix, ModelParams, as_opinions


class Regime(enum.Enum):
    SUPERLINEAR = "superlinear"  # alpha > 1
    MEDIAN = "median"  # alpha == 1
    SUBLINEAR = "sublinear"  # alpha < 1


def regime_of(alpha: float) -> Regime:
    if alpha > 1:
        return Regime.SUPERLINEAR
    if alpha == 1:
        return Regime.MEDIAN
    return Regime.SUBLINEAR


@dataclass(frozen=True, eq=False)
class BestResponseResult:
    values: np.ndarray
    regime: Regime


def cost(i: int, z: float, x, W: InfluenceMatrix, alpha: float) -> float:
    """Social cost ``sum_j w_ij |z - x_j|**alpha``, summed left to right."""
    row = W.weights[i]
    total = 0.0
    for j in range(len(row)):
        total += float(row[j]) * abs(z - float(x[j])) ** alpha
    return total


def cost_derivative(z, x, rows, alpha: float) -> np.ndarray:
    """``sum_j w_ij sign(z_i - x_j) |z_i - x_j|**(alpha-1)`` per row.

    The constant factor ``alpha`` is dropped; only the sign is used by the
    bisection and by the optimality certificate.
    """
    d = np.asarray(z, dtype=np.float64)[..., None] - x
    return (rows * (np.sign(d) * np.abs(d) ** (alpha - 1.0))).sum(axis=-1)


def _support_range(x: np.ndarray, rows: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # opinions carrying positive weight bound the minimiser for alpha > 1
    support = rows > 0
    lo = np.where(support, x, np.inf).min(axis=1)
    hi = np.where(support, x, -np.inf).max(axis=1)
    return lo, hi


def _superlinear(x, rows, own, alpha, tol_opt):
    if alpha == 2.0:
        # weighted mean, written relative to the agent's own opinion
        return own + (rows * (x[None, :] - own[:, None])).sum(axis=1)
    lo, hi = _support_range(x, rows)
    active = hi - lo > tol_opt
    while active.any():
        idx = np.flatnonzero(active)
        mid = 0.5 * (lo[idx] + hi[idx])
        g = cost_derivative(mid, x, rows[idx], alpha)
        hi[idx[g > 0]] = mid[g > 0]
        lo[idx[g < 0]] = mid[g < 0]
        exact = g == 0
        lo[idx[exact]] = hi[idx[exact]] = mid[exact]
        active[idx] = hi[idx] - lo[idx] > tol_opt
    return 0.5 * (lo + hi)


def _pick(candidates, minimisers, own):
    """Apply proximity then smallest-value tie-breaking over a boolean mask.

    ``candidates`` is sorted ascending, so ``argmin`` returning the first
    minimal distance is exactly the smallest-value rule.
    """
    dist = np.abs(candidates[None, :] - own[:, None])
    dist = np.where(minimisers, dist, np.inf)
    return candidates[np.argmin(dist, axis=1)]


def candidate_costs(candidates, x, rows, alpha) -> np.ndarray:
    """Cost of each candidate opinion for each row, shape (rows, candidates)."""
    powered = np.abs(candidates[:, None] - x[None, :]) ** alpha
    return (rows[:, None, :] * powered[None, :, :]).sum(axis=-1)


def _sublinear(x, rows, own, alpha, tol_tie):
    cands = np.unique(x)
    c = candidate_costs(cands, x, rows, alpha)
    best = c.min(axis=1, keepdims=True)
    return _pick(cands, c <= best * (1.0 + tol_tie), own)


def _median(x, rows, own, tol_tie):
    cands = np.unique(x)
    below = (rows[:, None, :] * (x[None, None, :] < cands[None, :, None])).sum(axis=-1)
    above = (rows[:, None, :] * (x[None, None, :] > cands[None, :, None])).sum(axis=-1)
    ok = (below <= 0.5 + tol_tie) & (above <= 0.5 + tol_tie)
    return _pick(cands, ok, own)


def _kernel(x: np.ndarray, rows: np.ndarray, own: np.ndarray, params: ModelParams) -> np.ndarray:
    r = regime_of(params.alpha)
    if r is Regime.SUPERLINEAR:
        return _superlinear(x, rows, own, params.alpha, params.tol_opt)
    if r is Regime.MEDIAN:
        return _median(x, rows, own, params.tol_tie)
    return _sublinear(x, rows, own, params.alpha, params.tol_tie)


def best_response_agent(i: int, x, W: InfluenceMatrix, params: ModelParams) -> float:
    x = np.asarray(x, dtype=np.float64)
    if not 0 <= i < W.n:
        raise IndexError(f"agent index {i} out of range for n={W.n}")
    return float(_kernel(x, W.weights[i : i + 1], x[i : i + 1], params)[0])


def best_response(x, W: InfluenceMatrix, params: ModelParams) -> BestResponseResult:
    """Synchronous best response of every agent to the same state ``x``."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (W.n,):
        raise ValueError(f"opinion vector has shape {x.shape}, matrix is {W.n}x{W.n}")
    return BestResponseResult(as_opinions(_kernel(x, W.weights, x, params)), regime_of(params.alpha))
