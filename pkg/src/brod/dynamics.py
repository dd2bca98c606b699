"""Synchronous inertial best-response updates and trajectory classification."""

from __future__ import annotations

import csv
import enum
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .best_response import best_response
from .core import InfluenceMatrix, ModelParams, ValidationError, as_opinions

DEFAULT_CONSENSUS_TOL = 1e-6
DEFAULT_PERIOD_CAP = 50
FULL_HISTORY_LIMIT = 10_000
THIN_EVERY = 10
# a detected cycle must move by more than this many multiples of tol_conv
# per step somewhere in the period; smaller swings are slow convergence.
OSCILLATION_AMPLITUDE_FACTOR = 100.0


class OrderViolationError(ValidationError):
    pass


class Status(enum.Enum):
    CONVERGED = "converged"
    OSCILLATING = "oscillating"
    UNDETERMINED = "undetermined"


@dataclass
class TrajectoryResult:
    final: np.ndarray
    status: Status
    iterations: int
    consensus: bool
    diversity: Optional[float]
    period: Optional[int] = None
    history: list[np.ndarray] = field(default_factory=list, repr=False)
    history_steps: list[int] = field(default_factory=list, repr=False)

    @property
    def converged(self) -> bool:
        return self.status is Status.CONVERGED

    def summary(self) -> dict:
        return {
            "status": self.status.value,
            "period": self.period,
            "iterations": self.iterations,
            "consensus": self.consensus,
            "diversity": self.diversity,
            "final": [float(v) for v in self.final],
        }


def step(x, W: InfluenceMatrix, params: ModelParams) -> np.ndarray:
    """One update ``beta * x + (1 - beta) * BR(x)``.

    Evaluated as ``x + (1 - beta) * (BR(x) - x)`` so agents whose best
    response is their own opinion keep it bit for bit.
    """
    x = np.asarray(x, dtype=np.float64)
    br = best_response(x, W, params).values
    return x + (1.0 - params.beta) * (br - x)


def simulate(
    x0,
    W: InfluenceMatrix,
    params: ModelParams,
    consensus_tol: float = DEFAULT_CONSENSUS_TOL,
    period_cap: int = DEFAULT_PERIOD_CAP,
    record_history: bool = True,
) -> TrajectoryResult:
    """Iterate ``step`` from ``x0`` until convergence, a detected cycle, or ``max_iters``.

    Cycle detection keeps the last ``2 * period_cap + 1`` states in a ring buffer
    and looks for the smallest ``T >= 2`` such that the whole last period
    repeats the one before it within ``tol_conv``.
    """
    if consensus_tol <= 0:
        raise ValidationError(f"consensus_tol must be > 0, got {consensus_tol}")
    if period_cap < 2:
        raise ValidationError(f"period_cap must be >= 2, got {period_cap}")
    x = np.array(as_opinions(x0))
    tol = params.tol_conv
    history: list[np.ndarray] = []
    steps: list[int] = []

    def record(k, state):
        if record_history and (k < FULL_HISTORY_LIMIT or k % THIN_EVERY == 0):
            history.append(state.copy())
            steps.append(k)

    record(0, x)
    # window[k % size] is x(k) for the most recent `size` steps
    size = 2 * period_cap + 1
    window = np.empty((size, x.size))
    window[0] = x
    jumps = np.zeros(size)  # jumps[k % size] = max |x(k) - x(k-1)|
    status, period = Status.UNDETERMINED, None
    k = 0
    while k < params.max_iters:
        nxt = step(x, W, params)
        k += 1
        jump = float(np.max(np.abs(nxt - x)))
        x = nxt
        window[k % size] = x
        jumps[k % size] = jump
        record(k, x)
        if jump <= tol:
            status = Status.CONVERGED
            break
        period = _detect_period(window, jumps, k, size, period_cap, tol)
        if period is not None:
            status = Status.OSCILLATING
            break

    if record_history and steps[-1] != k:
        history.append(x.copy())
        steps.append(k)
    final = as_opinions(x)
    consensus = False
    diversity = None
    if status is Status.CONVERGED:
        consensus = bool(final.max() - final.min() <= consensus_tol)
        diversity = float(np.std(final))
    return TrajectoryResult(final, status, k, consensus, diversity, period, history, steps)


def _detect_period(window, jumps, k, size, period_cap, tol) -> Optional[int]:
    lags = np.arange(2, min(period_cap, k // 2) + 1)
    if lags.size == 0:
        return None
    now = window[k % size]
    close = np.max(np.abs(window[(k - lags) % size] - now), axis=1) <= tol
    for T in lags[close]:
        recent = (k - np.arange(T)) % size
        lagged = (recent - T) % size
        if np.max(np.abs(window[recent] - window[lagged])) <= tol:
            if jumps[recent].max() > OSCILLATION_AMPLITUDE_FACTOR * tol:
                return int(T)
    return None


def check_type_k_pair(x, y, W: InfluenceMatrix, params: ModelParams) -> bool:
    """Order-preservation check of ``step`` on an ordered pair ``x <= y``."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if np.any(x > y):
        i = int(np.flatnonzero(x > y)[0])
        raise OrderViolationError(f"need x <= y componentwise; x[{i}]={x[i]} > y[{i}]={y[i]}")
    fx, fy = step(x, W, params), step(y, W, params)
    tol = params.tol_opt
    if np.any(fx > fy + tol):
        return False
    strict = x < y
    return bool(np.all(fx[strict] < fy[strict] + tol))


def check_subhomogeneous(x, k: float, W: InfluenceMatrix, params: ModelParams) -> bool:
    """``step(k x) >= k step(x)`` up to ``tol_opt``, for ``x >= 0`` and ``k`` in [0, 1]."""
    x = np.asarray(x, dtype=np.float64)
    if np.any(x < 0):
        raise ValidationError("sub-homogeneity is defined on nonnegative vectors")
    if not 0 <= k <= 1:
        raise ValidationError(f"k must lie in [0, 1], got {k}")
    return bool(np.all(step(k * x, W, params) >= k * step(x, W, params) - params.tol_opt))


def write_trajectory_csv(result: TrajectoryResult, path) -> None:
    n = result.final.size
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["step"] + [f"x{i}" for i in range(n)])
        for k, state in zip(result.history_steps, result.history):
            w.writerow([k] + [repr(float(v)) for v in state])
