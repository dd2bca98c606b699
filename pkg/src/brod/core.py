"""Domain types and validation shared by the rest of the package.

Opinion vectors are plain read-only ``float64`` numpy arrays; influence
matrices and digraphs get thin frozen wrappers so validation happens once,
at construction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

ROW_SUM_TOL = 1e-9


class ValidationError(ValueError):
    """Base class for every invalid-input error raised by this package."""


class NonSquareError(ValidationError):
    pass


class NegativeWeightError(ValidationError):
    pass


class RowSumViolationError(ValidationError):
    pass


class ZeroRowError(ValidationError):
    pass


class NonFiniteError(ValidationError):
    pass


class ConfigInvalidError(ValidationError):
    pass


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=np.float64, copy=True)
    a.setflags(write=False)
    return a


def as_opinions(values) -> np.ndarray:
    """Validate and freeze an opinion vector (1-D, length >= 1, finite)."""
    x = np.asarray(values, dtype=np.float64)
    if x.ndim != 1 or x.size < 1:
        raise ValidationError(f"opinion vector must be 1-D with length >= 1, got shape {x.shape}")
    bad = np.flatnonzero(~np.isfinite(x))
    if bad.size:
        raise NonFiniteError(f"opinion vector: entry {bad[0]} is not finite ({x[bad[0]]})")
    return _frozen(x)


@dataclass(frozen=True)
class Digraph:
    """Directed graph on nodes ``0..n-1``; ``adjacency[i]`` lists out-neighbours."""

    n: int
    adjacency: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.adjacency) != self.n:
            raise ValidationError(f"adjacency has {len(self.adjacency)} rows for n={self.n}")
        for i, nbrs in enumerate(self.adjacency):
            if len(set(nbrs)) != len(nbrs):
                raise ValidationError(f"node {i}: duplicate edges")
            for j in nbrs:
                if not 0 <= j < self.n:
                    raise ValidationError(f"node {i}: neighbour {j} out of range")

    @classmethod
    def from_edges(cls, n: int, edges) -> "Digraph":
        adj: list[set[int]] = [set() for _ in range(n)]
        for i, j in edges:
            adj[i].add(j)
        return cls(n, tuple(tuple(sorted(s)) for s in adj))

    @classmethod
    def from_matrix(cls, weights) -> "Digraph":
        """Edge ``i -> j`` iff ``weights[i, j] > 0`` (self-loops included)."""
        a = np.asarray(weights)
        return cls(a.shape[0], tuple(tuple(int(j) for j in np.flatnonzero(row > 0)) for row in a))

    def edges(self):
        for i, nbrs in enumerate(self.adjacency):
            for j in nbrs:
                yield i, j

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n))
        for i, j in self.edges():
            a[i, j] = 1.0
        return a

    def is_symmetric(self) -> bool:
        es = set(self.edges())
        return all((j, i) in es for i, j in es)


@dataclass(frozen=True, eq=False)
class InfluenceMatrix:
    """Nonnegative row-stochastic weights; row ``i`` is agent ``i``'s attention."""

    weights: np.ndarray

    @property
    def n(self) -> int:
        return self.weights.shape[0]

    def digraph(self) -> Digraph:
        return Digraph.from_matrix(self.weights)


def _check_square_finite(weights) -> np.ndarray:
    w = np.asarray(weights, dtype=np.float64)
    if w.ndim != 2 or w.shape[0] != w.shape[1] or w.shape[0] < 1:
        raise NonSquareError(f"influence matrix must be square and non-empty, got shape {w.shape}")
    if not np.all(np.isfinite(w)):
        i, j = np.argwhere(~np.isfinite(w))[0]
        raise NonFiniteError(f"influence matrix: entry ({i}, {j}) is not finite")
    return w


def validate_influence_matrix(weights, tol: float = ROW_SUM_TOL) -> InfluenceMatrix:
    w = _check_square_finite(weights)
    neg = np.argwhere(w < 0)
    if neg.size:
        i, j = neg[0]
        raise NegativeWeightError(f"row {i}: weight w[{i},{j}] = {w[i, j]} is negative")
    sums = w.sum(axis=1)
    bad = np.flatnonzero(np.abs(sums - 1.0) > tol)
    if bad.size:
        i = bad[0]
        raise RowSumViolationError(f"row {i}: sums to {sums[i]!r}, not 1 (tol {tol})")
    return InfluenceMatrix(_frozen(w))


def row_normalize(weights) -> InfluenceMatrix:
    """Divide every row by its sum."""
    w = _check_square_finite(weights)
    if np.any(w < 0):
        i, j = np.argwhere(w < 0)[0]
        raise NegativeWeightError(f"row {i}: weight w[{i},{j}] = {w[i, j]} is negative")
    sums = w.sum(axis=1)
    zero = np.flatnonzero(sums <= 0)
    if zero.size:
        raise ZeroRowError(f"row {zero[0]}: no out-links and no self-loop")
    return validate_influence_matrix(w / sums[:, None])


@dataclass(frozen=True)
class ModelParams:
    """Dynamics parameters and numeric tolerances.

    ``tol_opt`` is the bisection bracket width for alpha > 1, ``tol_tie`` the
    relative cost-tie tolerance for alpha <= 1, ``tol_conv`` the max-norm
    threshold on successive states.
    """

    alpha: float
    beta: float
    tol_opt: float = 1e-10
    tol_tie: float = 1e-12
    tol_conv: float = 1e-8
    max_iters: int = 100_000

    def __post_init__(self):
        if not (np.isfinite(self.alpha) and self.alpha > 0):
            raise ConfigInvalidError(f"alpha must be > 0, got {self.alpha}")
        if not 0 < self.beta < 1:
            raise ConfigInvalidError(f"beta must lie in (0, 1), got {self.beta}")
        for name in ("tol_opt", "tol_tie", "tol_conv"):
            if not getattr(self, name) > 0:
                raise ConfigInvalidError(f"{name} must be > 0, got {getattr(self, name)}")
        if int(self.max_iters) != self.max_iters or self.max_iters < 1:
            raise ConfigInvalidError(f"max_iters must be an integer >= 1, got {self.max_iters}")


# The six-agent instance that fails to converge at alpha=0.5, beta=0.4.
EXAMPLE1_W = (
    (0.0, 0.0, 0.1, 0.4, 0.3, 0.2),
    (0.2, 0.0, 0.0, 0.1, 0.25, 0.45),
    (0.0, 0.05, 0.0, 0.45, 0.1, 0.4),
    (0.0, 0.0, 0.0, 1.0, 0.0, 0.0),
    (0.0, 0.0, 0.0, 0.0, 1.0, 0.0),
    (0.0, 0.0, 0.0, 0.0, 0.0, 1.0),
)
EXAMPLE1_X0 = (0.0, 3.0, 3.0, 0.0, 2.0, 3.0)
EXAMPLE1_ALPHA = 0.5
EXAMPLE1_BETA = 0.4


@dataclass(frozen=True, eq=False)
class Instance:
    W: InfluenceMatrix
    x0: np.ndarray
    params: ModelParams | None = None


def example1(**param_overrides) -> Instance:
    params = ModelParams(alpha=param_overrides.pop("alpha", EXAMPLE1_ALPHA),
                         beta=param_overrides.pop("beta", EXAMPLE1_BETA), **param_overrides)
    return Instance(validate_influence_matrix(EXAMPLE1_W), as_opinions(EXAMPLE1_X0), params)
