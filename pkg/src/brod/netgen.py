"""Watts-Strogatz influence networks and random initial opinions.

Every generator takes an explicit ``numpy.random.SeedSequence`` (or an int
seed) so graph and opinion streams can be derived independently per run.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import ConfigInvalidError, Digraph, InfluenceMatrix, ValidationError, as_opinions, row_normalize


@dataclass(frozen=True)
class WattsStrogatzConfig:
    n: int
    k: int = 6
    p: float = 0.1
    seed: int = 0

    def __post_init__(self):
        if not (isinstance(self.k, (int, np.integer)) and self.k >= 2 and self.k % 2 == 0):
            raise ConfigInvalidError(f"k must be an even integer >= 2, got {self.k}")
        if not self.n > self.k:
            raise ConfigInvalidError(f"need n > k, got n={self.n}, k={self.k}")
        if not 0 <= self.p <= 1:
            raise ConfigInvalidError(f"p must lie in [0, 1], got {self.p}")


def _rng(seed) -> np.random.Generator:
    return np.random.default_rng(seed)


def watts_strogatz(config: WattsStrogatzConfig, seed=None) -> Digraph:
    """Ring lattice with each clockwise edge rewired with probability ``p``.

    Edges are visited lattice-distance first (all ``(u, u+1)``, then all
    ``(u, u+2)``, ...).  A rewired edge keeps ``u`` and moves its other end to
    a uniform node that is neither ``u`` nor already adjacent to ``u``; a node
    adjacent to everyone keeps its edge.  ``seed`` overrides ``config.seed``.
    """
    rng = _rng(config.seed if seed is None else seed)
    n, half = config.n, config.k // 2
    adj = [set() for _ in range(n)]
    for u in range(n):
        for d in range(1, half + 1):
            v = (u + d) % n
            adj[u].add(v)
            adj[v].add(u)
    for d in range(1, half + 1):
        for u in range(n):
            v = (u + d) % n
            if rng.random() >= config.p or v not in adj[u]:
                continue
            if len(adj[u]) >= n - 1:
                continue
            choices = np.array(sorted(set(range(n)) - adj[u] - {u}))
            w = int(choices[rng.integers(choices.size)])
            adj[u].discard(v)
            adj[v].discard(u)
            adj[u].add(w)
            adj[w].add(u)
    return Digraph(n, tuple(tuple(sorted(s)) for s in adj))


def undirected_edges(g: Digraph) -> list[tuple[int, int]]:
    return [(i, j) for i, j in g.edges() if i < j]


def to_influence_matrix(g: Digraph) -> InfluenceMatrix:
    """Uniform weights ``1/deg(i)`` over neighbours; no self-loops are added."""
    return row_normalize(g.adjacency_matrix())


def random_opinions(n: int, seed=None) -> np.ndarray:
    if n < 1:
        raise ValidationError(f"n must be >= 1, got {n}")
    return as_opinions(_rng(seed).uniform(0.0, 1.0, size=n))


def write_edge_list(g: Digraph, path) -> None:
    with open(path, "w") as fh:
        for i, j in undirected_edges(g):
            fh.write(f"{i} {j}\n")


def read_edge_list(path, n: int) -> Digraph:
    edges = []
    with open(path) as fh:
        for line in fh:
            if line.strip():
                i, j = map(int, line.split())
                edges += [(i, j), (j, i)]
    return Digraph.from_edges(n, edges)
