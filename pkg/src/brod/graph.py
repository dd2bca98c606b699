"""Strongly connected components, condensation, and the structural consensus tests.

Node indices are 0-based throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import Digraph, InfluenceMatrix, ValidationError


class NoDominantNeighborError(ValidationError):
    pass


@dataclass(frozen=True)
class Condensation:
    components: tuple[tuple[int, ...], ...]
    edges: tuple[tuple[int, int], ...]
    sinks: tuple[int, ...]
    membership: tuple[int, ...]  # membership[v] = component index of node v

    def out_neighbors(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in self.components]
        for a, b in self.edges:
            out[a].append(b)
        return out


def _tarjan(g: Digraph) -> list[list[int]]:
    """Iterative Tarjan; components come out in reverse topological order."""
    index = [-1] * g.n
    low = [0] * g.n
    on_stack = [False] * g.n
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0
    for root in range(g.n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, pos = work[-1]
            nbrs = g.adjacency[v]
            if pos < len(nbrs):
                work[-1] = (v, pos + 1)
                w = nbrs[pos]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(sorted(comp))
    return comps


def strongly_connected_components(g: Digraph) -> Condensation:
    # components ordered by their smallest node for stable reporting
    comps = sorted(_tarjan(g), key=lambda c: c[0])
    membership = [0] * g.n
    for ci, comp in enumerate(comps):
        for v in comp:
            membership[v] = ci
    edges = sorted({(membership[i], membership[j]) for i, j in g.edges() if membership[i] != membership[j]})
    has_out = {a for a, _ in edges}
    sinks = tuple(c for c in range(len(comps)) if c not in has_out)
    return Condensation(tuple(tuple(c) for c in comps), tuple(edges), sinks, tuple(membership))


def has_unique_globally_reachable_sink(g: Digraph) -> bool:
    cond = strongly_connected_components(g)
    if len(cond.sinks) != 1:
        return False
    into: list[list[int]] = [[] for _ in cond.components]
    for a, b in cond.edges:
        into[b].append(a)
    seen = {cond.sinks[0]}
    frontier = [cond.sinks[0]]
    while frontier:
        c = frontier.pop()
        for a in into[c]:
            if a not in seen:
                seen.add(a)
                frontier.append(a)
    return len(seen) == len(cond.components)


def dominant_neighbor_condition(W: InfluenceMatrix) -> Optional[tuple[int, ...]]:
    """Each agent's neighbour with weight strictly above 1/2, or None if some row has none."""
    w = W.weights
    best = np.argmax(w, axis=1)
    if np.all(w[np.arange(W.n), best] > 0.5):
        return tuple(int(j) for j in best)
    return None


@dataclass(frozen=True, eq=False)
class DominantNeighborReduction:
    dominant: tuple[int, ...]
    F: np.ndarray


def _require_dominant(W: InfluenceMatrix) -> tuple[int, ...]:
    dom = dominant_neighbor_condition(W)
    if dom is None:
        rows = np.flatnonzero(W.weights.max(axis=1) <= 0.5)
        raise NoDominantNeighborError(f"row {rows[0]} has no weight above 1/2")
    return dom


def reduce_to_linear(W: InfluenceMatrix, beta: float) -> DominantNeighborReduction:
    """Linear update matrix ``F`` such that the sub-linear dynamics read ``x <- F x``."""
    dom = _require_dominant(W)
    F = np.zeros((W.n, W.n))
    for i, j in enumerate(dom):
        F[i, i] += beta
        F[i, j] += 1.0 - beta
    F.setflags(write=False)
    return DominantNeighborReduction(dom, F)


def functional_graph_cycles(succ) -> list[tuple[int, ...]]:
    """All cycles of the map ``i -> succ[i]`` (fixed points are length-1 cycles)."""
    n = len(succ)
    state = [0] * n  # 0 unvisited, 1 on current path, 2 done
    cycles = []
    for start in range(n):
        path = []
        v = start
        while state[v] == 0:
            state[v] = 1
            path.append(v)
            v = succ[v]
        if state[v] == 1:
            cycles.append(tuple(path[path.index(v):]))
        for u in path:
            state[u] = 2
    return cycles


def consensus_cycle_condition(W: InfluenceMatrix) -> bool:
    return len(functional_graph_cycles(_require_dominant(W))) == 1


def analysis_report(W: InfluenceMatrix) -> dict:
    g = W.digraph()
    cond = strongly_connected_components(g)
    dom = dominant_neighbor_condition(W)
    return {
        "n": W.n,
        "scc_count": len(cond.components),
        "components": [list(c) for c in cond.components],
        "condensation_edges": [list(e) for e in cond.edges],
        "sinks": [list(cond.components[s]) for s in cond.sinks],
        "sink_count": len(cond.sinks),
        "unique_globally_reachable_sink": has_unique_globally_reachable_sink(g),
        "dominant_neighbor": list(dom) if dom is not None else None,
        "cycle_condition": consensus_cycle_condition(W) if dom is not None else None,
    }
