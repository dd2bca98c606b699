from __future__ import annotations

import numpy as np
import pytest

from brod.core import row_normalize

ACCEPTANCE_LINES: list[str] = []


def record_criterion(number: int, title: str, passed: bool, detail: str = "") -> None:
    line = f"[{'PASS' if passed else 'FAIL'}] criterion {number:>2}: {title}" + (f" -- {detail}" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def random_stochastic(rng: np.random.Generator, n: int, density: float = 1.0, dyadic: bool = False):
    """Random row-stochastic matrix; each row keeps at least one positive entry."""
    if dyadic:
        raw = rng.integers(0, 5, size=(n, n)).astype(float)
    else:
        raw = rng.random((n, n))
    raw *= rng.random((n, n)) < density
    for i in range(n):
        if raw[i].sum() == 0:
            raw[i, rng.integers(n)] = 1.0
    if dyadic:
        # make every row sum to a power of two so the weights are exact binary fractions
        for i in range(n):
            s = raw[i].sum()
            target = 1 << int(np.ceil(np.log2(s)))
            raw[i, rng.choice(np.flatnonzero(raw[i] >= 0))] += target - s
    return row_normalize(raw)


def strongly_connected_stochastic(rng: np.random.Generator, n: int, density: float = 0.4):
    raw = rng.random((n, n)) * (rng.random((n, n)) < density)
    perm = rng.permutation(n)
    for a, b in zip(perm, np.roll(perm, -1)):
        raw[a, b] += rng.random() + 0.1
    return row_normalize(raw)


def multi_sink_instance(rng: np.random.Generator):
    """Matrix whose condensation has >= 2 sinks, with sink blocks and transient nodes.

    Returns ``(W, sink_blocks, transient)``.
    """
    n_sinks = int(rng.integers(2, 4))
    blocks, start = [], 0
    for _ in range(n_sinks):
        size = int(rng.integers(1, 4))
        blocks.append(list(range(start, start + size)))
        start += size
    n_trans = int(rng.integers(0, 4))
    transient = list(range(start, start + n_trans))
    n = start + n_trans
    raw = np.zeros((n, n))
    for b in blocks:
        for i in b:
            raw[i, b] = rng.random(len(b)) + 0.05
    for i in transient:
        raw[i] = rng.random(n) * (rng.random(n) < 0.6)
        raw[i, rng.integers(start)] += 0.5
    return row_normalize(raw), blocks, transient


def dominant_instance(rng: np.random.Generator, n: int, dominant=None):
    """Matrix where row ``i`` puts weight > 1/2 on ``dominant[i]``."""
    if dominant is None:
        dominant = rng.integers(n, size=n)
    raw = np.zeros((n, n))
    for i, j in enumerate(dominant):
        w_dom = rng.uniform(0.55, 0.95)
        rest = rng.random(n) * (rng.random(n) < 0.7)
        rest[j] = 0.0
        if rest.sum() > 0:
            raw[i] = rest / rest.sum() * (1 - w_dom)
        else:
            w_dom = 1.0
        raw[i, j] = w_dom
    return row_normalize(raw), [int(j) for j in dominant]


def single_cycle_map(rng: np.random.Generator, n: int) -> list[int]:
    """Functional graph with exactly one cycle and trees feeding into it."""
    length = int(rng.integers(1, n + 1))
    order = rng.permutation(n)
    cyc = order[:length]
    succ = [0] * n
    for a, b in zip(cyc, np.roll(cyc, -1)):
        succ[a] = int(b)
    placed = list(cyc)
    for v in order[length:]:
        succ[v] = int(rng.choice(placed))
        placed.append(v)
    return succ


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
