"""Monte Carlo sweeps over (alpha, beta, p) on Watts-Strogatz networks.

Randomness is derived from seeds only: a cell's seed hashes the master seed
with the bit patterns of its coordinates, and each run hashes the cell seed
with its run index.  Worker count therefore never changes any number.
"""

from __future__ import annotations

import csv
import dataclasses
import io
import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np
from scipy import stats

from .core import ConfigInvalidError, ModelParams, ValidationError, ZeroRowError
from .dynamics import DEFAULT_CONSENSUS_TOL, DEFAULT_PERIOD_CAP, Status, simulate
from .netgen import WattsStrogatzConfig, random_opinions, to_influence_matrix, watts_strogatz

log = logging.getLogger(__name__)

MAX_REGENERATIONS = 100
CSV_FIELDS = (
    "alpha", "beta", "p", "runs", "skipped", "converged", "consensus",
    "consensus_proportion", "ci_low", "ci_high", "diversity_mean", "diversity_std",
)


class InvalidCountsError(ValidationError):
    pass


def binomial_ci(successes: int, trials: int, level: float = 0.95) -> tuple[float, float]:
    """Clopper-Pearson exact interval for a binomial proportion."""
    if trials < 1 or not 0 <= successes <= trials:
        raise InvalidCountsError(f"need 0 <= successes <= trials and trials >= 1, got {successes}/{trials}")
    if not 0 < level < 1:
        raise InvalidCountsError(f"level must lie in (0, 1), got {level}")
    a = 1.0 - level
    low = 0.0 if successes == 0 else float(stats.beta.ppf(a / 2, successes, trials - successes + 1))
    high = 1.0 if successes == trials else float(stats.beta.ppf(1 - a / 2, successes + 1, trials - successes))
    return low, high


@dataclass(frozen=True)
class NetworkTemplate:
    n: int = 100
    k: int = 6


@dataclass(frozen=True)
class SweepConfig:
    alphas: tuple[float, ...]
    betas: tuple[float, ...]
    ps: tuple[float, ...]
    runs_per_cell: int = 100
    network: NetworkTemplate = NetworkTemplate()
    # alpha/beta here are placeholders; each cell substitutes its own
    dynamics: ModelParams = ModelParams(alpha=0.5, beta=0.5)
    consensus_tol: float = DEFAULT_CONSENSUS_TOL
    period_cap: int = DEFAULT_PERIOD_CAP
    level: float = 0.95
    master_seed: int = 0

    def __post_init__(self):
        for name in ("alphas", "betas", "ps"):
            vals = tuple(float(v) for v in getattr(self, name))
            if not vals:
                raise ConfigInvalidError(f"{name} must be a nonempty list")
            object.__setattr__(self, name, vals)
        if self.runs_per_cell < 1:
            raise ConfigInvalidError(f"runs_per_cell must be >= 1, got {self.runs_per_cell}")
        if self.master_seed < 0:
            raise ConfigInvalidError("master_seed must be nonnegative")
        # fail early on bad coordinates rather than inside a worker
        for a in self.alphas:
            for b in self.betas:
                dataclasses.replace(self.dynamics, alpha=a, beta=b)
        for p in self.ps:
            WattsStrogatzConfig(self.network.n, self.network.k, p)

    @classmethod
    def from_dict(cls, d: dict) -> "SweepConfig":
        d = dict(d)
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(d) - known
        if unknown:
            raise ConfigInvalidError(f"unknown sweep config fields: {sorted(unknown)}")
        try:
            if "network" in d:
                d["network"] = NetworkTemplate(**d["network"])
            if "dynamics" in d:
                d["dynamics"] = ModelParams(**{"alpha": 0.5, "beta": 0.5, **d["dynamics"]})
            return cls(**d)
        except TypeError as exc:
            raise ConfigInvalidError(str(exc)) from None

    @classmethod
    def from_json(cls, path) -> "SweepConfig":
        return cls.from_dict(json.loads(Path(path).read_text()))

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


@dataclass
class CellReport:
    alpha: float
    beta: float
    p: float
    runs: int
    skipped: int
    converged: int
    consensus: int
    consensus_proportion: Optional[float]
    ci_low: Optional[float]
    ci_high: Optional[float]
    diversity_mean: Optional[float]
    diversity_std: Optional[float]
    oscillating: int = 0
    undetermined: int = 0
    diversities: list[float] = field(default_factory=list, repr=False)

    def row(self) -> dict:
        return {k: getattr(self, k) for k in CSV_FIELDS}


def _float_bits(v: float) -> int:
    return int(np.float64(v).view(np.uint64))


def cell_seed(master_seed: int, alpha: float, beta: float, p: float) -> int:
    ss = np.random.SeedSequence([master_seed, _float_bits(alpha), _float_bits(beta), _float_bits(p)])
    return int(ss.generate_state(1, np.uint64)[0])


def _run_seeds(seed: int, r: int) -> tuple[np.random.SeedSequence, np.random.SeedSequence]:
    graph_ss, opinion_ss = np.random.SeedSequence([seed, r]).spawn(2)
    return graph_ss, opinion_ss


@dataclass(frozen=True)
class _RunTask:
    alpha: float
    beta: float
    p: float
    seed: int
    r: int
    config: SweepConfig


def _run_one(task: _RunTask):
    """Returns ``(status, consensus, diversity)`` or ``None`` for a skipped run."""
    cfg = task.config
    graph_ss, opinion_ss = _run_seeds(task.seed, task.r)
    ws = WattsStrogatzConfig(cfg.network.n, cfg.network.k, task.p)
    for attempt_ss in graph_ss.spawn(MAX_REGENERATIONS):
        try:
            W = to_influence_matrix(watts_strogatz(ws, seed=attempt_ss))
            break
        except ZeroRowError:
            continue
    else:
        return None
    x0 = random_opinions(cfg.network.n, seed=opinion_ss)
    params = dataclasses.replace(cfg.dynamics, alpha=task.alpha, beta=task.beta)
    res = simulate(x0, W, params, cfg.consensus_tol, cfg.period_cap, record_history=False)
    return res.status, res.consensus, res.diversity


def _tasks(alpha, beta, p, config, seed):
    return [_RunTask(alpha, beta, p, seed, r, config) for r in range(config.runs_per_cell)]


def _aggregate(alpha, beta, p, config, outcomes) -> CellReport:
    skipped = sum(o is None for o in outcomes)
    done = [o for o in outcomes if o is not None]
    conv = sum(s is Status.CONVERGED for s, _, _ in done)
    osc = sum(s is Status.OSCILLATING for s, _, _ in done)
    und = sum(s is Status.UNDETERMINED for s, _, _ in done)
    cons = sum(c for _, c, _ in done)
    div = [d for s, _, d in done if s is Status.CONVERGED]
    m = len(done)
    prop = ci_low = ci_high = None
    if m:
        prop = cons / m
        ci_low, ci_high = binomial_ci(cons, m, config.level)
    dmean = float(np.mean(div)) if div else None
    dstd = float(np.std(div, ddof=1)) if len(div) >= 2 else None
    return CellReport(alpha, beta, p, len(outcomes), skipped, conv, cons, prop, ci_low, ci_high,
                      dmean, dstd, osc, und, div)


def _map(fn, tasks, jobs: int):
    if jobs <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))


def run_cell(alpha: float, beta: float, p: float, config: SweepConfig,
             seed: Optional[int] = None, jobs: int = 1) -> CellReport:
    if seed is None:
        seed = cell_seed(config.master_seed, alpha, beta, p)
    outcomes = _map(_run_one, _tasks(alpha, beta, p, config, seed), jobs)
    return _aggregate(alpha, beta, p, config, outcomes)


def run_sweep(config: SweepConfig, jobs: int = 1) -> list[CellReport]:
    cells = sorted({(a, b, p) for a in config.alphas for b in config.betas for p in config.ps})
    tasks = []
    for a, b, p in cells:
        tasks += _tasks(a, b, p, config, cell_seed(config.master_seed, a, b, p))
    outcomes = _map(_run_one, tasks, jobs)
    reports = []
    R = config.runs_per_cell
    for ci, (a, b, p) in enumerate(cells):
        rep = _aggregate(a, b, p, config, outcomes[ci * R:(ci + 1) * R])
        log.info("alpha=%g beta=%g p=%g consensus=%d/%d", a, b, p, rep.consensus, rep.runs - rep.skipped)
        reports.append(rep)
    return reports


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def reports_to_csv(reports) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_FIELDS)
    for rep in reports:
        w.writerow([_fmt(v) for v in rep.row().values()])
    return buf.getvalue()


def reports_to_json(reports, config: Optional[SweepConfig] = None) -> str:
    cells = []
    for rep in reports:
        d = rep.row()
        d.update(oscillating=rep.oscillating, undetermined=rep.undetermined)
        cells.append(d)
    doc = {"cells": cells}
    if config is not None:
        doc["config"] = config.to_dict()
    return json.dumps(doc, indent=2, allow_nan=False)


def read_reports_csv(path) -> list[dict]:
    out = []
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            out.append({k: (None if v == "" else (int(v) if k in ("runs", "skipped", "converged", "consensus")
                                                 else float(v))) for k, v in row.items()})
    return out

