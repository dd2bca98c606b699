"""Command-line entry point: ``brod {br,simulate,analyze,counterexample,sweep}``.

Exit codes: 0 success, 1 counterexample not reproduced, 2 invalid input,
3 some run ended undetermined.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from pathlib import Path

from . import io as bio
from .best_response import best_response
from .core import ModelParams, ValidationError, example1
from .dynamics import DEFAULT_CONSENSUS_TOL, Status, TrajectoryResult, simulate, write_trajectory_csv
from .experiment import SweepConfig, reports_to_csv, reports_to_json, run_sweep
from .graph import analysis_report
from .netgen import random_opinions

EXIT_OK, EXIT_NOT_REPRODUCED, EXIT_INPUT, EXIT_UNDETERMINED = 0, 1, 2, 3


def _shared(p: argparse.ArgumentParser, alpha=None, beta=None):
    p.add_argument("--matrix", type=Path, help="influence matrix, CSV or .json")
    p.add_argument("--opinions", type=Path, help="opinion vector, single-row CSV or .json")
    p.add_argument("--alpha", type=float, default=alpha)
    p.add_argument("--beta", type=float, default=beta)
    p.add_argument("--out", type=Path)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--seed", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="brod", description="Best-response opinion dynamics toolkit")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("br", help="evaluate the best-response operator once")
    _shared(p, beta=0.5)

    for name, help_ in (("simulate", "run the dynamics from a given state"),
                        ("counterexample", "reproduce the built-in non-convergent instance")):
        p = sub.add_parser(name, help=help_)
        if name == "counterexample":
            _shared(p, alpha=0.5, beta=0.4)
        else:
            _shared(p)
        p.add_argument("--max-iters", type=int, default=100_000)
        p.add_argument("--tol", type=float, default=1e-8, help="convergence threshold on max change")
        p.add_argument("--consensus-tol", type=float, default=DEFAULT_CONSENSUS_TOL)

    p = sub.add_parser("analyze", help="structural consensus conditions of a matrix")
    _shared(p)

    p = sub.add_parser("sweep", help="Monte Carlo sweep on small-world networks")
    _shared(p)
    p.add_argument("--config", type=Path, required=True, help="sweep config JSON")
    p.add_argument("--jobs", type=int, default=1)
    return parser


class InputError(Exception):
    pass


def _params(args, **extra) -> ModelParams:
    if args.alpha is None:
        raise InputError("--alpha is required")
    if args.beta is None:
        raise InputError("--beta is required")
    return ModelParams(alpha=args.alpha, beta=args.beta, **extra)


def _need(args, name):
    if getattr(args, name) is None:
        raise InputError(f"--{name} is required")
    return getattr(args, name)


def _emit(text: str, out: Path | None):
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)


def cmd_br(args) -> int:
    W = bio.read_matrix(_need(args, "matrix"))
    x = bio.read_opinions(_need(args, "opinions"))
    if x.size != W.n:
        raise InputError(f"opinions have length {x.size}, matrix is {W.n}x{W.n}")
    res = best_response(x, W, _params(args))
    if args.format == "json":
        text = json.dumps({"regime": res.regime.value, "values": res.values.tolist()}) + "\n"
    else:
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerow([repr(float(v)) for v in res.values])
        text = buf.getvalue()
    _emit(text, args.out)
    return EXIT_OK


def _summary_text(res: TrajectoryResult, fmt: str) -> str:
    s = res.summary()
    if fmt == "json":
        return json.dumps(s) + "\n"
    keys = ["status", "period", "iterations", "consensus", "diversity"]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(keys)
    w.writerow(["" if s[k] is None else s[k] for k in keys])
    return buf.getvalue()


def _trajectory_params(args) -> ModelParams:
    return _params(args, tol_conv=args.tol, max_iters=args.max_iters)


def cmd_simulate(args) -> int:
    W = bio.read_matrix(_need(args, "matrix"))
    if args.opinions is not None:
        x0 = bio.read_opinions(args.opinions)
    elif args.seed is not None:
        x0 = random_opinions(W.n, seed=args.seed)
    else:
        raise InputError("--opinions (or --seed for uniform random opinions) is required")
    if x0.size != W.n:
        raise InputError(f"opinions have length {x0.size}, matrix is {W.n}x{W.n}")
    params = _trajectory_params(args)
    res = simulate(x0, W, params, consensus_tol=args.consensus_tol)
    sys.stdout.write(_summary_text(res, args.format))
    if args.out is not None:
        write_trajectory_csv(res, args.out)
    return EXIT_UNDETERMINED if res.status is Status.UNDETERMINED else EXIT_OK


def cmd_counterexample(args) -> int:
    inst = example1()
    params = _trajectory_params(args)
    res = simulate(inst.x0, inst.W, params, consensus_tol=args.consensus_tol)
    sys.stdout.write(_summary_text(res, args.format))
    if args.out is not None:
        write_trajectory_csv(res, args.out)
    return EXIT_OK if res.status is Status.OSCILLATING else EXIT_NOT_REPRODUCED


def cmd_analyze(args) -> int:
    W = bio.read_matrix(_need(args, "matrix"))
    _emit(json.dumps(analysis_report(W), indent=2) + "\n", args.out)
    return EXIT_OK


def cmd_sweep(args) -> int:
    if args.jobs < 1:
        raise InputError("--jobs must be >= 1")
    try:
        raw = json.loads(args.config.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"{args.config}: {exc}") from None
    if args.seed is not None:
        raw["master_seed"] = args.seed
    config = SweepConfig.from_dict(raw)
    reports = run_sweep(config, jobs=args.jobs)
    csv_text = reports_to_csv(reports)
    json_text = reports_to_json(reports, config) + "\n"
    primary, mirror = (csv_text, json_text) if args.format == "csv" else (json_text, csv_text)
    if args.out is None:
        sys.stdout.write(primary)
    else:
        args.out.write_text(primary)
        args.out.with_suffix(".json" if args.format == "csv" else ".csv").write_text(mirror)
    undetermined = sum(r.undetermined for r in reports)
    return EXIT_UNDETERMINED if undetermined else EXIT_OK


COMMANDS = {
    "br": cmd_br,
    "simulate": cmd_simulate,
    "analyze": cmd_analyze,
    "counterexample": cmd_counterexample,
    "sweep": cmd_sweep,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except (InputError, ValidationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
