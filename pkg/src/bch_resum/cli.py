"""Command-line interface.

Exit status: 0 on success, 1 if any identity report fails, 2 on usage,
configuration or domain errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from contextlib import contextmanager
from typing import Iterator, Sequence, TextIO

import numpy as np

from . import config as config_mod
from . import g_series as gs
from . import hyper_eval as hx
from . import suites
from .errors import BCHResumError
from .exact_series import SERIES_NAMES, series
from .matrix_engine import convergence_table, random_symmetric
from .perm_algebra import expand_P, marching
from .perturbation import epsilon_sweep


def _floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


@contextmanager
def _sink(path: str | None) -> Iterator[TextIO]:
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _write_csv(out: TextIO, header: Sequence[str], rows) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)


def _fmt(x) -> str:
    if x is None:
        return ""
    return repr(float(x))


# ---------------------------------------------------------------------------
# subcommands


def cmd_coeffs(args) -> int:
    s = series(args.name, args.order)
    if args.json:
        print(json.dumps({"name": s.name, "order": s.order, "coeffs": s.as_strings()}))
    else:
        print("\n".join(s.as_strings()))
    return 0


def cmd_perm(args) -> int:
    ps = expand_P(args.N) if args.what == "expand-p" else marching(args.N, args.m)
    print("\n".join(ps.lines()))
    return 0


def cmd_eval(args) -> int:
    vals = args.args
    if args.fn == "h":
        v = hx.h_eval(vals)
    elif args.fn == "f":
        v = hx.f_eval(vals)
    elif args.fn == "u":
        v = hx.u_eval(vals, len(vals) if args.r is None else args.r)
    else:
        v = hx.bracket(vals)
    print(f"{v:.17g}")
    return 0


def cmd_g(args) -> int:
    if args.rep == "over":
        v = gs.g_overcomplete(args.args)
    else:
        v = gs.g_eval(args.rep, args.args)
    print(f"{v:.17g}")
    return 0


def _emit_reports(result: suites.SuiteResult, as_json: bool, out: TextIO) -> None:
    if as_json:
        json.dump([r.to_dict() for r in result.reports], out, indent=2)
        out.write("\n")
    else:
        rows = [(i, n, k, _fmt(m), str(p).lower()) for i, n, k, m, p in result.summary()]
        _write_csv(out, ("identity", "n", "trials", "max_residual", "pass"), rows)


def _config(args) -> config_mod.RunConfig:
    cfg = config_mod.load(args.config)
    return cfg.with_overrides(seed=args.seed, trials=args.trials, tol=args.tol, jobs=args.jobs)


def cmd_verify(args) -> int:
    cfg = _config(args)
    result = suites.run_tasks(suites.tasks_for_identity(args.identity, cfg, args.n), cfg)
    with _sink(args.out) as out:
        _emit_reports(result, args.json or cfg.output == "json", out)
    return result.exit_code


def cmd_run(args) -> int:
    cfg = _config(args)
    result = suites.run_suite(args.suite, cfg)
    with _sink(args.out) as out:
        _emit_reports(result, args.json or cfg.output == "json", out)
    return result.exit_code


def cmd_bch(args) -> int:
    cfg = config_mod.load(args.config)
    rng = np.random.default_rng(cfg.seed if args.seed is None else args.seed)
    A = random_symmetric(rng, args.dim)
    B = random_symmetric(rng, args.dim, args.bnorm)
    eps = args.eps or list(cfg.bch_eps)
    rows, fits = convergence_table(A, B, range(1, args.order + 1), eps)
    with _sink(args.out) as out:
        if args.json:
            json.dump({"A": A.tolist(), "B": B.tolist(),
                       "rows": [r.__dict__ for r in rows], "fit_slopes": fits}, out, indent=2)
            out.write("\n")
        else:
            _write_csv(out, ("eps", "N", "error", "slope"),
                       [(_fmt(r.eps), r.order, _fmt(r.error), _fmt(r.slope)) for r in rows])
    return 0


def cmd_perturb(args) -> int:
    cfg = config_mod.load(args.config)
    rng = np.random.default_rng(cfg.seed if args.seed is None else args.seed)
    A = random_symmetric(rng, args.dim)
    B = random_symmetric(rng, args.dim, 1.0)
    eps = args.eps or list(cfg.perturb_eps)
    rows = []
    for n in range(args.dim):
        res = epsilon_sweep(A, B, n, eps)
        slope = res.slope() if sum(p.eps > 0 for p in res.sweep) >= 2 else None
        for p in res.sweep:
            rows.append((n, _fmt(p.eps), _fmt(p.exact), _fmt(p.partial_sum), _fmt(p.residual),
                         _fmt(slope)))
    with _sink(args.out) as out:
        _write_csv(out, ("n", "eps", "exact", "partial_sum", "residual", "slope"), rows)
    return 0


# ---------------------------------------------------------------------------
# parser


def _suite_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, help="base seed (overrides config)")
    p.add_argument("--trials", type=int, help="trials per (identity, N)")
    p.add_argument("--tol", type=float, help="override every residual tolerance")
    p.add_argument("--json", action="store_true", help="emit the full JSON report array")
    p.add_argument("--out", help="write output to this path instead of stdout")
    p.add_argument("--jobs", type=int, help="worker processes")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bch-resum", description=__doc__.splitlines()[0])
    parser.add_argument("--config", help=f"config file (default: ${config_mod.ENV_VAR} or built-in)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coeffs", help="exact Taylor coefficients")
    p.add_argument("name", choices=SERIES_NAMES)
    p.add_argument("order", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("perm", help="permutation sums")
    psub = p.add_subparsers(dest="what", required=True)
    q = psub.add_parser("expand-p")
    q.add_argument("N", type=int)
    q.set_defaults(func=cmd_perm)
    q = psub.add_parser("marching")
    q.add_argument("N", type=int)
    q.add_argument("m", type=int)
    q.set_defaults(func=cmd_perm)

    p = sub.add_parser("eval", help="evaluate h, f, u or the bracket")
    p.add_argument("fn", choices=("h", "f", "u", "bracket"))
    p.add_argument("--args", type=_floats, required=True, help="comma-separated values")
    p.add_argument("--r", type=int, help="index r for u (default: number of args)")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("g", help="evaluate G_N")
    gsub = p.add_subparsers(dest="what", required=True)
    q = gsub.add_parser("eval")
    q.add_argument("--rep", choices=gs.REPRESENTATIONS, default="perm")
    q.add_argument("--args", type=_floats, required=True,
                   help="L_1..L_N, or x_0..x_N for --rep over")
    q.set_defaults(func=cmd_g)

    p = sub.add_parser("verify", help="run one identity check")
    p.add_argument("identity", choices=suites.VERIFY_NAMES)
    p.add_argument("--n", type=int, help="single N (default: all N up to the cap)")
    _suite_flags(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("run", help="run a named suite")
    p.add_argument("suite", choices=suites.SUITE_NAMES)
    _suite_flags(p)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("bch", help="series vs matrix-log oracle")
    bsub = p.add_subparsers(dest="what", required=True)
    q = bsub.add_parser("approx")
    q.add_argument("--dim", type=int, default=4)
    q.add_argument("--order", type=int, default=4)
    q.add_argument("--bnorm", type=float, default=1.0)
    q.add_argument("--seed", type=int)
    q.add_argument("--eps", type=_floats)
    q.add_argument("--json", action="store_true")
    q.add_argument("--out")
    q.set_defaults(func=cmd_bch)

    p = sub.add_parser("perturb", help="eigenvalue corrections vs oracle")
    p.add_argument("--dim", type=int, default=4)
    p.add_argument("--seed", type=int)
    p.add_argument("--eps", type=_floats)
    p.add_argument("--out")
    p.set_defaults(func=cmd_perturb)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (BCHResumError, KeyError, ValueError, OverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
