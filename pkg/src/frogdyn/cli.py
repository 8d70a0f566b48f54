"""Command-line front end: ``frogdyn <command> [options]``.

Exit status is 0 on success, 1 when a verification case fails and 2 on a
usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

from . import analysis, crowned, montecarlo
from .hatted import count_f, enumerate_hatted
from .ring import Ring
from .rng import DEFAULT_SEED
from .verify import SUITES, run_suite
from .words import InvalidInput, increasing_word, parse_word, zigzag_word

# decimals longer than this are rounded to the closest fraction within the bound
RHO_DENOMINATOR_BOUND = 10**12


class UsageError(Exception):
    pass


def parse_rational(text: str) -> Fraction:
    """``"p/q"`` exactly, or a decimal string."""
    try:
        value = Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc
    if "/" not in text:
        value = value.limit_denominator(RHO_DENOMINATOR_BOUND)
    if value < 0:
        raise argparse.ArgumentTypeError(f"rho must be non-negative, got {text}")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return value


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _rat(q: Fraction) -> str:
    return analysis.format_rational(q)


def _sigma(args) -> int:
    sigma = args.k if args.sigma is None else args.sigma
    if sigma < args.k:
        raise UsageError(f"--sigma must be at least --k ({args.k})")
    return sigma


def cmd_count(args) -> int:
    k = args.k
    rows = [(2 * k, m, count_f(2 * k, m)) for m in range(2 * k + 1)]
    if args.format == "json":
        text = json.dumps([{"n": n, "m": m, "f": f} for n, m, f in rows]) + "\n"
    elif args.format == "csv":
        text = analysis.counting_csv(k)
    else:
        text = "".join(f"f({n},{m}) = {f}\n" for n, m, f in rows)
    _emit(text, args.out)
    return 0


def cmd_enumerate(args) -> int:
    k = args.k
    if args.m is None or not 0 <= args.m <= 2 * k:
        raise UsageError(f"--m must lie in 0..{2 * k}")
    if args.crowned:
        states = [c.to_json() for c in crowned.enumerate_crowned(k, args.m)]
    else:
        states = [a.to_json() for a in enumerate_hatted(k, args.m)]
    if args.format == "json":
        text = json.dumps(states) + "\n"
    else:
        text = "".join(json.dumps(s) + "\n" for s in states)
    _emit(text, args.out)
    return 0


def cmd_graph(args) -> int:
    k = args.k
    sigma = _sigma(args)
    if args.m is None or not 0 <= args.m <= 2 * k:
        raise UsageError(f"--m must lie in 0..{2 * k}")
    if args.process == "hatted":
        g = analysis.hatted_graph(k, args.m, sigma, workers=args.workers)
        labels = [s.to_json() for s in g.states]
    else:
        g = analysis.zigzag_blind_graph(k, args.m, sigma, workers=args.workers)
        from .hatted import grid
        labels = [[list(sq) for sq in grid(k).squares(F)] for F in g.states]
    if args.format == "json":
        text = json.dumps({"states": labels, "edges": g.edge_list()}) + "\n"
    else:
        lines = ["source,letter,target"] + [f"{i},{a},{j}" for i, a, j in g.edge_list()]
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return 0


def cmd_verify(args) -> int:
    kwargs = {"k": args.k, "sigma": args.sigma, "seed": args.seed}
    if args.trials is not None:
        kwargs["trials"] = args.trials
    if args.sigma is not None and args.sigma < args.k:
        raise UsageError(f"--sigma must be at least --k ({args.k})")
    results = run_suite(args.suite, **kwargs)
    if args.format == "json":
        text = json.dumps([{"case": r.name, "passed": r.passed, "detail": r.detail} for r in results]) + "\n"
    else:
        text = "".join(f"{'PASS' if r.passed else 'FAIL'} {r.name}" + (f" ({r.detail})" if r.detail else "") + "\n"
                       for r in results)
    _emit(text, args.out)
    return 0 if all(r.passed for r in results) else 1


def cmd_speeds(args) -> int:
    k = args.k
    sigma = _sigma(args)
    if args.mc:
        word = increasing_word(k) if args.baseline else zigzag_word(k)
        est = montecarlo.simulate_speeds(Ring(word), sigma, args.n, seed=args.seed, workers=args.workers)
        exact = analysis.bc_speeds(k, sigma) if args.baseline else analysis.speeds(k, sigma)
        if args.format == "csv":
            text = montecarlo.to_csv(montecarlo.speed_csv_rows("speeds", k, sigma, est))
        elif args.format == "json":
            text = json.dumps({"n": est.n, "seed": est.seed, "rates": est.rates, "stderr": est.stderr,
                               "cumulative": est.cumulative, "cumulative_stderr": est.cumulative_stderr,
                               "exact": [_rat(s) for s in exact]}) + "\n"
        else:
            text = f"seed={est.seed} n={est.n} workers={est.workers}\n" + "".join(
                f"s_{m} = {v:.6f} +/- {se:.6f}   exact {_rat(s)} = {float(s):.6f}\n"
                for m, (v, se, s) in enumerate(zip(est.rates, est.stderr, exact), 1))
    else:
        values = analysis.bc_speeds(k, sigma) if args.baseline else analysis.speeds(k, sigma)
        if args.format == "csv":
            rows = [[k, sigma, m, _rat(s), f"{float(s):.6f}"] for m, s in enumerate(values, 1)]
            text = "k,sigma,m,s_m,decimal\n" + "".join(",".join(map(str, r)) + "\n" for r in rows)
        elif args.format == "json":
            text = json.dumps({"k": k, "sigma": sigma, "speeds": [_rat(s) for s in values]}) + "\n"
        else:
            text = "".join(f"s_{m} = {_rat(s)} ≈ {float(s):.6f}\n" for m, s in enumerate(values, 1))
    _emit(text, args.out)
    return 0


def cmd_gamma(args) -> int:
    k = args.k
    sigma = _sigma(args)
    rho = args.rho
    if args.baseline:
        th = analysis.bc_threshold_m(k, sigma, rho)
        gamma = analysis.gamma_bc(k, sigma, rho)
    else:
        th = analysis.threshold_m(k, sigma, rho)
        gamma = analysis.gamma_zigzag(k, sigma, rho)
    if args.format == "json":
        text = json.dumps({"k": k, "sigma": sigma, "rho": _rat(rho), "m": th.m,
                           "equality": th.equality, "sentinel": th.sentinel, "gamma": _rat(gamma)}) + "\n"
    elif args.format == "csv":
        text = (f"k,sigma,rho,m,equality,gamma\n{k},{sigma},{_rat(rho)},{th.m},"
                f"{str(th.equality).lower()},{_rat(gamma)}\n")
    else:
        text = f"m={th.m} equality={str(th.equality).lower()} gamma={_rat(gamma)} ≈ {float(gamma):.6f}\n"
        if th.sentinel:
            text += "note: no speed is <= rho, so m=0 and gamma = rho\n"
    _emit(text, args.out)
    return 0


def cmd_lcs_sim(args) -> int:
    k = args.k
    sigma = _sigma(args)
    base = parse_word(args.base) if args.base else zigzag_word(k)
    est = montecarlo.estimate_lcs_gamma(base, sigma, args.rho, args.n, args.samples,
                                        seed=args.seed, workers=args.workers)
    if args.format == "csv":
        text = montecarlo.to_csv(montecarlo.lcs_csv_rows("lcs", k, sigma, est))
    elif args.format == "json":
        text = json.dumps({"mean": est.mean, "sd": est.sd, "stderr": est.stderr, "n": est.n,
                           "samples": est.samples, "rho": _rat(est.rho), "seed": est.seed}) + "\n"
    else:
        text = (f"seed={est.seed} n={est.n} samples={est.samples} rho={_rat(est.rho)}\n"
                f"mean LCS/n = {est.mean:.6f}  sd = {est.sd:.6f}  stderr = {est.stderr:.6f}\n")
        if not args.base:
            gamma = analysis.gamma_zigzag(k, sigma, args.rho)
            text += f"predicted gamma = {_rat(gamma)} ≈ {float(gamma):.6f}\n"
    _emit(text, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="frogdyn", description="Frog dynamics on the zigzag word.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, sigma=True, fmt=("text", "csv", "json")):
        p.add_argument("--k", type=_positive, required=True)
        if sigma:
            p.add_argument("--sigma", type=_positive, default=None, help="alphabet size (default k)")
        p.add_argument("--format", choices=fmt, default=fmt[0])
        p.add_argument("--out", default=None, help="write to this file instead of stdout")

    p = sub.add_parser("count", help="counting table f(2k, m)")
    common(p, sigma=False)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("enumerate", help="dump hatted (or crowned) states as JSON")
    common(p, sigma=False, fmt=("json", "jsonl"))
    p.add_argument("--m", type=_nonneg, required=True)
    p.add_argument("--crowned", action="store_true")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("graph", help="state graph edge list")
    common(p, fmt=("csv", "json"))
    p.add_argument("--m", type=_nonneg, required=True)
    p.add_argument("--process", choices=("hatted", "blind"), default="hatted")
    p.add_argument("--workers", type=_positive, default=1)
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=sorted(SUITES))
    common(p, fmt=("text", "json"))
    p.add_argument("--trials", type=_positive, default=None)
    p.add_argument("--seed", type=_nonneg, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("speeds", help="frog speeds, exact or simulated")
    common(p)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", help="closed form (default)")
    mode.add_argument("--mc", action="store_true", help="Monte Carlo estimate")
    p.add_argument("--baseline", action="store_true", help="use the word 1 2 ... k")
    p.add_argument("--n", type=_nonneg, default=10**6)
    p.add_argument("--seed", type=_nonneg, default=DEFAULT_SEED)
    p.add_argument("--workers", type=_positive, default=1)
    p.set_defaults(func=cmd_speeds)

    p = sub.add_parser("gamma", help="exact Chvatal-Sankoff constant")
    common(p)
    p.add_argument("--rho", type=parse_rational, required=True)
    p.add_argument("--baseline", action="store_true", help="use the word 1 2 ... k")
    p.set_defaults(func=cmd_gamma)

    p = sub.add_parser("lcs-sim", help="Monte Carlo estimate of E LCS / n")
    common(p)
    p.add_argument("--rho", type=parse_rational, required=True)
    p.add_argument("--n", type=_positive, default=2000)
    p.add_argument("--samples", type=_positive, default=100)
    p.add_argument("--base", default=None, help="comma-separated base word (default: zigzag)")
    p.add_argument("--seed", type=_nonneg, default=DEFAULT_SEED)
    p.add_argument("--workers", type=_positive, default=1)
    p.set_defaults(func=cmd_lcs_sim)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, InvalidInput) as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
