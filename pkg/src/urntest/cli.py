"""Command-line interface.

Every subcommand accepts either an evidence-ledger file or inline urn
parameters (--t/--r/--n/--x), writes results to stdout (or --out), and
keeps diagnostics on stderr. Exit codes: 0 success, 2 parse or validation
failure, 3 infeasible computation, 1 internal error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import fixture_path  # noqa: F401  (re-exported for interactive use)
from .errors import (
    DegenerateUrnError,
    DomainError,
    InvalidUrnError,
    LedgerError,
    SolverError,
    UnreachableThresholdError,
    UrnSizeError,
    UrnTestError,
)
from .ledger import DEFAULT_ALPHAS, derive_counts, parse_ledger
from .oracle import SimConfig, monte_carlo
from .report import (
    emit_plot_data,
    render,
    run_sequential_rivals,
    run_test,
    summarize_urn,
    summary_as_dict,
)
from .sensitivity import solve_omega
from .urn import UrnSpec, build_plus_one_urn

_VALIDATION_ERRORS = (LedgerError, InvalidUrnError, DomainError)
_INFEASIBLE_ERRORS = (DegenerateUrnError, UnreachableThresholdError, SolverError, UrnSizeError)


class _UsageError(UrnTestError):
    pass


def _alpha(text: str) -> Fraction:
    value = Fraction(text)
    if not 0 < value < 1:
        raise ValueError(f"alpha {text} must lie strictly in (0, 1)")
    return value


def _alpha_list(text: str) -> tuple[Fraction, ...]:
    return tuple(_alpha(part) for part in text.split(","))


def _add_urn_source(parser: argparse.ArgumentParser, *, with_x: bool = True):
    parser.add_argument("ledger", nargs="?", help="evidence ledger JSON file")
    parser.add_argument("--t", type=int, help="working-supporting items in the urn")
    parser.add_argument("--r", type=int, help="rival-supporting items in the urn")
    parser.add_argument("--n", type=int, help="items drawn from the urn")
    if with_x:
        parser.add_argument(
            "--x", type=int, help="observed working-supporting draws (default: min(n, t))"
        )


def _add_output(parser: argparse.ArgumentParser, formats=("text", "json", "csv")):
    parser.add_argument("--format", choices=formats, default=formats[0], help="output format")
    parser.add_argument("--out", type=Path, help="write output to this file instead of stdout")


def _read_ledger(path: str):
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise _UsageError(f"cannot read ledger {path!r}: {exc}") from exc
    return parse_ledger(data)


def _inline_urn(args, *, with_x: bool = True) -> UrnSpec:
    missing = [flag for flag in ("t", "r", "n") if getattr(args, flag) is None]
    if missing:
        raise _UsageError(
            "provide a ledger file or a full inline urn (--t, --r, --n missing: "
            + ", ".join("--" + m for m in missing)
            + ")"
        )
    x = getattr(args, "x", None) if with_x else None
    if x is None:
        x = min(args.n, args.t)
    return UrnSpec(t_count=args.t, r_count=args.r, sample_size=args.n, support_count=x)


def _urn_source(args, *, with_x: bool = True):
    """Return (urn, ledger-or-None) from a ledger path or inline flags."""
    if args.ledger is not None:
        if args.t is not None or args.r is not None or args.n is not None:
            raise _UsageError("give either a ledger file or inline urn flags, not both")
        ledger = _read_ledger(args.ledger)
        working, rival, weights = derive_counts(ledger)
        return build_plus_one_urn(working, rival, weights), ledger
    return _inline_urn(args, with_x=with_x), None


def _emit(data: bytes, out: Path | None):
    if out is None:
        sys.stdout.write(data.decode("utf-8"))
    else:
        out.write_bytes(data)


def _json_bytes(obj) -> bytes:
    import json

    return (json.dumps(obj, indent=2, ensure_ascii=False) + "\n").encode("utf-8")


def _cmd_test(args) -> int:
    if args.ledger is not None:
        if args.t is not None or args.r is not None or args.n is not None:
            raise _UsageError("give either a ledger file or inline urn flags, not both")
        summary = run_test(_read_ledger(args.ledger), alphas=args.alpha)
    else:
        urn = _inline_urn(args)
        summary = summarize_urn(urn, args.alpha or DEFAULT_ALPHAS)
    _emit(render(summary, args.format), args.out)
    return 0


def _cmd_dist(args) -> int:
    urn, _ = _urn_source(args)
    data = emit_plot_data("null_dist", urn=urn, odds=args.odds)
    if args.format == "csv":
        _emit(data, args.out)
        return 0
    rows = [line.split(",") for line in data.decode().strip().split("\n")[1:]]
    if args.format == "json":
        payload = {
            "urn": {
                "t_count": urn.t_count,
                "r_count": urn.r_count,
                "sample_size": urn.sample_size,
                "support_count": urn.support_count,
            },
            "odds": args.odds if args.odds is not None else 1.0,
            "distribution": [{"k": int(k), "probability": float(p)} for k, p in rows],
        }
        _emit(_json_bytes(payload), args.out)
        return 0
    lines = [f"P(k = {k}) = {float(p):.6f}" for k, p in rows]
    _emit(("\n".join(lines) + "\n").encode(), args.out)
    return 0


def _cmd_sens(args) -> int:
    urn, _ = _urn_source(args)
    result = solve_omega(urn, float(args.alpha), tol=args.tol)
    if args.format == "json":
        payload = {
            "alpha": result.alpha,
            "omega_star": result.omega_star,
            "achieved_p": result.achieved_p,
            "percent_more_likely": result.percent_more_likely,
            "iterations": result.iterations,
            "bracket": list(result.bracket),
        }
        _emit(_json_bytes(payload), args.out)
    elif args.format == "csv":
        text = (
            "alpha,omega,omega_precise,achieved_p\n"
            f"{float(args.alpha)!r},{result.omega_star:.2f},{result.omega_star!r},{result.achieved_p!r}\n"
        )
        _emit(text.encode(), args.out)
    else:
        _emit(
            (
                f"alpha={float(args.alpha):g}: odds ratio omega* = {result.omega_star:.3f} "
                f"(working-supporting evidence {result.percent_more_likely:.0f}% more likely)\n"
            ).encode(),
            args.out,
        )
    return 0


def _cmd_sweep(args) -> int:
    if args.weight_max is not None:
        if args.ledger is not None:
            ledger = _read_ledger(args.ledger)
            working, rival, _ = derive_counts(ledger)
        else:
            urn = _inline_urn(args)
            if urn.sample_size < urn.t_count:
                raise _UsageError("weight grid needs sample_size >= t_count for the inline urn")
            working, rival = urn.t_count, urn.sample_size - urn.t_count
        if args.scale == "log":
            ratio = (args.omega_max / args.omega_min) ** (1.0 / (args.steps - 1))
            omegas = [args.omega_min * ratio**i for i in range(args.steps)]
        else:
            step = (args.omega_max - args.omega_min) / (args.steps - 1)
            omegas = [args.omega_min + step * i for i in range(args.steps)]
        data = emit_plot_data(
            "weight_grid",
            working_obs=working,
            rival_obs=rival,
            weight_values=list(range(1, args.weight_max + 1)),
            omega_values=omegas,
        )
    else:
        urn, _ = _urn_source(args)
        data = emit_plot_data(
            "omega_curve",
            urn=urn,
            omega_min=args.omega_min,
            omega_max=args.omega_max,
            steps=args.steps,
            scale=args.scale,
        )
    print(f"scale={args.scale}", file=sys.stderr)
    _emit(data, args.out)
    return 0


def _cmd_simulate(args) -> int:
    urn = UrnSpec(
        t_count=args.t,
        r_count=args.r,
        sample_size=args.n,
        support_count=min(args.n, args.t),
    )
    freqs = monte_carlo(urn, SimConfig(draws=args.draws, seed=args.seed))
    lines = ["k,probability"] + [f"{k},{p!r}" for k, p in freqs]
    _emit(("\n".join(lines) + "\n").encode(), args.out)
    return 0


def _cmd_multi(args) -> int:
    ledgers = [_read_ledger(path) for path in args.ledgers]
    outcomes = run_sequential_rivals(ledgers, args.alpha0, rule=args.rule)
    if args.format == "json":
        payload = [
            {
                "adjusted_alpha": float(out.adjusted_alpha),
                "reject": out.reject,
                "summary": summary_as_dict(out.summary),
            }
            for out in outcomes
        ]
        _emit(_json_bytes(payload), args.out)
    elif args.format == "csv":
        lines = ["case,adjusted_alpha,p_upper,reject,omega"]
        for out in outcomes:
            res = out.summary.sensitivity[0]
            omega = "" if res is None else repr(res.omega_star)
            case = out.summary.digest.case_name.replace(",", ";")
            lines.append(
                f"{case},{float(out.adjusted_alpha)!r},{float(out.summary.p_upper)!r},"
                f"{str(out.reject).lower()},{omega}"
            )
        _emit(("\n".join(lines) + "\n").encode(), args.out)
    else:
        blocks = []
        for out in outcomes:
            verdict = "reject rival" if out.reject else "fail to reject rival"
            blocks.append(
                f"== {out.summary.digest.case_name}\n"
                f"adjusted alpha = {float(out.adjusted_alpha):g} -> {verdict}\n"
                + render(out.summary, "text").decode()
            )
        _emit("\n".join(blocks).encode(), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="urntest",
        description=(
            "Exact urn-model hypothesis tests for single-case qualitative "
            "evidence, with biased-urn sensitivity analysis."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_test = sub.add_parser(
        "test", help="run the full test: p-value upper bound plus sensitivity"
    )
    _add_urn_source(p_test)
    p_test.add_argument(
        "--alpha",
        type=_alpha_list,
        default=None,
        help="comma-separated rejection thresholds (default: 0.05,0.10 or the ledger's)",
    )
    _add_output(p_test)
    p_test.set_defaults(func=_cmd_test)

    p_dist = sub.add_parser("dist", help="full null distribution over draw counts")
    _add_urn_source(p_dist)
    p_dist.add_argument("--odds", type=float, default=None, help="bias odds ratio (default: 1)")
    _add_output(p_dist)
    p_dist.set_defaults(func=_cmd_dist)

    p_sens = sub.add_parser("sens", help="solve the bias odds ratio for one threshold")
    _add_urn_source(p_sens)
    p_sens.add_argument("--alpha", type=_alpha, required=True, help="rejection threshold")
    p_sens.add_argument(
        "--tol", type=float, default=1e-9, help="solver tolerance (default: 1e-9)"
    )
    _add_output(p_sens)
    p_sens.set_defaults(func=_cmd_sens)

    p_sweep = sub.add_parser("sweep", help="tail probability over an odds-ratio grid (CSV)")
    _add_urn_source(p_sweep)
    p_sweep.add_argument("--omega-min", type=float, required=True)
    p_sweep.add_argument("--omega-max", type=float, required=True)
    p_sweep.add_argument("--steps", type=int, required=True)
    p_sweep.add_argument(
        "--weight-max",
        type=int,
        default=None,
        help="also sweep the first observation's weight from 1 to this value",
    )
    p_sweep.add_argument(
        "--scale", choices=("log", "linear"), default="log", help="grid spacing (default: log)"
    )
    p_sweep.add_argument("--out", type=Path, help="write output to this file instead of stdout")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_sim = sub.add_parser("simulate", help="seeded Monte Carlo draws from the unbiased urn (CSV)")
    p_sim.add_argument("--t", type=int, required=True)
    p_sim.add_argument("--r", type=int, required=True)
    p_sim.add_argument("--n", type=int, required=True)
    p_sim.add_argument(
        "--draws", type=int, default=100_000, help="replications (default: 100000)"
    )
    p_sim.add_argument("--seed", type=int, required=True, help="explicit 64-bit seed")
    p_sim.add_argument("--out", type=Path, help="write output to this file instead of stdout")
    p_sim.set_defaults(func=_cmd_simulate)

    p_multi = sub.add_parser("multi", help="test several rival ledgers in sequence")
    p_multi.add_argument("ledgers", nargs="+", help="one ledger file per rival")
    p_multi.add_argument("--alpha0", type=_alpha, required=True, help="starting threshold")
    p_multi.add_argument(
        "--rule",
        choices=("halving", "fixed"),
        default="halving",
        help="threshold adjustment per additional rival (default: halving)",
    )
    _add_output(p_multi)
    p_multi.set_defaults(func=_cmd_multi)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _INFEASIBLE_ERRORS as exc:
        print(f"urntest: infeasible: {exc}", file=sys.stderr)
        return 3
    except _VALIDATION_ERRORS as exc:
        print(f"urntest: error: {exc}", file=sys.stderr)
        return 2
    except _UsageError as exc:
        print(f"urntest: error: {exc}", file=sys.stderr)
        return 2
    except UrnTestError as exc:
        print(f"urntest: error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # pragma: no cover
        print(f"urntest: internal error: {exc!r}", file=sys.stderr)
        return 1


def entrypoint():
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
