"""Command-line entry point: ``lapcycles {solve,sweep,p2fit,analytic,verify}``.

Exit codes: 0 success, 1 bad input or parameters, 2 failed internal check.
Lists accept comma-separated values and inclusive ``start:stop:step``
ranges, e.g. ``--lambda-list=-1:1:0.1`` (use ``=`` when a value starts
with a minus sign).
"""

from __future__ import annotations

import argparse
import json
import sys
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from typing import Sequence

from . import analytic, verify
from .cycles import decompose
from .ensemble import Distribution, EnsembleParams, generate_matrix, read_matrix, write_matrix
from .errors import InvariantError
from .experiment import SweepConfig, p2_decay_experiment, run_sweep
from .output import RecordCsvSink, fmt_stat, format_summaries, write_stirling_csv
from .solver import solve_lap

SOLVE_MAX_N = 5000


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def parse_list(text: str) -> list[Decimal]:
    """``"1,2,5"`` or ``"-1:1:0.5"`` (inclusive) or a mix of both, as exact decimals."""
    out = []
    try:
        for part in text.split(","):
            part = part.strip()
            if not part:
                continue
            if ":" in part:
                bits = part.split(":")
                if len(bits) != 3:
                    raise UsageError(f"range must be start:stop:step, got {part!r}")
                start, stop, step = (Decimal(b) for b in bits)
                if step <= 0:
                    raise UsageError(f"range step must be positive, got {part!r}")
                v = start
                while v <= stop:
                    out.append(v)
                    v += step
            else:
                out.append(Decimal(part))
    except (InvalidOperation, ValueError):
        raise UsageError(f"cannot parse list {text!r}") from None
    if not out:
        raise UsageError(f"empty list {text!r}")
    return out


def _int_list(text: str) -> list[int]:
    vals = parse_list(text)
    if any(v != v.to_integral_value() for v in vals):
        raise UsageError(f"expected integers in {text!r}")
    return [int(v) for v in vals]


def _float_list(text: str) -> list[float]:
    return [float(v) for v in parse_list(text)]


def _emit(text: str, path: str | None) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _frac(x: Fraction) -> str:
    return f"{x} (≈{float(x):.9f})"


def cmd_solve(args) -> int:
    if args.matrix:
        m = read_matrix(args.matrix)
    else:
        if args.n is None or args.lam is None or args.seed is None:
            raise UsageError("solve needs --matrix FILE or all of --n, --lambda, --seed")
        if args.n > SOLVE_MAX_N:
            raise UsageError(f"--n limited to {SOLVE_MAX_N}")
        params = EnsembleParams(
            n=args.n,
            lam=args.lam,
            distribution=Distribution.EXPONENTIAL1 if args.exponential else Distribution.UNIFORM01,
            allow_one_cycles=args.allow_one_cycles,
            master_seed=args.seed,
        )
        m = generate_matrix(params, args.trial_index)
    if m.n > SOLVE_MAX_N:
        raise UsageError(f"matrix dimension limited to {SOLVE_MAX_N}")
    if args.dump:
        write_matrix(m, args.dump)
    a = solve_lap(m)
    stats = decompose(a.sigma)
    lines = [
        f"n: {a.n}",
        "sigma: " + " ".join(str(j) for j in a.as_tuple()),
        f"cost: {a.cost!r}",
        "cycle_lengths: " + " ".join(f"{k}x{c}" for k, c in stats.cycle_lengths.items()),
        f"n_cycles: {stats.n_cycles}",
        f"two_cycles: {stats.two_cycle_count}",
        f"n_cycle: {str(stats.is_n_cycle).lower()}",
    ]
    _emit("\n".join(lines) + "\n", None)
    return 0


def _sweep_config(args, lambdas) -> SweepConfig:
    return SweepConfig(
        n_values=_int_list(args.n_list),
        lambda_values=lambdas,
        trials=args.trials,
        master_seed=args.seed,
        distribution=Distribution.EXPONENTIAL1 if getattr(args, "exponential", False) else Distribution.UNIFORM01,
        allow_one_cycles=getattr(args, "allow_one_cycles", False),
        parallelism_hint=args.parallelism,
    )


def cmd_sweep(args) -> int:
    config = _sweep_config(args, _float_list(args.lambda_list))
    raw_fh = open(args.raw_out, "w", encoding="utf-8", newline="\n") if args.raw_out else None
    try:
        sink = RecordCsvSink(raw_fh) if raw_fh else None
        summaries, _ = run_sweep(config, record_sink=sink)
    finally:
        if raw_fh:
            raw_fh.close()
    _emit(format_summaries(summaries, args.format), args.out)
    return 0


def cmd_p2fit(args) -> int:
    config = _sweep_config(args, [args.lam])
    fit = p2_decay_experiment(config)
    if args.format == "json":
        text = json.dumps(
            {
                "lambda": fit.lam,
                "slope": fit.slope,
                "intercept": fit.intercept,
                "r_squared": fit.r_squared,
                "xi": fit.xi,
                "points": [[n, y] for n, y in fit.points],
                "dropped": list(fit.dropped),
            },
            indent=2,
        ) + "\n"
    else:
        lines = [
            f"lambda: {fit.lam:.6f}",
            f"slope: {fmt_stat(fit.slope)}",
            f"intercept: {fmt_stat(fit.intercept)}",
            f"r_squared: {fmt_stat(fit.r_squared)}",
            f"xi: {fmt_stat(fit.xi)}",
            "points: " + " ".join(f"{n}:{fmt_stat(y)}" for n, y in fit.points),
            "dropped: " + (" ".join(str(n) for n in fit.dropped) or "none"),
        ]
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return 0


def cmd_analytic(args) -> int:
    what = args.what

    def need(name):
        val = getattr(args, name)
        if val is None:
            raise UsageError(f"--what {what} needs --{name.replace('_', '-')}")
        return val

    if what == "harmonic":
        text = _frac(analytic.harmonic(need("n")))
    elif what == "parisi":
        text = fmt_stat(analytic.parisi_length(need("n")))
    elif what == "pn":
        text = fmt_stat(analytic.p_n_cycle_theory(need("regime"), need("n")))
    elif what == "expected-cycles":
        r, n = need("r"), need("n")
        if args.asymptotic:
            regime = {2: analytic.Regime.LAMBDA_ZERO, 3: analytic.Regime.LAMBDA_MINUS_ONE}.get(r)
            if regime is None:
                raise UsageError("asymptotic expansion exists for --r 2 and --r 3 only")
            text = fmt_stat(analytic.expected_cycles_asymptotic(regime, n))
        else:
            text = _frac(analytic.expected_cycles_exact(r, n, n_max=args.n_max))
    elif what == "stirling":
        r = need("r")
        n_max = args.n_max if args.n_max is not None else need("n")
        if args.out in (None, "-"):
            write_stirling_csv([analytic.stirling_table(r, n_max)], sys.stdout)
        else:
            with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
                write_stirling_csv([analytic.stirling_table(r, n_max)], fh)
        return 0
    else:  # argparse restricts choices
        raise UsageError(f"unknown --what {what}")
    _emit(text + "\n", args.out)
    return 0


def cmd_verify(args) -> int:
    results = verify.run_checks(args.level)
    width = max(len(r.name) for r in results)
    for r in results:
        flag = "PASS" if r.passed else "FAIL"
        print(f"{flag}  {r.name:<{width}}  {r.seconds:7.2f}s  {r.detail}")
    failed = sum(not r.passed for r in results)
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return 0 if failed == 0 else 2


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="lapcycles", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("solve", help="solve one instance and print its cycle structure")
    s.add_argument("--matrix", help="matrix dump file (first line N, then N rows)")
    s.add_argument("--n", type=int)
    s.add_argument("--lambda", dest="lam", type=float)
    s.add_argument("--seed", type=int)
    s.add_argument("--trial-index", type=int, default=0)
    s.add_argument("--exponential", action="store_true")
    s.add_argument("--allow-one-cycles", action="store_true")
    s.add_argument("--dump", help="also write the generated matrix to this file")
    s.set_defaults(func=cmd_solve)

    def grid_flags(sp):
        sp.add_argument("--n-list", required=True)
        sp.add_argument("--trials", type=int, required=True)
        sp.add_argument("--seed", type=int, required=True)
        sp.add_argument("--parallelism", type=int, default=1, help="worker processes (0 = all cores)")
        sp.add_argument("--out", default="-")
        sp.add_argument("--format", choices=("csv", "json"), default="csv")

    w = sub.add_parser("sweep", help="Monte Carlo sweep over an (n, lambda) grid")
    grid_flags(w)
    w.add_argument("--lambda-list", required=True)
    w.add_argument("--raw-out", help="CSV file for per-trial records")
    w.add_argument("--exponential", action="store_true", help="Exp(1) entries (lambda = 0 only)")
    w.add_argument("--allow-one-cycles", action="store_true", help="random diagonal instead of the sentinel")
    w.set_defaults(func=cmd_sweep)

    f = sub.add_parser("p2fit", help="fit the exponential decay of the 2-cycle probability")
    grid_flags(f)
    f.add_argument("--lambda", dest="lam", type=float, required=True)
    f.set_defaults(func=cmd_p2fit)

    a = sub.add_parser("analytic", help="exact and asymptotic predictions")
    a.add_argument("--what", required=True, choices=("expected-cycles", "stirling", "pn", "parisi", "harmonic"))
    a.add_argument("--r", type=int)
    a.add_argument("--n", type=int)
    a.add_argument("--n-max", type=int, default=None)
    a.add_argument("--regime", choices=[r.value for r in analytic.Regime])
    a.add_argument("--asymptotic", action="store_true", help="use the 11-term large-n expansion")
    a.add_argument("--out", default="-")
    a.set_defaults(func=cmd_analytic)

    v = sub.add_parser("verify", help="run the oracle and invariant checks")
    v.add_argument("--level", choices=("fast", "full"), default="fast")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    if hasattr(sys.stdout, "reconfigure"):
        sys.stdout.reconfigure(encoding="utf-8")
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "what", None) == "expected-cycles" and args.n_max is None:
            args.n_max = analytic.DEFAULT_N_MAX
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except InvariantError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
