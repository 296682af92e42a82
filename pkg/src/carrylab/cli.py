"""Command-line front end.

Subcommands: encode | add | analyze | neumann | simulate | markov | oracle.
All numeric output carries exact rational fields where available, plus a
decimal rendering.  Exit codes: 0 success, 2 usage error, 1 computation
error.  CARRYLAB_SEED provides the default seed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import matrices, moments, neumann, oracle, sim
from .fsm import serialize
from .markov import recognizer_automaton, shannon_parry, weighted_automaton
from .numbersys import (
    DigitSystem,
    Expansion,
    decode,
    encode,
    format_digits,
    parse_digits,
    parse_system,
)
from .addition import neumann_add, standard_add


def _default_seed() -> int:
    return int(os.environ.get("CARRYLAB_SEED", "0"))


def _common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--system", required=True, help="qd:q=10,d=-1 or ssde:q=4")
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    parser.add_argument("--out", help="write output to this file instead of stdout")
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--workers", type=int, default=1)


def _emit_rows(args, headers: Sequence[str], rows: Sequence[Sequence]) -> None:
    if args.format == "json":
        payload = [dict(zip(headers, row)) for row in rows]
        text = json.dumps(payload, indent=2, default=str) + "\n"
    else:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(headers)
        writer.writerows(rows)
        text = buffer.getvalue()
    _emit_text(args, text)


def _emit_text(args, text: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _fraction_fields(value: Fraction) -> Tuple[int, int, float]:
    return value.numerator, value.denominator, float(value)


def _parse_operand(text: str, system: DigitSystem) -> Expansion:
    """Digit strings contain a comma or sign-marked digits; else decimal."""
    if "," in text:
        return Expansion(system, tuple(parse_digits(text)))
    return encode(int(text), system)


def cmd_encode(args) -> int:
    system = parse_system(args.system)
    expansion = encode(args.n, system)
    _emit_rows(
        args,
        ("system", "n", "digits"),
        [(system.spec_string(), args.n, format_digits(expansion.digits))],
    )
    return 0


def cmd_add(args) -> int:
    system = parse_system(args.system)
    x = _parse_operand(args.x, system)
    y = _parse_operand(args.y, system)
    if args.mode == "standard":
        trace = standard_add(x, y)
        rows = [
            (
                system.spec_string(),
                "standard",
                format_digits(x.digits),
                format_digits(y.digits),
                format_digits(trace.result.digits),
                decode(trace.result),
                format_digits(trace.carries),
                trace.pos_count,
                trace.neg_count,
            )
        ]
        headers = (
            "system", "mode", "x", "y", "result", "value",
            "carries", "pos_count", "neg_count",
        )
        _emit_rows(args, headers, rows)
        if args.trace:
            lines = [
                f"digitwise sum (lsb first): {list(trace.digitwise_sum)}",
                f"carries (lsb first):       {list(trace.carries)}",
                f"result (msb first):        {trace.result}",
            ]
            sys.stderr.write("\n".join(lines) + "\n")
    else:
        trace = neumann_add(x, y)
        rows = [
            (
                system.spec_string(),
                "neumann",
                format_digits(x.digits),
                format_digits(y.digits),
                format_digits(trace.result.digits),
                decode(trace.result),
                trace.iterations,
            )
        ]
        headers = ("system", "mode", "x", "y", "result", "value", "iterations")
        _emit_rows(args, headers, rows)
        if args.trace:
            lines = []
            for k, (z, c) in enumerate(trace.states):
                lines.append(f"z({k}) = {format_digits(z)}")
                lines.append(f"c({k}) = {format_digits(c)}")
            sys.stderr.write("\n".join(lines) + "\n")
    return 0


def _analysis_matrix(system: DigitSystem):
    if system.kind == "qd":
        matrix = matrices.build_S_qd(system.q, system.d)
        exits = [Fraction(1)] * 3
        initial = 1  # the carry-0 row
    else:
        machine = matrices.standard_machine_ssde(system.q)
        matrix = matrices.machine_poly_matrix(machine)
        exits = list(machine.exit_weights)
        initial = machine.initial
    return matrix, exits, initial


def cmd_analyze(args) -> int:
    system = parse_system(args.system)
    matrix, exits, initial = _analysis_matrix(system)
    if args.dump_matrix:
        _emit_text(args, matrix.render())
        return 0
    if args.distribution:
        dist = moments.exact_distribution(matrix, exits, initial, args.ell)
        rows = [
            (m, n, mass.numerator, mass.denominator)
            for (m, n), mass in sorted(dist.items())
        ]
        _emit_rows(
            args,
            ("m", "n", "probability_numerator", "probability_denominator"),
            rows,
        )
        if args.plot:
            from . import report

            if not args.out:
                raise ValueError("--plot needs --out to name the figure")
            report.render_joint_distribution(
                dist, args.ell, system.spec_string(), report.figure_path(args.out)
            )
        return 0
    constants = moments.moment_constants(moments.char_det(matrix))
    rows = []
    for name, value in (
        ("e_pos", constants.e_m),
        ("e_neg", constants.e_n),
        ("v_pos", constants.v_m),
        ("v_neg", constants.v_n),
        ("covariance", constants.c),
    ):
        num, den, dec = _fraction_fields(value)
        rows.append((name, num, den, dec))
    _emit_rows(args, ("quantity", "numerator", "denominator", "decimal"), rows)
    return 0


def cmd_neumann(args) -> int:
    system = parse_system(args.system)
    if system.kind != "ssde":
        raise ValueError("the iteration analysis applies to ssde systems")
    chain = neumann.make_chain(system.q)
    asym = neumann.make_asymptotics(system.q, harmonics=args.harmonics)
    ell = args.ell
    k_hi = neumann._k_ceiling(chain, ell)
    table = neumann.cdf_table(chain, [ell], list(range(0, k_hi + 1)))[ell]
    mean, variance = neumann.moments_from_cdf(table)
    mean_t = mean + 2.0
    rows: List[Tuple] = []
    for k in sorted(table):
        predicted = math.exp(-float(asym.delta) * ell / system.q**k)
        rows.append(("cdf", k + 2, f"{table[k]:.12f}", f"{predicted:.12f}"))
    rows.append(("mean", "", f"{mean_t:.12f}", f"{neumann.asymptotic_expectation(asym, ell):.12f}"))
    rows.append(("variance", "", f"{variance:.12f}", f"{neumann.asymptotic_variance(asym, ell):.12f}"))
    _emit_rows(args, ("kind", "k", "exact", "predicted"), rows)
    if args.plot:
        from . import report

        if not args.out:
            raise ValueError("--plot needs --out to name the figure")
        cdf_rows = [
            (row[1], float(row[2]), float(row[3])) for row in rows if row[0] == "cdf"
        ]
        report.render_neumann_report(
            cdf_rows, ell, system.q, report.figure_path(args.out)
        )
    return 0


def cmd_simulate(args) -> int:
    system = parse_system(args.system)
    seed = args.seed if args.seed is not None else _default_seed()
    if args.mode == "standard":
        stats = sim.simulate_carries(system, args.ell, args.trials, seed, args.workers)
        rows = [
            (
                system.spec_string(), args.ell, args.trials, seed,
                f"{stats.mean_pos:.6f}", f"{stats.mean_neg:.6f}",
                f"{stats.var_pos:.6f}", f"{stats.var_neg:.6f}", f"{stats.cov:.6f}",
            )
        ]
        headers = (
            "system", "ell", "trials", "seed",
            "mean_pos", "mean_neg", "var_pos", "var_neg", "cov",
        )
        _emit_rows(args, headers, rows)
    else:
        histogram = sim.simulate_neumann(system, args.ell, args.trials, seed, args.workers)
        rows = [(t, count) for t, count in sorted(histogram.items())]
        _emit_rows(args, ("t", "count"), rows)
        if args.plot:
            from . import report

            if not args.out:
                raise ValueError("--plot needs --out to name the figure")
            report.render_neumann_histogram(
                histogram, args.ell, system.spec_string(), report.figure_path(args.out)
            )
    return 0


def cmd_markov(args) -> int:
    system = parse_system(args.system)
    base = recognizer_automaton(system)
    pw = shannon_parry(base)
    lines = [
        f"system {system.spec_string()}",
        f"lambda {pw.eigenvalue}",
        "w " + " ".join(str(v) for v in pw.right),
        "u " + " ".join(str(v) for v in pw.left),
        "exit " + " ".join(str(v) for v in pw.exit_weights),
        "stationary " + " ".join(str(v) for v in pw.stationary),
        f"xi {pw.spectral_ratio:.6f}",
    ]
    for t in base.transitions:
        lines.append(
            f"p {base.state_labels[t.src]} -> {base.state_labels[t.dst]}"
            f" on {t.label}: {pw.probability(t.src, t.dst)}"
        )
    if args.dump:
        lines.append("")
        lines.append(serialize(weighted_automaton(system)).rstrip("\n"))
    _emit_text(args, "\n".join(lines) + "\n")
    return 0


def cmd_oracle(args) -> int:
    system = parse_system(args.system)
    if args.mode == "standard":
        dist = oracle.carry_distribution_bruteforce(system, args.ell)
        rows = [
            (m, n, mass.numerator, mass.denominator)
            for (m, n), mass in sorted(dist.items())
        ]
        _emit_rows(args, ("m", "n", "weight_numerator", "weight_denominator"), rows)
    else:
        dist = oracle.neumann_distribution_bruteforce(system, args.ell)
        rows = [(t, mass.numerator, mass.denominator) for t, mass in sorted(dist.items())]
        _emit_rows(args, ("t", "weight_numerator", "weight_denominator"), rows)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="carrylab",
        description="signed-digit number systems and exact carry statistics",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    p = commands.add_parser("encode", help="expansion of an integer")
    _common_flags(p)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_encode)

    p = commands.add_parser("add", help="add two expansions")
    _common_flags(p)
    p.add_argument("--mode", choices=("standard", "neumann"), default="standard")
    p.add_argument("--x", required=True, help="digit string (msb, commas) or integer")
    p.add_argument("--y", required=True)
    p.add_argument("--trace", action="store_true", help="dump the full trace to stderr")
    p.set_defaults(func=cmd_add)

    p = commands.add_parser("analyze", help="exact carry statistics")
    _common_flags(p)
    p.add_argument("--dump-matrix", action="store_true")
    p.add_argument("--distribution", action="store_true")
    p.add_argument("--ell", type=int, default=10)
    p.add_argument("--plot", action="store_true")
    p.set_defaults(func=cmd_analyze)

    p = commands.add_parser("neumann", help="iteration-count analysis")
    _common_flags(p)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--report", action="store_true", help="kept for symmetry; reports always emit the table")
    p.add_argument("--harmonics", type=int, default=10)
    p.add_argument("--plot", action="store_true")
    p.set_defaults(func=cmd_neumann)

    p = commands.add_parser("simulate", help="Monte Carlo over random pairs")
    _common_flags(p)
    p.add_argument("--mode", choices=("standard", "neumann"), default="standard")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--plot", action="store_true")
    p.set_defaults(func=cmd_simulate)

    p = commands.add_parser("markov", help="equidistribution weights")
    _common_flags(p)
    p.add_argument("--dump", action="store_true", help="also dump the weighted machine")
    p.set_defaults(func=cmd_markov)

    p = commands.add_parser("oracle", help="brute-force distributions")
    _common_flags(p)
    p.add_argument("--mode", choices=("standard", "neumann"), default="standard")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--brute", action="store_true", help="kept for symmetry; this command always brute-forces")
    p.set_defaults(func=cmd_oracle)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, RuntimeError) as error:
        sys.stderr.write(f"error: {error}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
