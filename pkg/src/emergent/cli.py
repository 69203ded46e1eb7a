"""Command-line interface.

Every command writes one table, as CSV (a ``#`` metadata line, a header,
then rows) or as a JSON object ``{"metadata": ..., "rows": [...]}``.
Exit status is 0 on success, 3 for domain errors and 4 when a size cap is
hit; argparse usage errors keep their usual status 2.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import shlex
import sys
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__, dice, montecarlo, process, solids
from .errors import DomainError, ResourceError

EXIT_DOMAIN = 3
EXIT_RESOURCE = 4
JSON_INT_LIMIT = 2**53
LOG_DIGITS = 12


# -- output envelope ---------------------------------------------------------

def _timestamp() -> str:
    # SOURCE_DATE_EPOCH pins the timestamp so seeded runs are byte-identical.
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    when = (
        datetime.fromtimestamp(int(epoch), tz=timezone.utc)
        if epoch
        else datetime.now(timezone.utc)
    )
    return when.strftime("%Y-%m-%dT%H:%M:%SZ")


def _json_value(v):
    if isinstance(v, (bool, type(None), str)):
        return v
    if isinstance(v, (int, np.integer)):
        v = int(v)
        return str(v) if abs(v) > JSON_INT_LIMIT else v
    if isinstance(v, (float, np.floating)):
        return float(v)
    return str(v)


def _csv_value(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def render(columns, rows, metadata, fmt: str) -> str:
    if fmt == "json":
        doc = {
            "metadata": {k: _json_value(v) for k, v in metadata.items()},
            "rows": [{c: _json_value(r[c]) for c in columns} for r in rows],
        }
        return json.dumps(doc, indent=2) + "\n"
    buf = io.StringIO()
    meta = {k: _json_value(v) for k, v in metadata.items()}
    buf.write("# " + json.dumps(meta, separators=(",", ":")) + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for r in rows:
        writer.writerow([_csv_value(r[c]) for c in columns])
    return buf.getvalue()


def _emit(args, columns, rows, **extra):
    metadata = {
        "tool": "emergent",
        "version": __version__,
        "command": args.command_line,
        "seed": args.seed,
        "timestamp": _timestamp(),
    }
    metadata.update(extra)
    text = render(columns, rows, metadata, args.format)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def _log_fmt(x: float) -> float:
    return float(f"{x:.{LOG_DIGITS}g}")


def _fraction_str(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _fraction_arg(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")


def _seed_arg(text: str) -> int:
    seed = int(text)
    if not 0 <= seed < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return seed


# -- commands ----------------------------------------------------------------

def cmd_dice(args):
    faces = args.dice
    if args.face_labels:
        if len(args.face_labels) != len(faces):
            raise DomainError("give --face-labels once per die")
        specs = [dice.DieSpec(f, tuple(lbl.split(","))) for f, lbl in zip(faces, args.face_labels)]
    else:
        specs = [dice.DieSpec(f) for f in faces]
    if args.mapping == "sum":
        table = dice.macrostate_table(specs)
        name = lambda m: m  # noqa: E731
    else:
        table = dice.macrostate_table(specs, dice.identity_mapping)
        name = lambda m: "-".join(str(x) for x in m)  # noqa: E731
    rows = [
        {
            "macrostate": name(r.macrostate),
            "multiplicity": r.multiplicity,
            "probability": _fraction_str(r.probability),
            "probability_decimal": float(r.probability),
        }
        for r in table
    ]
    _emit(
        args,
        ["macrostate", "multiplicity", "probability", "probability_decimal"],
        rows,
        total_multiplicity=table.total,
    )


def _solid_rows(dist):
    if dist.log_space:
        return [
            {
                "q_A": r.q_a,
                "ln_omega_A": _log_fmt(r.ln_omega_a),
                "q_B": r.q_b,
                "ln_omega_B": _log_fmt(r.ln_omega_b),
                "ln_omega_tot": _log_fmt(r.ln_omega_tot),
                "probability": r.probability,
            }
            for r in dist.rows()
        ]
    return [
        {
            "q_A": r.q_a,
            "omega_A": r.omega_a,
            "q_B": r.q_b,
            "omega_B": r.omega_b,
            "omega_tot": r.omega_tot,
            "probability": r.probability,
        }
        for r in dist.rows()
    ]


def cmd_solids(args):
    sys_ = solids.CoupledSolids(args.na, args.nb, args.q)
    dist = solids.macrostate_distribution(sys_, mode="log" if args.log else "exact")
    stats = solids.peak_stats(dist)
    rows = _solid_rows(dist)
    extra = {"mode": "log" if dist.log_space else "exact"}
    if dist.log_space:
        extra["ln_total_multiplicity"] = _log_fmt(dist.ln_total)
    else:
        extra["total_multiplicity"] = dist.total
    extra.update(mean=stats.mean, std=stats.std, relative_width=stats.relative_width, fwhm=stats.fwhm)
    _emit(args, list(rows[0]), rows, **extra)


def _reference_distribution(sys_):
    try:
        return solids.macrostate_distribution(sys_, mode="exact")
    except ResourceError:
        return solids.macrostate_distribution(sys_, mode="log")


def cmd_mc(args):
    sys_ = solids.CoupledSolids(args.na, args.nb, args.q)
    seed = 0 if args.seed is None else args.seed
    args.seed = seed
    config = montecarlo.ChainConfig(args.steps, args.burn_in, seed, args.stride)
    seeds = [(seed + i) % 2**64 for i in range(args.chains)]
    results = montecarlo.run_chains(sys_, args.init, config, seeds, workers=args.workers)
    # run_chains sorts by seed; keep that order everywhere below.
    exact = _reference_distribution(sys_)
    hist = np.sum([r.histogram for r in results], axis=0)
    tvs = [montecarlo.tv_distance(r.histogram, exact) for r in results]
    freq = hist / hist.sum()
    rows = [
        {"q_A": q, "count": int(hist[q]), "empirical": float(freq[q]), "exact": float(exact.probability[q])}
        for q in range(sys_.q_total + 1)
    ]
    if args.trace:
        with open(args.trace, "w") as fh:
            for r in results:
                if len(results) > 1:
                    fh.write(f"# seed={r.seed}\n")
                fh.write("".join(f"{v}\n" for v in r.trace.tolist()))
    _emit(
        args,
        ["q_A", "count", "empirical", "exact"],
        rows,
        init=args.init,
        steps=args.steps,
        burn_in=args.burn_in,
        stride=args.stride,
        chains=len(results),
        samples=int(hist.sum()),
        tv_distance=float(np.mean(tvs)),
        tv_distance_pooled=montecarlo.tv_distance(hist, exact),
        rng=montecarlo.RNG_ALGORITHM,
    )


def cmd_sweep(args):
    base = solids.CoupledSolids(args.na, args.nb, args.q)
    rows = []
    for f, st in solids.scaling_sweep(base, args.factors, workers=args.workers):
        row = {
            "factor": f,
            "N_A": f * base.n_a,
            "N_B": f * base.n_b,
            "q": f * base.q_total,
            "mean": st.mean,
            "std": st.std,
            "relative_width": st.relative_width,
            "fwhm": st.fwhm,
        }
        if args.threshold is not None:
            row["thermodynamic_limit"] = solids.thermodynamic_limit_reached(st, args.threshold)
        rows.append(row)
    _emit(args, list(rows[0]), rows)


def cmd_casino(args):
    p_a = args.p_a
    if not 0 <= p_a <= 1:
        raise DomainError(f"p_A must lie in [0, 1], got {p_a}")
    if args.plays < 1:
        raise DomainError("plays must be positive")
    dist = process.OutcomeDistribution((("A", p_a), ("B", 1 - p_a)))
    wager = process.WagerStructure({"A": args.fee_net, "B": -args.payout_net}, args.plays)
    kept, paid = process.expected_house_flows(dist, wager)
    profit = process.expected_house_profit(dist, wager)
    var = process.profit_variance(dist, wager)
    quantities = [
        ("expected_kept", kept),
        ("expected_paid", paid),
        ("expected_profit", profit),
        ("profit_variance", var),
    ]
    rows = [{"quantity": k, "exact": _fraction_str(v), "decimal": float(v)} for k, v in quantities]
    if args.simulate:
        seed = 0 if args.seed is None else args.seed
        args.seed = seed
        rng = np.random.Generator(np.random.PCG64(seed))
        wins = rng.binomial(args.plays, float(p_a), size=args.simulate)
        period = wins * float(args.fee_net) - (args.plays - wins) * float(args.payout_net)
        stderr = float(period.std(ddof=1) / math.sqrt(args.simulate)) if args.simulate > 1 else 0.0
        rows.append({"quantity": "simulated_mean", "exact": None, "decimal": float(period.mean())})
        rows.append({"quantity": "simulated_stderr", "exact": None, "decimal": stderr})
    _emit(
        args,
        ["quantity", "exact", "decimal"],
        rows,
        simulated_periods=args.simulate,
        rng=montecarlo.RNG_ALGORITHM if args.simulate else None,
    )


# -- parser ------------------------------------------------------------------

def _size_args(p, na=3, nb=3, q=6):
    p.add_argument("-Na", "--na", type=int, default=na, help="oscillators in solid A")
    p.add_argument("-Nb", "--nb", type=int, default=nb, help="oscillators in solid B")
    p.add_argument("-q", "--q", type=int, default=q, help="total energy units")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--output", metavar="PATH", help="write here instead of stdout")
    common.add_argument("--seed", type=_seed_arg, default=None, help="unsigned 64-bit seed")

    parser = argparse.ArgumentParser(prog="emergent", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dice", parents=[common], help="macrostate table for a set of dice")
    p.add_argument("--dice", type=_int_list, default=[6, 6], help="face counts, e.g. 6,6")
    p.add_argument("--mapping", choices=("sum", "labels"), default="sum")
    p.add_argument(
        "--face-labels", action="append", metavar="L1,L2,...",
        help="custom face labels, once per die",
    )
    p.set_defaults(func=cmd_dice)

    p = sub.add_parser("solids", parents=[common], help="macrostate distribution of two coupled solids")
    _size_args(p)
    p.add_argument("--log", action="store_true", help="log-space multiplicities")
    p.set_defaults(func=cmd_solids)

    p = sub.add_parser("mc", parents=[common], help="Monte Carlo energy exchange")
    _size_args(p)
    p.add_argument("--steps", type=int, default=1_010_000)
    p.add_argument("--burn-in", type=int, default=10_000)
    p.add_argument("--stride", type=int, default=10)
    p.add_argument("--init", choices=montecarlo.PRESETS, default="all-in-B")
    p.add_argument("--chains", type=int, default=1, help="independent chains with seeds seed, seed+1, ...")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--trace", metavar="PATH", help="write sampled q_A, one per line")
    p.set_defaults(func=cmd_mc)

    p = sub.add_parser("sweep", parents=[common], help="peak width as the solids are scaled up")
    _size_args(p)
    p.add_argument("--factors", type=_int_list, default=[1, 100, 1000])
    p.add_argument("--threshold", type=float, default=None, help="relative-width cutoff")
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("casino", parents=[common], help="expected house profit on a two-outcome game")
    p.add_argument("--p-a", type=_fraction_arg, default=Fraction("0.505"))
    p.add_argument("--fee-net", type=_fraction_arg, default=Fraction(100), help="house gain on A")
    p.add_argument("--payout-net", type=_fraction_arg, default=Fraction(102), help="house loss on B")
    p.add_argument("--plays", type=int, default=10_000)
    p.add_argument("--simulate", type=int, default=0, metavar="M", help="simulate M periods")
    p.set_defaults(func=cmd_casino)
    return parser


def _recorded_command(argv: list[str]) -> str:
    # Where the output goes is not part of what was computed.
    kept, skip = [], False
    for a in argv:
        if skip:
            skip = False
        elif a == "--output":
            skip = True
        elif not a.startswith("--output="):
            kept.append(a)
    return shlex.join(["emergent", *kept])


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    args.command_line = _recorded_command(argv)
    try:
        args.func(args)
    except ResourceError as exc:
        print(f"emergent: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except DomainError as exc:
        print(f"emergent: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    return 0
