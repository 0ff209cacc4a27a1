"""Command-line front end: `pnc <subcommand>`.

Scalar reports are emitted as JSON, data series as CSV with a header row
and 12-significant-digit floats.  Exit codes: 0 success, 2 usage error,
3 infeasible parameters.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

from . import bounds as bounds_mod
from . import encoders as enc_mod
from . import mimo as mimo_mod
from . import sync as sync_mod
from .constellation import pam_sum_profile

__all__ = ["main", "run", "DEFAULT_SEED"]

DEFAULT_SEED = 20_177  # fixed so every artifact is reproducible without flags

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INFEASIBLE = 3

FIGURES = ("rays_pmf", "sync_err", "gaps", "cap_approx")


class InfeasibleParameters(ValueError):
    pass


def _fmt(v) -> str:
    if isinstance(v, float):
        return f"{v:.12g}"
    return str(v)


def _write_csv(rows, header, path=None, out=sys.stdout):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    text = buf.getvalue()
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        out.write(text)


def _check_orders(ma: int, mb: int):
    try:
        bounds_mod.ub_pam(ma, mb)
    except ValueError as exc:
        raise InfeasibleParameters(str(exc)) from exc


def _cmd_profile(args, out):
    _check_orders(args.ma, args.mb)
    profile = pam_sum_profile(args.ma, args.mb)
    rows = [(y, profile.count(y), profile.count(y) / profile.total) for y in profile.support()]
    _write_csv(rows, ("y", "count", "pmf"), args.csv, out)


def _cmd_bounds(args, out):
    _check_orders(args.ma, args.mb)
    b = bounds_mod.compute_bounds(args.ma, args.mb)
    gap_a, gap_b, gap_a_coop = enc_mod.gaps(args.ma, args.mb)
    r_a, r_b = enc_mod.rate_nocoop(args.ma, args.mb)
    report = {
        "ub_shared": b.ub_shared,
        "ub_alice_nocoop": b.ub_alice_nocoop,
        "ub_bob_nocoop": b.ub_bob_nocoop,
        "rate_alice_nocoop": r_a,
        "rate_bob_nocoop": r_b,
        "rate_alice_coop": enc_mod.rate_coop(args.ma, args.mb),
        "gap_alice": gap_a,
        "gap_bob": gap_b,
        "gap_alice_coop": gap_a_coop,
    }
    out.write(json.dumps(report, indent=2) + "\n")


def _encode_all(queues, encode_one):
    """Encode symbols until both queues are exhausted."""
    symbols = []
    while not queues.exhausted:
        symbols.extend(encode_one(queues, len(symbols)))
    return symbols


def _cmd_encode(args, out):
    _check_orders(args.ma, args.mb)
    queues = enc_mod.BitQueues(public_bits=args.public, secret_bits=args.secret)
    if args.scheme == "nocoop":
        partition = enc_mod.build_partition(args.ma, args.mb, args.side)
        symbols = _encode_all(
            queues, lambda q, i: enc_mod.encode_stream(q, partition, count=1)
        )
    else:
        if not args.levels:
            raise InfeasibleParameters("--levels is required for the coop scheme")
        levels = [int(v) for v in args.levels.split(",")]
        labeling = enc_mod.make_pam(args.ma)
        symbols = []
        for k in levels:
            symbols.extend(enc_mod.encode_coop(queues, [k], labeling))
        if not queues.exhausted:
            raise InfeasibleParameters("bits left over after the supplied levels")
    out.write(",".join(str(s) for s in symbols) + "\n")


def _cmd_audit(args, out):
    _check_orders(args.ma, args.mb)
    scheme = {"nocoop": f"nocoop_{args.side}", "coop": "coop"}[args.scheme]
    report = enc_mod.audit_leakage(scheme, args.ma, args.mb)
    payload = {
        "scheme": report.scheme,
        "suffix_mi": list(report.suffix_mi),
        "semantic_mi": report.semantic_mi,
        "flat_suffix_mi": list(report.flat_suffix_mi),
        "flat_semantic_mi": report.flat_semantic_mi,
    }
    out.write(json.dumps(payload, indent=2) + "\n")


def _cmd_sync_sweep(args, out):
    _check_orders(args.ma, args.mb)
    rows = sync_mod.sync_sweep(args.ma, args.mb, args.step)
    _write_csv(rows, ("dta", "dtb", "ub"), args.csv, out)


def _cmd_mimo(args, out):
    if args.dim:
        d = mimo_mod.dof_max(args.m, args.n)
        payload = {"dof_max": d}
        if d >= 1:
            payload["precoder_space_dim"] = mimo_mod.precoder_space_dim(args.m, args.n)
        out.write(json.dumps(payload) + "\n")
        return
    d = 2 * args.n - args.m
    if d < 1:
        raise InfeasibleParameters(
            f"no interference-free dimensions for (M, N) = ({args.m}, {args.n})"
        )
    snr_db = [float(v) for v in args.snr_db.split(",")]
    method = {"zf": "zf", "opt": "optimized"}[args.method]
    rows = []
    for db in snr_db:
        result = mimo_mod.ergodic_capacity_mc(
            args.m, args.n, d, [10 ** (db / 10)], args.trials, args.seed, method
        )
        rows.append((db, result[0][1]))
    _write_csv(rows, ("snr_db", "mean_capacity_bits"), args.csv, out)


def _figure_rows(figure: str, trials: int, seed: int):
    if figure == "rays_pmf":
        profile = pam_sum_profile(4, 16)
        return (
            ("y", "count", "pmf"),
            [(y, profile.count(y), profile.count(y) / profile.total) for y in profile.support()],
        )
    if figure == "sync_err":
        return ("dta", "dtb", "ub"), sync_mod.sync_sweep(4, 16, 0.05)
    if figure == "gaps":
        rows = []
        for ma in (4, 8, 16, 32, 64):
            mb = 2 * ma
            while mb <= 256:
                gap_a, gap_b, gap_a_coop = enc_mod.gaps(ma, mb)
                rows.append((ma, mb, gap_a, gap_b, gap_a_coop))
                mb *= 2
        return ("ma", "mb", "gap_alice", "gap_bob", "gap_alice_coop"), rows
    if figure == "cap_approx":
        rows = []
        snr_db = [0.0, 5.0, 10.0, 15.0, 20.0]
        for m, n in ((2, 2), (3, 3), (3, 2), (4, 3)):
            for method in ("zf", "optimized"):
                d = 2 * n - m
                for db in snr_db:
                    result = mimo_mod.ergodic_capacity_mc(
                        m, n, d, [10 ** (db / 10)], trials, seed, method
                    )
                    rows.append((m, n, method, db, result[0][1]))
        return ("m", "n", "method", "snr_db", "mean_capacity_bits"), rows
    raise InfeasibleParameters(f"unknown figure {figure!r}")


def _cmd_figure(args, out):
    header, rows = _figure_rows(args.name, args.trials, args.seed)
    _write_csv(rows, header, args.csv, out)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pnc", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_orders(p):
        p.add_argument("--ma", type=int, required=True, help="Alice's PAM order M_A")
        p.add_argument("--mb", type=int, required=True, help="Bob's PAM order M_B")

    p = sub.add_parser("profile", help="sum-profile rows y,count,pmf")
    add_orders(p)
    p.add_argument("--csv", help="write to this path instead of stdout")
    p.set_defaults(func=_cmd_profile)

    p = sub.add_parser("bounds", help="secrecy-rate bounds and gaps as JSON")
    add_orders(p)
    p.add_argument("--json", action="store_true", help="JSON output (always on)")
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("encode", help="encode public/secret bit queues to symbols")
    add_orders(p)
    p.add_argument("--scheme", choices=("nocoop", "coop"), required=True)
    p.add_argument("--side", choices=("alice", "bob"), default="bob")
    p.add_argument("--public", default="", help="public bit string")
    p.add_argument("--secret", default="", help="secret bit string")
    p.add_argument("--levels", help="comma-separated secret-bit counts (coop)")
    p.set_defaults(func=_cmd_encode)

    p = sub.add_parser("audit", help="exact leakage report as JSON")
    add_orders(p)
    p.add_argument("--scheme", choices=("nocoop", "coop"), required=True)
    p.add_argument("--side", choices=("alice", "bob"), default="bob")
    p.set_defaults(func=_cmd_audit)

    p = sub.add_parser("sync-sweep", help="upper bound over the timing-offset grid")
    add_orders(p)
    p.add_argument("--step", type=float, default=0.05)
    p.add_argument("--csv", help="write to this path instead of stdout")
    p.set_defaults(func=_cmd_sync_sweep)

    p = sub.add_parser("mimo", help="MIMO ergodic capacity or dimension report")
    p.add_argument("--m", type=int, required=True, help="relay antennas M")
    p.add_argument("--n", type=int, required=True, help="user antennas N")
    p.add_argument("--dim", action="store_true", help="print dof and manifold dimension")
    p.add_argument("--snr-db", default="0,5,10,15,20")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--method", choices=("zf", "opt"), default="zf")
    p.add_argument("--csv", help="write to this path instead of stdout")
    p.set_defaults(func=_cmd_mimo)

    p = sub.add_parser("figure", help="emit the data series behind a figure")
    p.add_argument("name", choices=FIGURES)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--csv", help="write to this path instead of stdout")
    p.set_defaults(func=_cmd_figure)

    return parser


def run(argv=None, out=sys.stdout, err=sys.stderr) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        args.func(args, out)
    except (InfeasibleParameters, ValueError, enc_mod.QueueUnderflow) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INFEASIBLE
    return EXIT_OK


def main() -> None:
    sys.exit(run())
