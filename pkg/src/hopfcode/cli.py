"""Command line interface: ``hopfcode <command> [options]``.

Exit status is 0 on success, 1 when a size cap is exceeded and 2 on invalid
arguments.  Data goes to stdout, diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from contextlib import contextmanager

import numpy as np

from . import channel, density, references
from .decoder import DecodeConfig, decode
from .errors import DomainError, ResourceError
from .schf import (
    DEFAULT_CAP,
    VARIANTS,
    CodeSpec,
    build_tables,
    cardinality,
    encode,
    write_codebook_csv,
)

PROG = "hopfcode"
FORMATS = ("plain", "json", "csv")


def num(x) -> str:
    """17 significant digits for floats, exact digits for integers."""
    if isinstance(x, (float, np.floating)):
        return format(float(x), ".17g")
    return str(x)


class UsageError(Exception):
    pass


def _float_list(text: str) -> list[float]:
    try:
        return [float(t) for t in text.replace(";", ",").split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"cannot parse number list {text!r}") from None


def _grid(text: str) -> np.ndarray:
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError("grid must look like start:stop:steps")
    try:
        a, b, steps = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise UsageError(f"cannot parse grid {text!r}") from None
    if steps < 1:
        raise UsageError("grid needs at least one step")
    return np.linspace(a, b, steps)


@contextmanager
def _output(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _spec(args) -> CodeSpec:
    return CodeSpec(args.dim, args.dmin, getattr(args, "variant", "standard"), args.floor_tol)


def _emit(args, record: dict, plain: str, out=None):
    out = out or sys.stdout
    if args.format == "json":
        out.write(json.dumps(record) + "\n")
    elif args.format == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(record.keys())
        writer.writerow(_flat(v) for v in record.values())
    else:
        out.write(plain + "\n")


def _flat(v) -> str:
    if isinstance(v, (list, tuple)):
        return " ".join(num(x) for x in v)
    return num(v)


# commands


def cmd_card(args):
    spec = _spec(args)
    M = cardinality(spec)
    _emit(args, {"dim": spec.dim, "dmin": spec.dmin, "variant": spec.variant, "M": M}, str(M))


def cmd_build(args):
    tables = build_tables(_spec(args))
    with _output(args.out) as fh:
        fh.write(tables.to_json(indent=1) + "\n")


def cmd_encode(args):
    tables = build_tables(_spec(args))
    try:
        cw = encode(tables, args.index)
    except IndexError as exc:
        raise UsageError(str(exc)) from None
    coords = [float(x) for x in cw.coords]
    if args.format == "json":
        print(json.dumps({"index": cw.index, "coords": coords}))
    elif args.format == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["index", *(f"x{k + 1}" for k in range(len(coords)))])
        writer.writerow([cw.index, *(num(x) for x in coords)])
    else:
        print(",".join(num(x) for x in coords))


def cmd_enumerate(args):
    tables = build_tables(_spec(args))
    with _output(args.out) as fh:
        write_codebook_csv(tables, fh, args.cap)


def cmd_decode(args):
    spec = _spec(args)
    y = _float_list(args.point)
    if len(y) != spec.dim:
        raise UsageError(f"point has {len(y)} coordinates, expected {spec.dim}")
    tables = build_tables(spec)
    # one word: the pure Python path beats compiling the kernel
    res = decode(y, tables, DecodeConfig(args.breadth, args.refine), compiled=False)
    record = {"index": res.index, "residual": res.residual, "codeword": [float(x) for x in res.codeword]}
    _emit(args, record, f"{res.index} {num(res.residual)}")


def cmd_density(args):
    spec = _spec(args)
    rep = density.density_report(cardinality(spec), spec.dim, spec.dmin)
    rec = rep.to_dict()
    rec["M"] = rep.M
    plain = "\n".join(f"{k} {num(v)}" for k, v in rec.items())
    _emit(args, rec, plain)


def cmd_asymptotic(args):
    k = args.k
    value = density.asymptotic_center_density(k)
    label = density.center_density_label(k)
    rec = {"k": k, "dim": 2**k, "center_density": value, "exact": label}
    plain = f"{label} ≈ {num(value)}"
    if args.dmin is not None:
        log_m = density.log_asymptotic_cardinality(k, args.dmin)
        rec["dmin"] = args.dmin
        rec["cardinality"] = density.asymptotic_cardinality(k, args.dmin)
        rec["log10_cardinality"] = log_m / math.log(10.0)
        plain += f"\n{num(rec['cardinality'])}"
    _emit(args, rec, plain)


def cmd_rate_curve(args):
    grid = _grid(args.dmin_grid)
    with _output(args.out) as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["series", "dim", "d", "M", "rate"])
        series = "hopf-" + args.variant
        for d in grid:
            M = cardinality(CodeSpec(args.dim, float(d), args.variant, args.floor_tol))
            writer.writerow([series, args.dim, num(float(d)), M, num(density.binary_rate(M, args.dim))])
        if args.with_references:
            for name, n, d, M in references.reference_rows(args.dim):
                rate = math.log2(M) / n
                writer.writerow([f"reference:{name}", n, num(d), num(M), num(rate)])


def cmd_simulate(args):
    spec = _spec(args)
    snrs = _float_list(args.snr)
    if not snrs:
        raise UsageError("empty SNR list")
    cfg = channel.SimConfig(spec, snrs, args.trials, args.seed, args.decoder, args.breadth, args.workers, args.cap)
    report = channel.simulate(cfg)
    with _output(args.out) as fh:
        if args.format == "json":
            fh.write(report.to_json() + "\n")
        else:
            fh.write(report.to_csv())


# parser


def _code_args(p, variant=True, dmin=True):
    p.add_argument("--dim", type=int, required=True, help="dimension, a power of two >= 4")
    if dmin:
        p.add_argument("--dmin", type=float, required=True, help="minimum distance in (0, 2]")
    if variant:
        p.add_argument("--variant", choices=VARIANTS, default="standard")
    p.add_argument("--floor-tol", type=float, default=0.0,
                   help="snap quotients within this amount below an integer (default 0)")


def _format_arg(p, default="plain"):
    p.add_argument("--format", choices=FORMATS, default=default)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog=PROG, description="Spherical codes from Hopf foliations.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("card", help="print the number of codewords")
    _code_args(p)
    _format_arg(p)
    p.set_defaults(func=cmd_card)

    p = sub.add_parser("build", help="write the leaf tables as JSON")
    _code_args(p)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("encode", help="print the codeword with a given index")
    _code_args(p)
    p.add_argument("--index", type=int, required=True)
    _format_arg(p)
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("enumerate", help="write the whole codebook as CSV")
    _code_args(p)
    p.add_argument("--out", default="-")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="refuse codes larger than this")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("decode", help="decode a received vector")
    _code_args(p, variant=False)
    p.add_argument("--point", required=True, help='comma separated coordinates, e.g. "1,0,0,0"')
    p.add_argument("--breadth", type=int, default=1)
    p.add_argument("--refine", action="store_true")
    _format_arg(p)
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("density", help="density, center density and rate of a code")
    _code_args(p)
    _format_arg(p)
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("asymptotic", help="asymptotic center density in dimension 2^k")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--dmin", type=float, help="also print the asymptotic cardinality at this distance")
    _format_arg(p)
    p.set_defaults(func=cmd_asymptotic)

    p = sub.add_parser("rate-curve", help="CSV of (d, M, rate) over a grid of distances")
    _code_args(p, dmin=False)
    p.add_argument("--dmin-grid", required=True, help="start:stop:steps, endpoints included")
    p.add_argument("--with-references", action="store_true",
                   help="append reported sizes of other constructions")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_rate_curve)

    p = sub.add_parser("simulate", help="symbol error rates over a Gaussian channel")
    _code_args(p, variant=False)
    p.add_argument("--snr", required=True, help='comma separated SNR values in dB, "inf" allowed')
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--decoder", choices=channel.DECODERS, default="suboptimal-refined")
    p.add_argument("--breadth", type=int, default=1)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--out", default="-")
    _format_arg(p, default="csv")
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except (UsageError, DomainError, IndexError, ValueError) as exc:
        print(f"{PROG}: error: {exc}", file=sys.stderr)
        return 2
    except ResourceError as exc:
        print(f"{PROG}: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
