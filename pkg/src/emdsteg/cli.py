"""Command-line harness.

Subcommands: embed, extract, analyze, bound, bench, fit, distance.
Exit codes: 0 on success, 2 for usage/config/capacity problems, 3 for I/O
and malformed-data problems.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys
from pathlib import Path

from . import bound as bound_mod
from . import metrics
from .bench import BenchConfig, BenchConfigError, run_bench
from .image import GrayImage, PgmError, load_pgm, save_pgm
from .metrics import DimensionMismatch
from .rng import seeded_bits
from .schemes import (
    CapacityExceeded,
    SchemeError,
    embed_message,
    extract_message,
    make_scheme,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3

_PARAM_FLAGS = ("n", "t", "k", "w", "m", "key", "n1", "wbase")


class CliDataError(Exception):
    """I/O or malformed input; maps to exit code 3."""


def _add_scheme_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--scheme", required=True, help="scheme token, e.g. emd")
    for flag in _PARAM_FLAGS:
        parser.add_argument(f"--{flag}", type=int, default=None)


def _scheme_from_args(args: argparse.Namespace):
    params = {
        flag: getattr(args, flag)
        for flag in _PARAM_FLAGS
        if getattr(args, flag) is not None
    }
    return make_scheme(args.scheme, **params)


def _parse_synthetic(token: str) -> GrayImage:
    match = re.fullmatch(r"(\d+)x(\d+):(\d+)", token)
    if not match:
        raise ValueError(f"--synthetic wants WxH:V, got {token!r}")
    width, height, value = (int(g) for g in match.groups())
    if value > 255:
        raise ValueError(f"flat value {value} outside [0, 255]")
    return GrayImage.flat(width, height, value)


def _read_image(path: str) -> GrayImage:
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise CliDataError(f"cannot read {path}: {exc}") from None
    return load_pgm(data)


def _load_cover(args: argparse.Namespace) -> GrayImage:
    if getattr(args, "synthetic", None):
        return _parse_synthetic(args.synthetic)
    if getattr(args, "cover", None):
        return _read_image(args.cover)
    raise ValueError("need --cover PATH or --synthetic WxH:V")


def _message_bits(args: argparse.Namespace) -> tuple[list[int], int | None]:
    if args.message is not None:
        try:
            data = Path(args.message).read_bytes()
        except OSError as exc:
            raise CliDataError(f"cannot read {args.message}: {exc}") from None
        bits = [(byte >> shift) & 1 for byte in data for shift in range(7, -1, -1)]
        return bits, None
    if args.random_bits is not None:
        if args.random_bits < 0:
            raise ValueError("--random-bits must be >= 0")
        return seeded_bits(args.seed, args.random_bits), args.seed
    raise ValueError("need --message PATH or --random-bits N")


def _pack_bits(bits: list[int]) -> bytes:
    out = bytearray()
    for start in range(0, len(bits), 8):
        byte = 0
        chunk = bits[start : start + 8]
        for bit in chunk:
            byte = (byte << 1) | bit
        byte <<= 8 - len(chunk)
        out.append(byte)
    return bytes(out)


def _write_bytes(path: str, data: bytes) -> None:
    try:
        Path(path).write_bytes(data)
    except OSError as exc:
        raise CliDataError(f"cannot write {path}: {exc}") from None


def _cmd_embed(args: argparse.Namespace) -> int:
    spec = _scheme_from_args(args)
    cover = _load_cover(args)
    bits, seed = _message_bits(args)
    stego, _ = embed_message(cover, spec, bits)
    _write_bytes(args.out, save_pgm(stego))
    sidecar = {
        "scheme": spec.id,
        "params": dict(sorted(spec.params.items())),
        "bit_length": len(bits),
        "seed": seed,
    }
    _write_bytes(args.out + ".json", (json.dumps(sidecar, indent=2) + "\n").encode())
    return EXIT_OK


def _cmd_extract(args: argparse.Namespace) -> int:
    spec = _scheme_from_args(args)
    stego = _read_image(args.stego)
    if args.bits < 0:
        raise ValueError("--bits must be >= 0")
    bits = extract_message(stego, spec, args.bits)
    _write_bytes(args.out, _pack_bits(bits))
    return EXIT_OK


def _json_value(value):
    if value is None:
        return None
    if isinstance(value, float) and math.isinf(value):
        return "inf"
    return value


def _cmd_analyze(args: argparse.Namespace) -> int:
    spec = _scheme_from_args(args)
    cover = _read_image(args.cover)
    stego = _read_image(args.stego)
    report = metrics.analyze_pair(cover, stego, spec)
    record = report.to_record()
    if args.bound_poly and report.efficiency_proposed is not None:
        poly = _read_poly(args.bound_poly)
        record["distance"] = bound_mod.distance_to_curve(
            poly,
            (report.alpha, report.efficiency_proposed),
            args.mode,
            (args.domain[0], args.domain[1]),
        )
    record = {key: _json_value(val) for key, val in record.items()}
    print(json.dumps(record, indent=2))
    return EXIT_OK


def _cmd_bound(args: argparse.Namespace) -> int:
    if args.max_n < 1 or args.max_z < 1:
        raise ValueError("--max-n and --max-z must be >= 1")
    rows = []
    if args.frontier:
        points = bound_mod.frontier(
            range(1, args.max_n + 1),
            range(1, args.max_z + 1),
            args.metric,
            args.normalization,
        )
        for point in points:
            counts = bound_mod.bound_counts(point.query)
            rows.append(_bound_row(point.query, counts, point, args))
    else:
        for n in range(1, args.max_n + 1):
            for z in range(1, args.max_z + 1):
                for q in range(0, n + 1):
                    query = bound_mod.BoundQuery(n, z, q)
                    counts = bound_mod.bound_counts(query)
                    try:
                        point = bound_mod.bound_point(query, args.metric, args.normalization)
                    except bound_mod.DegenerateQuery:
                        point = None
                    rows.append(_bound_row(query, counts, point, args))
    lines = ["n,z,q,f_M,f_rho_lin,f_rho_sq,alpha,inv_alpha,eff,metric,normalization"]
    for row in rows:
        lines.append(",".join(row))
    _write_bytes(args.out, ("\n".join(lines) + "\n").encode())
    return EXIT_OK


def _bound_row(query, counts, point, args) -> list[str]:
    def fmt(x):
        return "" if x is None else (f"{x:.10g}" if isinstance(x, float) else str(x))

    alpha = inv_alpha = eff = None
    if point is not None:
        alpha = point.alpha
        inv_alpha = point.inv_alpha
        eff = point.efficiency(args.metric)
    return [
        str(query.n),
        str(query.z),
        str(query.q),
        str(counts.state_count),
        str(counts.change_sum_linear),
        str(counts.change_sum_squared),
        fmt(alpha),
        fmt(inv_alpha),
        fmt(eff),
        args.metric,
        args.normalization,
    ]


def _cmd_bench(args: argparse.Namespace) -> int:
    if args.config:
        try:
            text = Path(args.config).read_text()
        except OSError as exc:
            raise CliDataError(f"cannot read {args.config}: {exc}") from None
        cfg = BenchConfig.from_json(text)
    else:
        cfg = BenchConfig()
    if args.seed is not None:
        cfg.seed = args.seed
    if args.fill is not None:
        cfg.fill = args.fill
    if args.synthetic:
        img = _parse_synthetic(args.synthetic)
        cfg.cover = {
            "kind": "flat",
            "width": img.width,
            "height": img.height,
            "value": int(img.pixels[0]),
        }
    elif args.cover:
        cfg.cover = {"kind": "file", "path": args.cover}
    cfg.validate()
    paths = run_bench(cfg, args.out_dir)
    for name in sorted(paths):
        print(f"{name}: {paths[name]}")
    return EXIT_OK


def _read_poly(path: str) -> bound_mod.CubicPoly:
    try:
        raw = json.loads(Path(path).read_text())
    except OSError as exc:
        raise CliDataError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise CliDataError(f"{path}: not valid JSON: {exc}") from None
    try:
        return bound_mod.CubicPoly(
            float(raw["c3"]), float(raw["c2"]), float(raw["c1"]), float(raw["c0"])
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise CliDataError(f"{path}: bad polynomial record: {exc}") from None


def _read_points_csv(path: str) -> list[tuple[float, float]]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CliDataError(f"cannot read {path}: {exc}") from None
    points = []
    for line in text.splitlines():
        parts = [p.strip() for p in line.replace(";", ",").split(",") if p.strip()]
        if len(parts) < 2:
            continue
        try:
            points.append((float(parts[0]), float(parts[1])))
        except ValueError:
            continue  # header or annotation line
    return points


def _cmd_fit(args: argparse.Namespace) -> int:
    points = _read_points_csv(args.points)
    poly = bound_mod.cubic_fit(points)
    record = {
        "c3": poly.c3,
        "c2": poly.c2,
        "c1": poly.c1,
        "c0": poly.c0,
        "residual": bound_mod.fit_residual(poly, points),
    }
    print(json.dumps(record, indent=2))
    return EXIT_OK


def _cmd_distance(args: argparse.Namespace) -> int:
    if args.eq43:
        poly = bound_mod.REFERENCE_BOUND_POLY
    elif args.poly:
        poly = _read_poly(args.poly)
    else:
        raise ValueError("need --poly PATH or --eq43")
    value = bound_mod.distance_to_curve(
        poly, (args.x, args.y), args.mode, (args.domain[0], args.domain[1])
    )
    print(f"{value:.12g}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="emdsteg",
        description="EMD-family steganography workbench",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("embed", help="embed a message into a PGM cover")
    _add_scheme_flags(p)
    p.add_argument("--cover", help="cover PGM path")
    p.add_argument("--synthetic", help="flat synthetic cover WxH:V")
    p.add_argument("--message", help="message file (bytes)")
    p.add_argument("--random-bits", type=int, default=None, help="seeded random bits")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="stego PGM path")
    p.set_defaults(func=_cmd_embed)

    p = sub.add_parser("extract", help="extract bits from a stego PGM")
    _add_scheme_flags(p)
    p.add_argument("--stego", required=True)
    p.add_argument("--bits", type=int, required=True)
    p.add_argument("--out", required=True, help="packed-bit output path")
    p.set_defaults(func=_cmd_extract)

    p = sub.add_parser("analyze", help="metrics for a cover/stego pair")
    _add_scheme_flags(p)
    p.add_argument("--cover", required=True)
    p.add_argument("--stego", required=True)
    p.add_argument("--bound-poly", help="polynomial JSON for distance")
    p.add_argument("--mode", choices=("euclidean", "vertical"), default="euclidean")
    p.add_argument("--domain", type=float, nargs=2, default=(0.0, 3.0))
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("bound", help="state-count table or frontier CSV")
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--max-z", type=int, required=True)
    p.add_argument(
        "--metric",
        choices=(bound_mod.METRIC_STANDARD, bound_mod.METRIC_PROPOSED),
        default=bound_mod.METRIC_PROPOSED,
    )
    p.add_argument(
        "--normalization",
        choices=(
            bound_mod.NORM_LITERAL,
            bound_mod.NORM_MEAN,
            bound_mod.NORM_MEAN_PER_PIXEL,
        ),
        default=bound_mod.NORM_MEAN_PER_PIXEL,
    )
    p.add_argument("--frontier", action="store_true", help="emit the envelope only")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_bound)

    p = sub.add_parser("bench", help="comparison tables and chart data")
    p.add_argument("--config", help="BenchConfig JSON path")
    p.add_argument("--out-dir", default="bench_out")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--fill", type=float, default=None)
    p.add_argument("--cover", help="cover PGM path")
    p.add_argument("--synthetic", help="flat synthetic cover WxH:V")
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("fit", help="least-squares cubic through CSV points")
    p.add_argument("--points", required=True, help="CSV of x,y rows")
    p.set_defaults(func=_cmd_fit)

    p = sub.add_parser("distance", help="point-to-curve distance")
    p.add_argument("--poly", help="polynomial JSON path")
    p.add_argument("--eq43", action="store_true", help="use the reference bound curve")
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--y", type=float, required=True)
    p.add_argument("--mode", choices=("euclidean", "vertical"), default="euclidean")
    p.add_argument("--domain", type=float, nargs=2, default=(0.0, 3.0))
    p.set_defaults(func=_cmd_distance)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (PgmError, DimensionMismatch, CliDataError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (
        SchemeError,
        CapacityExceeded,
        BenchConfigError,
        bound_mod.BoundError,
        metrics.MetricsError,
        ValueError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
