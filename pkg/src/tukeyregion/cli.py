"""Command-line interface: ``region``, ``bench``, ``verify`` and ``gen``.

Exit status is 0 on success, 1 when a requested verification fails and 2 on
input errors (unreadable data, bad arguments, unsupported format).
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .bench import RunConfig, run_benchmark
from .dataio import dedup_ties, export_region, generate_gaussian, load_csv, load_region, save_csv
from .errors import TukeyRegionError
from .oracle import verify_region
from .region import tukey_region
from .tolerances import DEFAULT_TOL

logger = logging.getLogger("tukeyregion")

EXIT_OK, EXIT_VERIFY, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _cloud(spec: str, header, seed: int | None = None):
    """A CSV path or ``gaussian:N:P[:SEED]``."""
    if spec.startswith("gaussian:"):
        parts = spec.split(":")[1:]
        try:
            n, p = int(parts[0]), int(parts[1])
            s = int(parts[2]) if len(parts) > 2 else (seed if seed is not None else 1)
        except (IndexError, ValueError):
            raise InputError(f"bad generator spec {spec!r}; expected gaussian:N:P[:SEED]") from None
        return generate_gaussian(n, p, s)
    if not Path(spec).is_file():
        raise InputError(f"no such file: {spec}")
    return load_csv(spec, header=header)


def _header(value: str):
    return {"auto": "auto", "yes": True, "no": False}[value]


def _write(data: bytes, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        Path(out).write_bytes(data)


def _suffixed(out: str | None, tau: float, many: bool) -> str | None:
    if out is None or out == "-" or not many:
        return out
    p = Path(out)
    return str(p.with_name(f"{p.stem}_tau{tau:g}{p.suffix}"))


def cmd_region(args) -> int:
    tol = DEFAULT_TOL.with_geom(args.tol_geom) if args.tol_geom else DEFAULT_TOL
    cloud = _cloud(args.input, _header(args.header), args.seed)
    if args.dedup:
        cloud, removed = dedup_ties(cloud, return_count=True)
        logger.info("removed %d duplicate rows", removed)
    taus = sorted(args.tau or [0.1])
    code = EXIT_OK
    outer = None
    for tau in taus:
        region = tukey_region(cloud, tau, algorithm=args.algorithm, seed=args.seed, rule=args.rule,
                              tol=tol, parallel=args.parallel)
        _write(export_region(region, args.format), _suffixed(args.out, tau, len(taus) > 1))
        if args.verify:
            rep = verify_region(cloud, region, coarser=outer, oracle_cap=args.oracle_cap, tol=tol)
            for line in rep.lines():
                print(f"[tau={tau:g}] {line}", file=sys.stderr)
            if not rep.passed:
                code = EXIT_VERIFY
        outer = region
    return code


def cmd_bench(args) -> int:
    tol = DEFAULT_TOL.with_geom(args.tol_geom) if args.tol_geom else DEFAULT_TOL
    inp = None
    if args.input is not None:
        if args.input.startswith("gaussian:"):
            raise InputError("bench uses --n/--p for generated data; --input takes a CSV path")
        if not Path(args.input).is_file():
            raise InputError(f"no such file: {args.input}")
        inp = args.input
    try:
        config = RunConfig(ns=args.n, ps=args.p, taus=args.tau or [0.05, 0.1], algorithm=args.algorithm,
                           repetitions=args.reps, seed=args.seed, input=inp, build_region=not args.no_region,
                           verify=args.verify, rule=args.rule, parallel=args.parallel,
                           oracle_cap=args.oracle_cap, tol=tol)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    records = run_benchmark(config)
    fmt = args.format if args.format in ("table", "json") else "table"
    _write(export_region(records, fmt), args.out)
    if args.verify and any(r.verified is False or r.error for r in records):
        return EXIT_VERIFY
    return EXIT_OK


def cmd_verify(args) -> int:
    tol = DEFAULT_TOL.with_geom(args.tol_geom) if args.tol_geom else DEFAULT_TOL
    cloud = _cloud(args.input, _header(args.header), args.seed)
    if not Path(args.region).is_file():
        raise InputError(f"no such file: {args.region}")
    try:
        region = load_region(args.region)
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"{args.region}: not a region file ({exc})") from None
    if region.n != cloud.n or region.p != cloud.p:
        raise InputError(f"region is for n={region.n}, p={region.p}; data has n={cloud.n}, p={cloud.p}")
    rep = verify_region(cloud, region, oracle_cap=args.oracle_cap, tol=tol)
    print("\n".join(rep.lines()))
    return EXIT_OK if rep.passed else EXIT_VERIFY


def cmd_gen(args) -> int:
    cloud = generate_gaussian(args.n, args.p, args.seed)
    if args.out is None or args.out == "-":
        save_csv(cloud, sys.stdout, header=args.header_row)
    else:
        save_csv(cloud, args.out, header=args.header_row)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tukeyregion", description="Exact Tukey depth regions.")
    ap.add_argument("-v", "--verbose", action="count", default=0)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, data=True):
        if data:
            p.add_argument("--input", required=True, help="CSV path or gaussian:N:P[:SEED]")
            p.add_argument("--header", choices=["auto", "yes", "no"], default="auto")
        p.add_argument("--seed", type=int, default=1)
        p.add_argument("--tol-geom", type=float, default=None)
        p.add_argument("--oracle-cap", type=int, default=1_000_000)
        p.add_argument("--out", default=None)

    r = sub.add_parser("region", help="compute depth regions")
    common(r)
    r.add_argument("--tau", type=float, action="append")
    r.add_argument("--algorithm", choices=["bfs", "naive"], default="bfs")
    r.add_argument("--format", choices=["json", "off"], default="json")
    r.add_argument("--rule", choices=["ceil", "floor"], default="ceil")
    r.add_argument("--verify", action="store_true")
    r.add_argument("--parallel", action="store_true")
    r.add_argument("--dedup", action="store_true", help="drop exact duplicate rows first")
    r.set_defaults(func=cmd_region)

    b = sub.add_parser("bench", help="run a benchmark grid")
    common(b, data=False)
    b.add_argument("--input", default=None, help="CSV path (default: Gaussian data)")
    b.add_argument("--n", type=int, action="append", default=None)
    b.add_argument("--p", type=int, action="append", default=None)
    b.add_argument("--tau", type=float, action="append")
    b.add_argument("--algorithm", choices=["bfs", "naive", "both"], default="both")
    b.add_argument("--reps", type=int, default=1)
    b.add_argument("--format", choices=["table", "json"], default="table")
    b.add_argument("--rule", choices=["ceil", "floor"], default="ceil")
    b.add_argument("--no-region", action="store_true", help="search only")
    b.add_argument("--verify", action="store_true")
    b.add_argument("--parallel", action="store_true")
    b.set_defaults(func=cmd_bench)

    v = sub.add_parser("verify", help="recompute certificates of a saved region")
    common(v)
    v.add_argument("--region", required=True, help="region JSON file")
    v.set_defaults(func=cmd_verify)

    g = sub.add_parser("gen", help="write a Gaussian dataset as CSV")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--p", type=int, required=True)
    g.add_argument("--seed", type=int, default=1)
    g.add_argument("--out", default=None)
    g.add_argument("--header-row", action="store_true")
    g.set_defaults(func=cmd_gen)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2),
                        format="%(levelname)s %(name)s: %(message)s")
    if getattr(args, "n", None) is None and args.command == "bench":
        args.n = [20, 40]
    if getattr(args, "p", None) is None and args.command == "bench":
        args.p = [3]
    try:
        return args.func(args)
    except (InputError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except TukeyRegionError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
