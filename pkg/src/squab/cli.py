"""Command-line front end.

Subcommands: ``gen`` (write lattice files), ``info`` (code report),
``bench`` (Monte-Carlo sweep, CSV/JSON), ``compare`` (common sweep over
several lattices), ``serve`` (local HTTP API).  Every subcommand is
deterministic given argv; seeds are explicit flags.

Exit codes: 0 ok, 1 runtime or validation failure, 2 usage.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import fileio
from .benchmark import SweepConfig, canonical_json, result_to_dict, run_sweep, write_csv
from .cellulation import BoundaryClass, DualSurface, Surface, derive_dual, validate
from .generators import HoleSpec, PlanarSpec, gen_bravyi_kitaev, gen_planar, gen_toric
from .homology import logical_qubit_count
from .report import build_code_report

_SIDES = ("top", "right", "bottom", "left")
_CLASS_BY_NAME = {"open": BoundaryClass.OPEN, "closed": BoundaryClass.CLOSED}
_CLASS_BY_LETTER = {"o": BoundaryClass.OPEN, "c": BoundaryClass.CLOSED}


class CliError(Exception):
    """Runtime failure; message goes to stderr, exit code 1."""


def _parse_cells(text: str) -> tuple[int, int]:
    try:
        rows, cols = text.lower().split("x")
        return int(rows), int(cols)
    except ValueError:
        raise CliError(f"bad --cells value {text!r}, expected ROWSxCOLS") from None


def _parse_sides(text: str) -> dict[str, BoundaryClass]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) == 1:
        parts = parts * 4
    if len(parts) != 4:
        raise CliError("--sides takes one class or four (top,right,bottom,left)")
    out = {}
    for side, part in zip(_SIDES, parts):
        if part not in _CLASS_BY_NAME:
            raise CliError(f"unknown side class {part!r} (open or closed)")
        out[side] = _CLASS_BY_NAME[part]
    return out


def _parse_hole(text: str) -> HoleSpec:
    # r,c,HxW:class  where class is open | closed | a cyclic o/c string
    try:
        coords, cls_text = text.split(":") if ":" in text else (text, "closed")
        row_s, col_s, size = coords.split(",")
        h_s, w_s = size.lower().split("x")
        row, col, height, width = int(row_s), int(col_s), int(h_s), int(w_s)
    except ValueError:
        raise CliError(f"bad --hole value {text!r}, expected r,c,HxW[:class]") from None
    if cls_text in _CLASS_BY_NAME:
        perimeter = _CLASS_BY_NAME[cls_text]
    else:
        try:
            perimeter = tuple(_CLASS_BY_LETTER[ch] for ch in cls_text)
        except KeyError:
            raise CliError(f"bad hole perimeter {cls_text!r} (open, closed, or o/c letters)") from None
    return HoleSpec(row, col, height, width, perimeter)


def _generate(args) -> tuple[Surface, DualSurface]:
    if args.lattice == "toric":
        return gen_toric(args.d)
    if args.lattice == "bk":
        return gen_bravyi_kitaev(args.d)
    rows, cols = _parse_cells(args.cells)
    sides = _parse_sides(args.sides)
    holes = tuple(_parse_hole(h) for h in args.hole)
    return gen_planar(PlanarSpec(rows, cols, holes=holes, **sides))


def _load_pair(path: str, strict: bool) -> tuple[Surface, DualSurface]:
    try:
        payload = Path(path).read_bytes()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from None
    try:
        doc = fileio.load_document(payload, strict=strict)
    except fileio.ParseError as exc:
        raise CliError(f"{path}: {exc}") from None
    report = validate(doc.surface)
    if not report.ok:
        lines = "\n".join(f"  {v}" for v in report.violations)
        raise CliError(f"{path}: invalid surface\n{lines}")
    dual = doc.dual if doc.dual is not None else derive_dual(doc.surface)
    return doc.surface, dual


def _write_output(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc}") from None


def _sweep_config(args) -> SweepConfig:
    if args.steps < 1:
        raise CliError("--steps must be >= 1")
    if args.steps == 1:
        p_values = (args.p_min,)
    else:
        step = (args.p_max - args.p_min) / (args.steps - 1)
        p_values = tuple(args.p_min + i * step for i in range(args.steps))
    return SweepConfig(
        p_values=p_values,
        trials_per_point=args.trials,
        master_seed=args.seed,
        mode=args.mode,
    )


def _workers(args) -> int | None:
    if args.workers is not None:
        return args.workers
    env = os.environ.get("SQUAB_WORKERS")
    return int(env) if env else None


def cmd_gen(args) -> int:
    surface, dual = _generate(args)
    payload = fileio.save(surface, dual)
    if args.output is None or args.output == "-":
        sys.stdout.buffer.write(payload)
    else:
        try:
            Path(args.output).write_bytes(payload)
        except OSError as exc:
            raise CliError(f"cannot write {args.output}: {exc}") from None
    k = logical_qubit_count(surface, dual)
    print(f"n={surface.n_qubits} k={k}", file=sys.stderr if args.output in (None, "-") else sys.stdout)
    return 0


def cmd_info(args) -> int:
    surface, dual = _load_pair(args.file, args.strict)
    report = build_code_report(surface, dual)
    _write_output(report.to_json() if args.json else report.render_text(), args.output)
    return 0


def cmd_bench(args) -> int:
    surface, dual = _load_pair(args.file, args.strict)
    result = run_sweep(surface, dual, _sweep_config(args), workers=_workers(args))
    if args.format == "json":
        _write_output(canonical_json(result), args.output)
    else:
        _write_output(write_csv([result]), args.output)
    print(f"completed in {result.wall_time:.2f}s", file=sys.stderr)
    return 0


def cmd_compare(args) -> int:
    pairs = [_load_pair(path, args.strict) for path in args.files]
    config = _sweep_config(args)
    workers = _workers(args)
    results = [run_sweep(s, d, config, workers=workers) for s, d in pairs]
    codes = []
    for path, (s, _) in zip(args.files, pairs):
        codes.append(s.name or Path(path).name.removesuffix(".squab.json"))
    _write_output(write_csv(results, codes), args.output)

    lines = ["p        best (lowest uncorrectable rate)"]
    for i, p in enumerate(config.p_values):
        best = min(range(len(results)), key=lambda j: results[j].points[i].rate_any)
        rate = results[best].points[i].rate_any
        lines.append(f"{p:<8.4g} {codes[best]} ({rate:.6g})")
    print("\n".join(lines), file=sys.stderr)
    return 0


def cmd_serve(args) -> int:
    # imported lazily so the CLI works without the service dependencies
    import uvicorn

    from .service import create_app

    app = create_app(trial_cap=args.trial_cap, body_limit=args.body_limit)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def _add_sweep_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--p-min", type=float, default=0.0)
    p.add_argument("--p-max", type=float, default=1.0)
    p.add_argument("--steps", type=int, default=11)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mode", choices=["both", "z_only", "x_only"], default="both")
    p.add_argument("--workers", type=int, default=None,
                   help="worker threads (default: machine parallelism or SQUAB_WORKERS)")
    p.add_argument("--strict", action="store_true", help="reject unknown file fields")
    p.add_argument("-o", "--output", default=None, help="output path (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="squab",
        description="Erasure benchmarking for generalized surface codes",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a lattice file")
    gen_sub = gen.add_subparsers(dest="lattice", required=True)
    for name, doc in (("toric", "torus, d x d"), ("bk", "Bravyi-Kitaev planar")):
        g = gen_sub.add_parser(name, help=doc)
        g.add_argument("--d", type=int, required=True)
        g.add_argument("-o", "--output", default=None)
        g.set_defaults(func=cmd_gen)
    planar = gen_sub.add_parser("planar", help="rectangular lattice with holes")
    planar.add_argument("--cells", required=True, help="ROWSxCOLS")
    planar.add_argument("--sides", default="closed",
                        help="one class or top,right,bottom,left")
    planar.add_argument("--hole", action="append", default=[],
                        help="r,c,HxW[:open|closed|o/c letter sequence], repeatable")
    planar.add_argument("-o", "--output", default=None)
    planar.set_defaults(func=cmd_gen)

    info = sub.add_parser("info", help="print the code report for a lattice file")
    info.add_argument("file")
    info.add_argument("--json", action="store_true")
    info.add_argument("--strict", action="store_true")
    info.add_argument("-o", "--output", default=None)
    info.set_defaults(func=cmd_info)

    bench = sub.add_parser("bench", help="run an erasure sweep")
    bench.add_argument("file")
    bench.add_argument("--format", choices=["csv", "json"], default="csv")
    _add_sweep_flags(bench)
    bench.set_defaults(func=cmd_bench)

    compare = sub.add_parser("compare", help="sweep several lattices on a common grid")
    compare.add_argument("files", nargs="+")
    _add_sweep_flags(compare)
    compare.set_defaults(func=cmd_compare)

    serve = sub.add_parser("serve", help="start the local HTTP API")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8731)
    serve.add_argument("--trial-cap", type=int, default=1_000_000)
    serve.add_argument("--body-limit", type=int, default=16 * 1024 * 1024)
    serve.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"squab: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"squab: {exc}", file=sys.stderr)
        return 1
    except KeyboardInterrupt:
        return 130


if __name__ == "__main__":
    sys.exit(main())
