"""Command-line front end.

JSON goes to stdout; ``--out path.csv`` also writes a CSV table.  Exit codes:
0 on success, 1 on a computation or I/O error, 2 on a usage error.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .conditions import (CSV_CONDITION_HEADER, DEFAULT_CONDITIONS, ConditionReport,
                         condition_report)
from .errors import RefourierError, UnknownFunction
from .funcmodel import DEFAULT_GRID, CatalogEntry, Grid, Parity, catalog, get_entry, with_parity
from .quad import DEFAULT_CONFIG, QuadConfig
from .reexpand import CSV_REEXPAND_HEADER, ReexpansionReport, reexpand_cos_to_sin, reexpand_sin_to_cos
from .transforms import HilbertForm, cesaro_hilbert_mean, cosine_transform, hilbert, sine_transform

SIG_DIGITS = 12
SOURCES = ("f", "f-even", "f-odd", "Fc", "Fs")


class UsageError(Exception):
    pass


def fmt(v: float) -> float:
    """Round to 12 significant digits."""
    if isinstance(v, float) and math.isfinite(v):
        return float(f"{v:.{SIG_DIGITS}g}")
    return v


def _rounded(obj):
    if isinstance(obj, float):
        return fmt(obj)
    if isinstance(obj, dict):
        return {k: _rounded(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_rounded(v) for v in obj]
    return obj


def dumps(obj) -> str:
    return json.dumps(_rounded(obj), indent=2)


def _cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return f"{v:.{SIG_DIGITS}g}"
    return str(v)


def write_csv(header: Sequence[str], rows: Iterable[Sequence], path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_cell(v) for v in row])


def emit_csv(report, path) -> None:
    """Write a report as CSV: one row per grid point (or per condition)."""
    if isinstance(report, ReexpansionReport):
        write_csv(CSV_REEXPAND_HEADER, report.csv_rows(), path)
    elif isinstance(report, ConditionReport):
        write_csv(CSV_CONDITION_HEADER, report.csv_rows(), path)
    elif isinstance(report, dict) and "columns" in report:
        write_csv(report["columns"], report["rows"], path)
    else:
        raise TypeError(f"no CSV layout for {type(report).__name__}")


# ---------------------------------------------------------------------------
# argument handling


def _grid(text: str) -> Grid:
    try:
        return Grid.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _float_list(text: str) -> list:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("quadrature and output")
    sup = argparse.SUPPRESS
    g.add_argument("--rel-tol", type=float, default=sup)
    g.add_argument("--abs-tol", type=float, default=sup)
    g.add_argument("--tail-start", type=float, default=sup)
    g.add_argument("--max-subdiv", type=int, default=sup)
    g.add_argument("--config", type=Path, default=sup, help="file of `key = value` lines")
    g.add_argument("--out", type=Path, default=sup, help="also write a CSV table here")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="refourier", parents=[common],
                                     description="Half-line Fourier transforms, Hilbert "
                                                 "transforms and re-expansion checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    cat = sub.add_parser("catalog", parents=[common], help="list or show catalog functions")
    cat_sub = cat.add_subparsers(dest="action", required=True)
    cat_sub.add_parser("list", parents=[common])
    show = cat_sub.add_parser("show", parents=[common])
    show.add_argument("name")

    tr = sub.add_parser("transform", parents=[common], help="cosine or sine transform of f")
    tr.add_argument("--kind", choices=("cos", "sin"), required=True)
    tr.add_argument("--function", required=True)
    where = tr.add_mutually_exclusive_group(required=True)
    where.add_argument("--at", type=float)
    where.add_argument("--grid", type=_grid)

    hi = sub.add_parser("hilbert", parents=[common], help="Hilbert transform on a grid")
    hi.add_argument("--form", choices=[f.value for f in HilbertForm], required=True)
    hi.add_argument("--function", required=True)
    hi.add_argument("--grid", type=_grid, default=DEFAULT_GRID)
    hi.add_argument("--of", choices=SOURCES, default="Fc")

    ch = sub.add_parser("check", parents=[common], help="integrability condition report")
    ch.add_argument("--function", required=True)
    ch.add_argument("--of", choices=SOURCES, default="Fc")
    ch.add_argument("--conditions", default=",".join(DEFAULT_CONDITIONS))
    ch.add_argument("--q", type=_float_list, default=[2.0, math.inf])

    re = sub.add_parser("reexpand", parents=[common], help="verify F_s = H F_c or F_c = -H F_s")
    re.add_argument("--from", dest="source", choices=("cos", "sin"), required=True)
    re.add_argument("--function", required=True)
    re.add_argument("--grid", type=_grid, default=DEFAULT_GRID)

    cv = sub.add_parser("converge", parents=[common], help="Cesaro means of the Hilbert transform")
    cv.add_argument("--function", required=True)
    cv.add_argument("--of", choices=SOURCES, default="Fc")
    cv.add_argument("--at", type=float, required=True)
    cv.add_argument("--N", dest="n_values", type=_float_list, required=True)
    return parser


def read_config_file(path: Path) -> dict:
    values = {}
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise UsageError(f"{path}:{lineno}: expected `key = value`")
        values[key.strip()] = value.strip()
    return values


def make_config(args) -> QuadConfig:
    values = {}
    if hasattr(args, "config"):
        try:
            values.update(read_config_file(args.config))
        except OSError as exc:
            raise UsageError(f"cannot read config: {exc}") from None
    for key in ("rel_tol", "abs_tol", "tail_start", "max_subdiv"):
        if hasattr(args, key):
            values[key] = getattr(args, key)
    try:
        return QuadConfig.from_mapping(values) if values else DEFAULT_CONFIG
    except (TypeError, ValueError) as exc:
        raise UsageError(f"bad configuration: {exc}") from None


def _entry(name: str) -> CatalogEntry:
    try:
        return get_entry(name)
    except UnknownFunction as exc:
        raise UsageError(str(exc.args[0])) from None


def _select(entry: CatalogEntry, of: str):
    if of == "f":
        return entry.f
    if of in ("f-even", "f-odd"):
        return with_parity(entry.f, Parity.EVEN if of == "f-even" else Parity.ODD)
    spec = entry.Fc_closed if of == "Fc" else entry.Fs_closed
    if spec is None:
        raise UsageError(f"{entry.name} has no closed-form {of}")
    return spec


# ---------------------------------------------------------------------------
# commands


def _entry_summary(e: CatalogEntry) -> dict:
    def name(spec):
        return spec.name if spec is not None else None

    return {
        "name": e.name,
        "f": e.f.name,
        "jumps": list(e.f.jumps),
        "Fc": name(e.Fc_closed),
        "Fs": name(e.Fs_closed),
        "HFc": name(e.HFc_closed),
        "Fc_integrable": e.Fc_integrable,
        "Fs_integrable": e.Fs_integrable,
        "provenance": e.provenance,
    }


def cmd_catalog(args, cfg):
    if args.action == "list":
        entries = [_entry_summary(e) for e in catalog()]
        table = {"columns": ("name", "f", "Fc_integrable", "Fs_integrable"),
                 "rows": [(e["name"], e["f"], e["Fc_integrable"], e["Fs_integrable"])
                          for e in entries]}
        return {"functions": entries}, table
    e = _entry_summary(_entry(args.name))
    return e, {"columns": ("key", "value"), "rows": sorted((k, v) for k, v in e.items())}


def _rows_table(results):
    return {"columns": ("x", "value", "err_estimate", "converged"),
            "rows": [(r["x"], r["value"], r["err_estimate"], r["converged"]) for r in results]}


def _point(x, res) -> dict:
    return {"x": x, "value": res.value, "err_estimate": res.err_estimate,
            "converged": res.converged, "flags": list(res.flags)}


def cmd_transform(args, cfg):
    entry = _entry(args.function)
    fn = cosine_transform if args.kind == "cos" else sine_transform
    xs = [args.at] if args.at is not None else list(args.grid.points)
    if any(x < 0 for x in xs):
        raise UsageError("transform points must be >= 0")
    results = [_point(x, fn(entry.f, x, cfg)) for x in xs]
    out = {"function": entry.name, "kind": args.kind}
    if args.at is not None:
        out.update(results[0])
    else:
        out.update(grid=args.grid.to_dict(), results=results)
    return out, _rows_table(results)


def cmd_hilbert(args, cfg):
    entry = _entry(args.function)
    g = _select(entry, args.of)
    results = [_point(x, hilbert(g, x, args.form, cfg)) for x in args.grid.points]
    out = {"function": entry.name, "of": args.of, "form": args.form,
           "grid": args.grid.to_dict(), "results": results}
    return out, _rows_table(results)


def cmd_check(args, cfg):
    entry = _entry(args.function)
    g = _select(entry, args.of)
    conditions = [c.strip() for c in args.conditions.split(",") if c.strip()]
    bad = sorted(set(conditions) - set(DEFAULT_CONDITIONS))
    if bad:
        raise UsageError(f"unknown conditions: {', '.join(bad)}")
    report = condition_report(g, conditions, args.q, cfg)
    out = {"of": args.of, **report.to_dict()}
    out["function"] = entry.name
    return out, report


def cmd_reexpand(args, cfg):
    entry = _entry(args.function)
    fn = reexpand_cos_to_sin if args.source == "cos" else reexpand_sin_to_cos
    report = fn(entry, args.grid, cfg)
    return report.to_dict(), report


def cmd_converge(args, cfg):
    entry = _entry(args.function)
    g = _select(entry, args.of)
    if entry.HFc_closed is not None and args.of == "Fc":
        reference = float(entry.HFc_closed(args.at))
        ref_source = "closed"
    else:
        reference = hilbert(g, args.at, HilbertForm.FULL_LINE, cfg).value
        ref_source = "quadrature"
    rows = []
    for n in args.n_values:
        if n <= 0:
            raise UsageError("N values must be positive")
        r = cesaro_hilbert_mean(g, args.at, n, cfg)
        rows.append({"N": n, "mean": r.value, "abs_error": abs(r.value - reference),
                     "converged": r.converged})
    out = {"function": entry.name, "of": args.of, "x": args.at, "reference": reference,
           "reference_source": ref_source, "rows": rows}
    table = {"columns": ("N", "mean", "abs_error"),
             "rows": [(r["N"], r["mean"], r["abs_error"]) for r in rows]}
    return out, table


COMMANDS = {
    "catalog": cmd_catalog,
    "transform": cmd_transform,
    "hilbert": cmd_hilbert,
    "check": cmd_check,
    "reexpand": cmd_reexpand,
    "converge": cmd_converge,
}


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = make_config(args)
        payload, table = COMMANDS[args.command](args, cfg)
    except UsageError as exc:
        print(f"refourier: error: {exc}", file=stderr)
        return 2
    except (RefourierError, ArithmeticError, ValueError) as exc:
        print(f"refourier: computation failed: {type(exc).__name__}: {exc}", file=stderr)
        return 1
    stdout.write(dumps(payload) + "\n")
    if hasattr(args, "out"):
        try:
            emit_csv(table, args.out)
        except OSError as exc:
            print(f"refourier: cannot write {args.out}: {exc}", file=stderr)
            return 1
    return 0


def main() -> None:
    sys.exit(run())
