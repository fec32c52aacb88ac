"""Command-line front end: ``pearcey eval | batch | table | sweep``.

Exit codes: 0 success, 1 some batch row failed (or a table cell failed),
2 region error, 3 unparseable input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import mpmath
import numpy as np

from .evaluator import evaluate_method
from .reference import oracle_value
from .results import DomainError, MethodTag, PearceyError, RegionError
from .tables import reproduce_table

EXIT_OK = 0
EXIT_ROW_FAILED = 1
EXIT_REGION = 2
EXIT_PARSE = 3

METHOD_NAMES = {
    "auto": MethodTag.AUTO,
    "smallx": MethodTag.SMALL_X,
    "largex": MethodTag.LARGE_X,
    "largexy": MethodTag.LARGE_XY,
    "series": MethodTag.CONVERGENT_SERIES,
    "quad": MethodTag.QUADRATURE,
}

BATCH_COLUMNS = [
    "x",
    "y",
    "value_re",
    "value_im",
    "method",
    "terms",
    "error_estimate",
    "warning_count",
    "error",
]


# -- complex literals -----------------------------------------------------------

_NUM = r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_UNUM = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_PAIR = re.compile(rf"^\(\s*({_NUM})\s*,\s*({_NUM})\s*\)$")
_REAL = re.compile(rf"^({_NUM})$")
_IMAG = re.compile(rf"^([+-]?)({_UNUM})?[ij]$")
_FULL = re.compile(rf"^({_NUM})\s*([+-])\s*({_UNUM})?[ij]$")


def parse_complex(text: str) -> complex:
    """Parse "a+bi", "a-bi", "a", "bi" or "(a,b)". Raises ValueError otherwise."""
    s = text.strip()
    if m := _PAIR.match(s):
        return complex(float(m[1]), float(m[2]))
    if m := _REAL.match(s):
        return complex(float(m[1]), 0.0)
    if m := _IMAG.match(s):
        im = float(m[2]) if m[2] else 1.0
        return complex(0.0, -im if m[1] == "-" else im)
    if m := _FULL.match(s):
        im = float(m[3]) if m[3] else 1.0
        return complex(float(m[1]), -im if m[2] == "-" else im)
    raise ValueError(f"not a complex literal: {text!r}")


def render_complex(z: complex) -> str:
    """Inverse of :func:`parse_complex`, exact for finite values."""
    z = complex(z)
    sign = "-" if math.copysign(1.0, z.imag) < 0 else "+"
    return f"{z.real!r}{sign}{abs(z.imag)!r}i"


def _fmt(v: float | None, sig: int = 6) -> str:
    if v is None:
        return ""
    return f"{v:.{sig}g}"


def _fmt_complex(z: complex, sig: int) -> str:
    sign = "-" if math.copysign(1.0, z.imag) < 0 else "+"
    return f"{z.real:.{sig}g}{sign}{abs(z.imag):.{sig}g}i"


# -- eval -----------------------------------------------------------------------


def _json_result(x: complex, y: complex, res) -> str:
    obj = {
        "x": [x.real, x.imag],
        "y": [y.real, y.imag],
        "value": [res.value.real, res.value.imag],
        "method": str(res.method),
        "terms": res.terms_used,
        "error_estimate": res.error_estimate,
        "warnings": list(res.warnings),
    }
    # json uses repr for floats, which round-trips
    return json.dumps(obj)


def cmd_eval(args, out=None, err=None) -> int:
    out, err = out or sys.stdout, err or sys.stderr
    parsed = {}
    for flag in ("x", "y"):
        try:
            parsed[flag] = parse_complex(getattr(args, flag))
        except ValueError as exc:
            print(f"error: --{flag}: {exc}", file=err)
            return EXIT_PARSE
    x, y = parsed["x"], parsed["y"]
    try:
        res = evaluate_method(x, y, METHOD_NAMES[args.method], args.terms, args.tol)
    except RegionError as exc:
        print(f"region error: {exc}", file=err)
        return EXIT_REGION
    except DomainError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_PARSE
    if args.json:
        print(_json_result(x, y, res), file=out)
    else:
        line = f"P({_fmt_complex(x, 6)}, {_fmt_complex(y, 6)}) = {_fmt_complex(res.value, 10)}"
        line += f"  [{res.method}, {res.terms_used} terms, err ~ {_fmt(res.error_estimate) or 'n/a'}]"
        print(line, file=out)
        for w in res.warnings:
            print(f"warning: {w}", file=err)
    return EXIT_OK


# -- batch ----------------------------------------------------------------------


@dataclass(frozen=True)
class BatchRecord:
    line: int
    x: str
    y: str
    method: str | None = None
    terms: str | None = None
    parse_error: str | None = None


def _read_records(text: str, path: str) -> list[BatchRecord]:
    """CSV with a header row, or JSON lines when the file looks like JSON."""
    stripped = text.lstrip()
    if path.endswith(".jsonl") or stripped.startswith("{"):
        records = []
        for i, raw in enumerate(text.splitlines(), start=1):
            if not raw.strip():
                continue
            try:
                obj = json.loads(raw)
                if not isinstance(obj, dict):
                    raise ValueError("expected an object")
                records.append(
                    BatchRecord(
                        i,
                        str(obj["x"]),
                        str(obj["y"]),
                        obj.get("method"),
                        None if obj.get("terms") is None else str(obj["terms"]),
                    )
                )
            except (ValueError, KeyError) as exc:
                records.append(BatchRecord(i, "", "", parse_error=f"line {i}: {exc}"))
        return records
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None or not {"x", "y"} <= set(reader.fieldnames):
        raise ValueError("CSV header must contain x and y")
    records = []
    for row in reader:
        line = reader.line_num
        if None in row or any(row.get(k) is None for k in ("x", "y")):
            records.append(BatchRecord(line, "", "", parse_error=f"line {line}: wrong field count"))
            continue
        records.append(
            BatchRecord(line, row["x"], row["y"], row.get("method") or None, row.get("terms") or None)
        )
    return records


def _run_record(rec: BatchRecord, default_method: str) -> dict:
    row = dict.fromkeys(BATCH_COLUMNS, "")
    row["x"], row["y"] = rec.x, rec.y
    if rec.parse_error:
        row["error"] = f"parse: {rec.parse_error}"
        return row
    try:
        x, y = parse_complex(rec.x), parse_complex(rec.y)
        row["x"], row["y"] = render_complex(x), render_complex(y)
        method = rec.method or default_method
        if method not in METHOD_NAMES:
            raise ValueError(f"unknown method {method!r}")
        terms = int(rec.terms) if rec.terms else None
    except ValueError as exc:
        row["error"] = f"parse: line {rec.line}: {exc}"
        return row
    try:
        res = evaluate_method(x, y, METHOD_NAMES[method], terms)
    except RegionError as exc:
        row["error"] = f"region-error: {exc}"
        return row
    except (PearceyError, ArithmeticError) as exc:
        row["error"] = f"{type(exc).__name__}: {exc}"
        return row
    row.update(
        value_re=repr(res.value.real),
        value_im=repr(res.value.imag),
        method=str(res.method),
        terms=str(res.terms_used),
        error_estimate="" if res.error_estimate is None else repr(res.error_estimate),
        warning_count=str(len(res.warnings)),
    )
    return row


def _map_ordered(fn, items, workers: int):
    if workers <= 1 or len(items) < 2:
        return [fn(it) for it in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _batch_one(args):
    return _run_record(*args)


def cmd_batch(args, out=None, err=None) -> int:
    out, err = out or sys.stdout, err or sys.stderr
    try:
        with open(args.input, encoding="utf-8") as fh:
            text = fh.read()
        records = _read_records(text, args.input)
    except (OSError, UnicodeDecodeError, ValueError) as exc:
        print(f"error: cannot read {args.input}: {exc}", file=err)
        return EXIT_PARSE
    rows = _map_ordered(_batch_one, [(r, args.method) for r in records], args.workers)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=BATCH_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    if args.output in (None, "-"):
        out.write(buf.getvalue())
    else:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(buf.getvalue())
    failed = [r for r in rows if r["error"]]
    for r in failed:
        print(f"row failed: {r['error']}", file=err)
    return EXIT_ROW_FAILED if failed else EXIT_OK


# -- table ----------------------------------------------------------------------


def cmd_table(args, out=None, err=None) -> int:
    out, err = out or sys.stdout, err or sys.stderr
    cells = reproduce_table(args.which, digits=args.digits)
    print(f"{'point':<22} {'n':>2} {'computed':>12} {'expected':>12}  verdict", file=out)
    for c in cells:
        verdict = "PASS" if c.passed else f"FAIL ({c.rule})"
        print(
            f"{c.label:<22} {c.n:>2} {_fmt(c.computed):>12} {_fmt(c.expected):>12}  {verdict}",
            file=out,
        )
    failed = sum(not c.passed for c in cells)
    print(f"{len(cells) - failed}/{len(cells)} cells pass", file=out)
    return EXIT_OK if failed == 0 else EXIT_ROW_FAILED


# -- sweep ----------------------------------------------------------------------


def parse_range(spec: str) -> np.ndarray:
    """``min:max:count`` (linear) or ``min:max:count:log`` (geometric)."""
    parts = spec.split(":")
    if len(parts) not in (3, 4) or (len(parts) == 4 and parts[3] not in ("lin", "log")):
        raise ValueError(f"bad range spec {spec!r}, expected min:max:count[:lin|log]")
    lo, hi = float(parts[0]), float(parts[1])
    count = int(parts[2])
    if count < 1 or not (math.isfinite(lo) and math.isfinite(hi)):
        raise ValueError(f"bad range spec {spec!r}")
    if count == 1:
        return np.array([lo])
    if len(parts) == 4 and parts[3] == "log":
        if lo <= 0 or hi <= 0:
            raise ValueError(f"log range needs positive bounds: {spec!r}")
        return np.geomspace(lo, hi, count)
    return np.linspace(lo, hi, count)


def _polar_grid(mod_spec: str, arg_spec: str) -> list[complex]:
    return [complex(r * math.cos(a), r * math.sin(a)) for r in parse_range(mod_spec) for a in parse_range(arg_spec)]


def _sweep_one(args) -> dict:
    x, y, with_oracle = args
    row = {"x": render_complex(x), "y": render_complex(y)}
    try:
        res = evaluate_method(x, y)
    except (PearceyError, ArithmeticError) as exc:
        row.update(method="", terms="", error_estimate="", error=f"{type(exc).__name__}: {exc}")
        if with_oracle:
            row["oracle_error"] = ""
        return row
    row.update(
        method=str(res.method),
        terms=str(res.terms_used),
        error_estimate="" if res.error_estimate is None else repr(res.error_estimate),
        error="",
    )
    if with_oracle:
        exact = oracle_value(x, y, 40)
        with mpmath.workdps(40):
            row["oracle_error"] = repr(float(abs(mpmath.mpc(res.value) - exact)))
    return row


def cmd_sweep(args, out=None, err=None) -> int:
    out, err = out or sys.stdout, err or sys.stderr
    try:
        xs = _polar_grid(args.x_grid, args.x_arg)
        ys = _polar_grid(args.y_grid, args.y_arg)
    except ValueError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_PARSE
    jobs = [(x, y, args.with_oracle) for x in xs for y in ys]
    rows = _map_ordered(_sweep_one, jobs, args.workers)
    fields = ["x", "y", "method", "terms", "error_estimate"]
    if args.with_oracle:
        fields.append("oracle_error")
    fields.append("error")
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    if args.out in (None, "-"):
        out.write(buf.getvalue())
    else:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(buf.getvalue())
    return EXIT_OK


# -- entry point ----------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="pearcey", description="Evaluate the Pearcey integral P(x, y).")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    e = sub.add_parser("eval", help="evaluate at one point")
    e.add_argument("--x", required=True)
    e.add_argument("--y", required=True)
    e.add_argument("--method", choices=list(METHOD_NAMES), default="auto")
    e.add_argument("--terms", type=int)
    e.add_argument("--tol", type=float)
    e.add_argument("--json", action="store_true")
    e.set_defaults(func=cmd_eval)

    b = sub.add_parser("batch", help="evaluate every row of a CSV or JSON-lines file")
    b.add_argument("input")
    b.add_argument("output", nargs="?", default="-")
    b.add_argument("--method", choices=list(METHOD_NAMES), default="auto")
    b.add_argument("--workers", type=int, default=1)
    b.set_defaults(func=cmd_batch)

    t = sub.add_parser("table", help="recompute a reference relative-error table")
    t.add_argument("which", type=int, choices=(1, 2, 3))
    t.add_argument("--digits", type=int, default=50)
    t.set_defaults(func=cmd_table)

    s = sub.add_parser("sweep", help="emit selector data over a polar grid")
    s.add_argument("--x-grid", required=True, help="modulus range min:max:count[:log]")
    s.add_argument("--y-grid", required=True, help="modulus range min:max:count[:log]")
    s.add_argument("--x-arg", default="0:0:1", help="argument range in radians")
    s.add_argument("--y-arg", default="0:0:1", help="argument range in radians")
    s.add_argument("--out", default="-")
    s.add_argument("--with-oracle", action="store_true")
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(func=cmd_sweep)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
