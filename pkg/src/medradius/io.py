"""Dataset reading and bit-stable report serialization.

Reals are written with 17 significant digits, so every float64 survives a
write/read round trip exactly.  NaN is written as ``NA`` and infinities as
``inf``/``-inf``.  CSV output follows RFC 4180 (comma separator, CRLF line
ends, mandatory header row).
"""

import csv
import json
import math
import sys
from fractions import Fraction
from io import StringIO
from pathlib import Path

import numpy as np

from .compare import CorrelationReport
from .depth import DepthReport, GridField
from .errors import InputError, MedRadiusError
from .figures import FigureReport
from .geometry import CenterEstimate, as_dataset
from .radial import RadialProfile

NA = "NA"


def format_real(x) -> str:
    x = float(x)
    if math.isnan(x):
        return NA
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(x, ".17g")


def _cell(v) -> str:
    if v is None:
        return NA
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating, Fraction)):
        return format_real(v)
    return str(v)


# --- reading ------------------------------------------------------------------

def _parse(cell):
    try:
        x = float(cell)
    except ValueError:
        return None
    return x if math.isfinite(x) else None


def read_dataset(path, has_header=None) -> np.ndarray:
    """Read a rectangular numeric CSV into an n x d array.

    With ``has_header=None`` the first row is treated as a header when any of
    its cells is not a finite number.  Blank lines are ignored.  Ragged rows
    and non-numeric cells raise :class:`InputError` naming the file line (and
    column for bad cells).
    """
    path = Path(path)
    try:
        fh = open(path, newline="", encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    rows = []
    with fh:
        reader = csv.reader(fh)
        first = True
        width = None
        for cells in reader:
            line = reader.line_num
            if not cells or all(not c.strip() for c in cells):
                continue
            if first:
                first = False
                header = has_header
                if header is None:
                    header = any(_parse(c) is None for c in cells)
                if header:
                    width = len(cells)
                    continue
            if width is None:
                width = len(cells)
            elif len(cells) != width:
                raise InputError(
                    f"{path}: line {line} has {len(cells)} fields, expected {width}")
            row = []
            for col, c in enumerate(cells, start=1):
                x = _parse(c.strip())
                if x is None:
                    raise InputError(
                        f"{path}: line {line}, column {col}: non-numeric value {c!r}")
                row.append(x)
            rows.append(row)
    if not rows:
        raise InputError(f"{path}: no data rows")
    return as_dataset(np.array(rows, dtype=float))


# --- CSV ----------------------------------------------------------------------

def write_csv(path, header, rows):
    if not header:
        raise MedRadiusError("CSV output needs a header row")
    text = csv_text(header, rows)
    Path(path).write_bytes(text.encode("utf-8"))


def csv_text(header, rows) -> str:
    buf = StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow([str(h) for h in header])
    width = len(header)
    for r in rows:
        r = list(r)
        if len(r) != width:
            raise MedRadiusError(f"row of length {len(r)} under a {width}-column header")
        w.writerow([_cell(v) for v in r])
    return buf.getvalue()


# --- JSON ---------------------------------------------------------------------

def _json(obj, depth, indent):
    pad = " " * (indent * (depth + 1))
    end = " " * (indent * depth)
    if hasattr(obj, "as_dict"):
        obj = obj.as_dict()
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating, Fraction)):
        s = format_real(obj)
        return s if math.isfinite(float(obj)) else json.dumps(s)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, np.ndarray):
        obj = list(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_json(v, depth + 1, indent)}"
                 for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple, np.ndarray)) for v in obj):
            return "[" + ", ".join(_json(v, depth + 1, indent) for v in obj) + "]"
        items = [pad + _json(v, depth + 1, indent) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise MedRadiusError(f"cannot serialize {type(obj).__name__}")


def json_text(obj, indent=2) -> str:
    """Deterministic JSON: keys in insertion order, reals at 17 digits,
    non-finite reals as the strings "NA", "inf", "-inf"."""
    return _json(obj, 0, indent) + "\n"


def write_json(path, obj):
    Path(path).write_bytes(json_text(obj).encode("utf-8"))


# --- reports ------------------------------------------------------------------

def dataset_table(x):
    x = np.atleast_2d(np.asarray(x, dtype=float))
    return [f"x{j + 1}" for j in range(x.shape[1])], x.tolist()


def profile_table(prof: RadialProfile):
    return list(prof.columns), prof.rows()


def correlation_table(rep: CorrelationReport):
    """Both matrices stacked row-major: corr rows first, then centre_dist."""
    header = ["block", "method"] + list(rep.methods)
    rows = []
    for block, mat in (("corr", rep.corr), ("centre_dist", rep.centre_dist)):
        for name, row in zip(rep.methods, mat):
            rows.append([block, name] + [float(v) for v in row])
    return header, rows


def depth_table(rep: DepthReport):
    d = rep.points.shape[1]
    header = [f"x{j + 1}" for j in range(d)] + list(rep.depths)
    cols = [rep.depths[m] for m in rep.depths]
    rows = [list(map(float, p)) + [float(c[i]) for c in cols]
            for i, p in enumerate(rep.points)]
    return header, rows


def center_table(c: CenterEstimate):
    d = len(c.location)
    header = ["method"] + [f"x{j + 1}" for j in range(d)] + [
        "g_at_center", "iterations", "converged"]
    row = [c.method] + [float(v) for v in c.location] + [
        float(c.g_at_center), int(c.iterations), bool(c.converged)]
    return header, [row]


def field_tables(f: GridField):
    """One (x, y, value) table per layer, rows in (i, j) order."""
    nodes = f.nodes()
    out = {}
    for name, layer in f.layers.items():
        vals = np.asarray(layer, dtype=float).ravel()
        out[name] = (["x", "y", "value"],
                     [[a, b, v] for (a, b), v in zip(nodes.tolist(), vals.tolist())])
    return out


def field_dict(f: GridField):
    return {
        "xs": f.xs,
        "ys": f.ys,
        "layers": {k: [list(r) for r in v] for k, v in f.layers.items()},
        "errors": dict(f.errors),
    }


def report_dict(report):
    if isinstance(report, GridField):
        return field_dict(report)
    if isinstance(report, RadialProfile):
        return {"center": report.center, "degenerate": report.degenerate,
                **{c: getattr(report, c) for c in report.columns}}
    if isinstance(report, FigureReport):
        return {"figure": report.figure, "kind": report.kind,
                "params": report.params, "payload": report_dict(report.payload)}
    if isinstance(report, np.ndarray):
        return {"data": [list(r) for r in np.atleast_2d(report)]}
    if hasattr(report, "as_dict"):
        return report.as_dict()
    if isinstance(report, dict):
        return report
    raise MedRadiusError(f"no JSON layout for {type(report).__name__}")


def report_table(report):
    if isinstance(report, RadialProfile):
        return profile_table(report)
    if isinstance(report, CorrelationReport):
        return correlation_table(report)
    if isinstance(report, DepthReport):
        return depth_table(report)
    if isinstance(report, CenterEstimate):
        return center_table(report)
    if isinstance(report, np.ndarray):
        return dataset_table(report)
    if isinstance(report, FigureReport) and report.kind != "field":
        return report_table(report.payload)
    if isinstance(report, dict):
        if any(isinstance(v, (dict, list, tuple, np.ndarray)) for v in report.values()):
            raise MedRadiusError("nested records have no CSV layout")
        return list(report), [list(report.values())]
    raise MedRadiusError(f"no single-table CSV layout for {type(report).__name__}")


def _layer_path(path, name):
    p = Path(path)
    return p.with_name(f"{p.stem}_{name}{p.suffix or '.csv'}")


def write_report(report, path, format="csv", meta=None):
    """Serialize ``report`` to ``path`` and return the list of files written.

    Grid fields in CSV form become one file per layer, named
    ``<stem>_<layer>.csv`` next to ``path``.  ``meta`` is added under a
    "run" key in JSON output and ignored for CSV.
    """
    if format == "json":
        body = report_dict(report)
        if meta is not None:
            body = {"run": meta, **body}
        write_json(path, body)
        return [Path(path)]
    if format != "csv":
        raise MedRadiusError(f"unknown format {format!r}")
    field = report.payload if isinstance(report, FigureReport) else report
    if isinstance(field, GridField):
        written = []
        for name, (header, rows) in field_tables(field).items():
            p = _layer_path(path, name)
            write_csv(p, header, rows)
            written.append(p)
        return written
    header, rows = report_table(report)
    write_csv(path, header, rows)
    return [Path(path)]


def emit(report, format="csv", meta=None, stream=None):
    """Write a single-table report to a text stream (stdout by default)."""
    stream = stream or sys.stdout
    if format == "json":
        body = report_dict(report)
        if meta is not None:
            body = {"run": meta, **body}
        stream.write(json_text(body))
    else:
        stream.write(csv_text(*report_table(report)))
