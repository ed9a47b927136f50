"""Command-line front end.

Verbs: depth, profile, gmedian, contour, reproduce, figure.  Exit status is
0 on success, 1 for bad input or arguments, 2 for numeric failures such as a
singular covariance matrix.
"""

import argparse
import sys
from pathlib import Path

import numpy as np

from . import io
from .compare import SIMPLICIAL_POOL, reproduce_table
from .depth import METHODS, DepthMethod, GridSpec, depth_field, depth_report
from .errors import (AllDirectionsDegenerateError, CenterNotMinimalError,
                     ConstantInputError, DegenerateScaleError, MedRadiusError,
                     SingularCovarianceError)
from .figures import reproduce_figure
from .geometry import compute_center, geometric_median, radial_center
from .radial import median_univariate, profile

VERBS = ("depth", "profile", "gmedian", "contour", "reproduce", "figure")
NUMERIC_ERRORS = (SingularCovarianceError, DegenerateScaleError, CenterNotMinimalError,
                  AllDirectionsDegenerateError, ConstantInputError)
EXIT_OK, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on its own; route usage errors to 1
    def error(self, message):
        raise UsageError(message)


def build_parser():
    p = _Parser(prog="medradius", description="Median-radius depth tools.")
    p.add_argument("verb", choices=VERBS)
    p.add_argument("--input", help="CSV dataset")
    p.add_argument("--points", help="CSV of query points (default: the input rows)")
    p.add_argument("--header", choices=("auto", "yes", "no"), default="auto",
                   help="whether CSV inputs start with a header row")
    p.add_argument("--method", action="append", choices=METHODS,
                   help="depth method, repeatable")
    p.add_argument("--center", choices=("radial", "gmedian"), default="radial")
    p.add_argument("--grid-n", type=int, default=100)
    p.add_argument("--margin", type=float, default=0.1,
                   help="grid padding as a fraction of the data range")
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int, default=50)
    p.add_argument("--seed", type=int)
    p.add_argument("--output", help="output file, or directory for multi-file verbs")
    p.add_argument("--format", choices=("csv", "json"))
    p.add_argument("--table", type=int, choices=(1, 2, 3))
    p.add_argument("--id", type=int, choices=(1, 2, 3, 4, 5, 6, 7))
    p.add_argument("--trim", type=float, default=0.25)
    p.add_argument("--n-dirs", type=int, default=1000)
    p.add_argument("--simplicial-pool", type=int,
                   help=f"triangle-vertex subsample for tables (e.g. {SIMPLICIAL_POOL}); "
                        "default uses all observations")
    return p


def _header(args):
    return {"auto": None, "yes": True, "no": False}[args.header]


def _need(args, *names):
    for name in names:
        if getattr(args, name.replace("-", "_")) is None:
            raise UsageError(f"{args.verb} needs --{name}")


def _metadata(args):
    flags = {k: v for k, v in sorted(vars(args).items()) if k != "verb"}
    return {"verb": args.verb, "flags": flags, "seed": args.seed}


def _methods(args, default):
    tags = args.method or list(default)
    out = []
    for t in tags:
        if t == "projection" and args.seed is None:
            raise UsageError("projection depth is random and needs --seed")
        out.append(DepthMethod(t, n_dirs=args.n_dirs, seed=args.seed, trim=args.trim))
    return out


def _center(args, x):
    return compute_center(x, "radial-argmin" if args.center == "radial" else "geometric-median")


class _Sink:
    """Where a verb's artifacts go: files under --output, or stdout."""

    def __init__(self, args, meta):
        self.args = args
        self.meta = meta

    def single(self, report, default_format):
        fmt = self.args.format or default_format
        out = self.args.output
        if out is None:
            io.emit(report, fmt, meta=self.meta if fmt == "json" else None)
            return
        io.write_report(report, out, fmt, meta=self.meta)
        if fmt == "csv":
            io.write_json(Path(out).with_suffix(".meta.json"), self.meta)

    def directory(self):
        if self.args.output is None:
            raise UsageError(f"{self.args.verb} writes several files and needs --output DIR")
        d = Path(self.args.output)
        d.mkdir(parents=True, exist_ok=True)
        return d


def run_depth(args, sink):
    _need(args, "input")
    x = io.read_dataset(args.input, _header(args))
    q = io.read_dataset(args.points, _header(args)) if args.points else x
    methods = _methods(args, ["mrd"])
    center = _center(args, x) if any(m.tag == "mrd" for m in methods) else None
    sink.single(depth_report(x, q, methods, center=center), "json")


def run_profile(args, sink):
    _need(args, "input")
    x = io.read_dataset(args.input, _header(args))
    if x.shape[1] != 1:
        raise UsageError(f"profile needs univariate data, got d = {x.shape[1]}")
    x = x[:, 0]
    if args.points:
        grid = io.read_dataset(args.points, _header(args))[:, 0]
    else:
        lo, hi = x.min(), x.max()
        pad = args.margin * (hi - lo) if hi > lo else 1.0
        grid = np.linspace(lo - pad, hi + pad, args.grid_n)
    if args.center == "radial":
        c = float(radial_center(x[:, None]).location[0])
    else:
        c = median_univariate(x)
    sink.single(profile(x, grid, c), "csv")


def run_gmedian(args, sink):
    _need(args, "input")
    x = io.read_dataset(args.input, _header(args))
    report = {"geometric_median": geometric_median(x).as_dict(),
              "radial_center": radial_center(x).as_dict()}
    sink.single(report, "json")


def run_contour(args, sink):
    _need(args, "input")
    x = io.read_dataset(args.input, _header(args))
    methods = _methods(args, ["mrd"])
    grid = GridSpec.around(x, args.grid_n, args.margin)
    field = depth_field(x, methods, grid, center=_center(args, x))
    out = sink.directory()
    for name, (header, rows) in io.field_tables(field).items():
        io.write_csv(out / f"{name}.csv", header, rows)
    io.write_json(out / "meta.json", {**sink.meta, "errors": field.errors})


def run_reproduce(args, sink):
    _need(args, "table", "seed")
    rep = reproduce_table(args.table, n=args.n or 3000, seed=args.seed,
                          n_dirs=args.n_dirs, simplicial_pool=args.simplicial_pool)
    if args.output is None:
        io.emit(rep, args.format or "csv", meta=sink.meta if args.format == "json" else None)
        return
    out = sink.directory()
    io.write_report(rep, out / f"table{args.table}.csv", "csv")
    io.write_report(rep, out / f"table{args.table}.json", "json", meta=sink.meta)


def run_figure(args, sink):
    _need(args, "id")
    if args.id not in (1, 2) and args.seed is None:
        raise UsageError(f"figure {args.id} is random and needs --seed")
    kw = dict(seed=args.seed, d=args.d, grid_n=args.grid_n, margin=args.margin,
              n_dirs=args.n_dirs, trim=args.trim)
    if args.n is not None:
        kw["m" if args.id in (1, 2) else "n"] = args.n
    rep = reproduce_figure(args.id, **kw)
    if rep.kind == "profile":
        sink.single(rep, "csv")
    elif rep.kind == "record":
        sink.single({**rep.payload, "params": rep.params}, "json")
    else:
        out = sink.directory()
        for name, (header, rows) in io.field_tables(rep.payload).items():
            io.write_csv(out / f"fig{args.id}_{name}.csv", header, rows)
        io.write_report(rep.data, out / f"fig{args.id}_data.csv", "csv")
        io.write_json(out / f"fig{args.id}_meta.json",
                      {**sink.meta, "params": rep.params, "errors": rep.payload.errors})


RUNNERS = {"depth": run_depth, "profile": run_profile, "gmedian": run_gmedian,
           "contour": run_contour, "reproduce": run_reproduce, "figure": run_figure}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        RUNNERS[args.verb](args, _Sink(args, _metadata(args)))
    except UsageError as exc:
        print(f"medradius: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NUMERIC_ERRORS as exc:
        print(f"medradius: numeric error [{exc.code}]: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except MedRadiusError as exc:
        print(f"medradius: input error [{exc.code}]: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"medradius: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
