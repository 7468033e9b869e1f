"""Command-line front end: ``trig2d <command> [options]``.

Exit codes: 0 success, 1 audit failure, 2 usage error, 3 invalid value,
4 file or format error.
"""
from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path
from typing import List, Optional

from . import io
from .analysis import (
    DEMO_GAUSSIAN,
    GaussianModel,
    default_order,
    error_metrics,
    inner_product_F,
    raster,
)
from .functions import Kind, Label, evaluate, fold_point, is_canonical
from .products import (
    canonical_labels,
    decompose_product,
    decomposition_json,
    expand_product,
    format_product,
    format_slots,
)
from .transforms import GridSpec, Symmetry, Variant, forward, sample_field, synthesize

EXIT_OK = 0
EXIT_AUDIT_FAILED = 1
EXIT_USAGE = 2
EXIT_INVALID = 3
EXIT_IO = 4


class InvalidValue(ValueError):
    pass


def _label(text: str) -> Label:
    try:
        return Label.parse(text)
    except ValueError as e:
        raise InvalidValue(f"malformed label {text!r}: {e}") from None


def _kind(text: str) -> Kind:
    try:
        return Kind.parse(text)
    except ValueError as e:
        raise InvalidValue(str(e)) from None


def _point(text: str) -> tuple[float, float]:
    parts = text.split(",")
    try:
        x, y = (float(p) for p in parts)
    except ValueError:
        raise InvalidValue(f"malformed point {text!r}; expected 'x,y'") from None
    if not (math.isfinite(x) and math.isfinite(y)):
        raise InvalidValue(f"point {text!r} is not finite")
    return x, y


def _factor(text: str) -> tuple[Kind, Label]:
    kind, sep, label = text.partition(":")
    if not sep:
        raise InvalidValue(f"malformed factor {text!r}; expected 'kind:k,l' such as 'sin+:2,1'")
    k, lab = _kind(kind), _label(label)
    if not is_canonical(k, lab):
        raise InvalidValue(f"label {lab} is not canonical for {k}")
    return k, lab


def _spec(args) -> GridSpec:
    try:
        return GridSpec(Symmetry.parse(args.symmetry), Variant.parse(args.variant), args.M)
    except ValueError as e:
        raise InvalidValue(f"M out of range or bad grid: {e}") from None


def _resolution(value: int) -> int:
    if value < 32:
        raise InvalidValue(f"resolution must be at least 32, got {value}")
    return value


def _out_dir(path: Path) -> Path:
    if not path.is_dir():
        raise FileNotFoundError(f"output directory {path} does not exist")
    return path


def cmd_eval(args) -> int:
    kind, label = _kind(args.kind), _label(args.label)
    points = [_point(p) for p in args.point]
    for x, y in points:
        print(repr(float(evaluate(kind, label, x, y))))
    return EXIT_OK


def cmd_fold(args) -> int:
    kind = _kind(args.kind)
    points = [_point(p) for p in args.point]
    for x, y in points:
        sign, q = fold_point(kind, x, y)
        print(f"{sign:+d} {q.x!r} {q.y!r}")
    return EXIT_OK


def cmd_decompose(args) -> int:
    k1, l1 = _factor(args.left)
    k2, l2 = _factor(args.right)
    if args.json:
        print(decomposition_json(k1, l1, k2, l2))
    elif args.slots:
        slots = expand_product(k1, l1, k2, l2)
        print(f"4*{k1}{l1}*{k2}{l2} = {format_slots(slots, raw=True)}")
        print(f"{' ' * len(f'4*{k1}{l1}*{k2}{l2}')} = {format_slots(slots)}")
    else:
        print(format_product(k1, l1, k2, l2, decompose_product(k1, l1, k2, l2)))
    return EXIT_OK


def cmd_transform(args) -> int:
    spec = _spec(args)
    field = io.read_field_csv(args.input, spec)
    table = forward(spec, field)
    io.write_coeffs(args.output, table)
    print(f"{spec.name} M={spec.M}: {len(table)} coefficients -> {args.output}")
    return EXIT_OK


def _dense_from_table(table, resolution: int) -> io.DenseGrid:
    grid = raster(resolution)
    spec = table.spec
    header = {"symmetry": spec.symmetry.value, "variant": spec.variant.value, "M": spec.M,
              "resolution": resolution}
    return io.DenseGrid(header, grid.x, grid.y, synthesize(table, grid.x, grid.y))


def cmd_synth(args) -> int:
    resolution = _resolution(args.resolution)
    if args.coeffs and (args.kind or args.label):
        raise InvalidValue("give either --coeffs or --kind/--label, not both")
    if args.coeffs:
        dense = _dense_from_table(io.read_coeffs(args.coeffs), resolution)
    elif args.kind and args.label:
        kind, label = _kind(args.kind), _label(args.label)
        grid = raster(resolution)
        header = {"kind": kind.value, "label": f"{label.first}:{label.second}", "resolution": resolution}
        dense = io.DenseGrid(header, grid.x, grid.y, evaluate(kind, label, grid.x, grid.y))
    else:
        raise InvalidValue("synth needs --coeffs FILE or both --kind and --label")
    io.write_dense(args.output, dense)
    print(f"{len(dense)} raster points -> {args.output}")
    return EXIT_OK


def cmd_demo(args) -> int:
    spec = _spec(args)
    resolution = _resolution(args.resolution)
    try:
        model = GaussianModel(args.x0, args.y0, args.sigma)
    except ValueError as e:
        raise InvalidValue(str(e)) from None
    outdir = _out_dir(Path(args.outdir))

    field = sample_field(spec, model)
    table = forward(spec, field)
    dense = _dense_from_table(table, resolution)
    grid = raster(resolution)
    diff_values = model(grid.x, grid.y) - dense.value
    diff = io.DenseGrid(dict(dense.header, quantity="f-psi"), grid.x, grid.y, diff_values)
    max_abs, l2 = error_metrics(diff_values, grid)
    report = {
        "symmetry": spec.symmetry.value,
        "variant": spec.variant.value,
        "M": spec.M,
        "resolution": resolution,
        "max_abs": max_abs,
        "l2": l2,
    }

    stem = f"{spec.name.lower()}-M{spec.M}"
    paths = {
        "field": outdir / f"{stem}_field.csv",
        "coeffs": outdir / f"{stem}_coeffs.json",
        "dense": outdir / f"{stem}_dense.csv",
        "diff": outdir / f"{stem}_diff.csv",
        "error": outdir / f"{stem}_error.json",
    }
    io.write_field_csv(paths["field"], field)
    io.write_coeffs(paths["coeffs"], table)
    io.write_dense(paths["dense"], dense)
    io.write_dense(paths["diff"], diff)
    io.write_json(paths["error"], report)
    print(f"{spec.name} M={spec.M} gaussian(x0={model.x0}, y0={model.y0}, sigma={model.sigma})")
    print(f"max_abs={io.fmt(max_abs)} l2={io.fmt(l2)} resolution={resolution}")
    for name, path in paths.items():
        print(f"  {name}: {path}")
    return EXIT_OK


def cmd_ortho(args) -> int:
    kind = _kind(args.kind)
    if not kind.is_sine:
        raise InvalidValue("orthogonality audit covers sin- and sin+ only")
    if args.max_label < 1:
        raise InvalidValue("--max-label must be at least 1")
    order = args.order if args.order is not None else default_order()
    if order < 1:
        raise InvalidValue("quadrature order must be positive")
    labels = canonical_labels(kind, args.max_label)
    failures = 0
    for a in labels:
        for b in labels:
            expected = 0.0
            if a == b:
                expected = 0.5 if (kind is Kind.SIN_PLUS and a.first == a.second) else 0.25
            value = inner_product_F(kind, a, b, order)
            residual = abs(value - expected)
            ok = residual < args.tol
            failures += not ok
            print(f"{'PASS' if ok else 'FAIL'} {kind}{a} {kind}{b} "
                  f"value={io.fmt(value)} expected={expected} residual={residual:.3e}")
    print(f"{len(labels) ** 2 - failures}/{len(labels) ** 2} pairs within {args.tol:g} (order {order})")
    return EXIT_AUDIT_FAILED if failures else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="trig2d", description="2D (anti)symmetric sine/cosine functions and transforms.")
    sub = p.add_subparsers(dest="command", metavar="command")
    sub.required = True

    s = sub.add_parser("eval", help="evaluate a function at points")
    s.add_argument("--kind", required=True, help="sin-, sin+, cos- or cos+")
    s.add_argument("--label", required=True, help="k,l (half-integers as 2.5,0.5)")
    s.add_argument("--point", required=True, action="append", help="x,y (repeatable)")
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("fold", help="fold points into the fundamental triangle")
    s.add_argument("--kind", required=True)
    s.add_argument("--point", required=True, action="append")
    s.set_defaults(func=cmd_fold)

    s = sub.add_parser("decompose", help="decompose 4 * f1 * f2 into a sum of functions")
    s.add_argument("--left", required=True, help="kind:k,l, e.g. sin+:2,1")
    s.add_argument("--right", required=True)
    fmt = s.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="machine-readable output")
    fmt.add_argument("--slots", action="store_true", help="show all eight table terms, unmerged")
    s.set_defaults(func=cmd_decompose)

    def grid_args(s):
        s.add_argument("--symmetry", required=True, help="anti or sym")
        s.add_argument("--variant", required=True, help="I, II, III or IV")
        s.add_argument("--M", type=int, required=True)

    s = sub.add_parser("transform", help="coefficients from a sampled field CSV")
    grid_args(s)
    s.add_argument("--input", required=True, help="CSV with m,n,x,y,value")
    s.add_argument("--output", required=True, help="coefficients (.json or .csv)")
    s.set_defaults(func=cmd_transform)

    s = sub.add_parser("synth", help="evaluate an interpolant or a basis function on a dense raster")
    s.add_argument("--coeffs", help="coefficient file written by 'transform'")
    s.add_argument("--kind")
    s.add_argument("--label")
    s.add_argument("--resolution", type=int, default=200)
    s.add_argument("--output", required=True)
    s.set_defaults(func=cmd_synth)

    s = sub.add_parser("demo", help="interpolate the Gaussian model and report the error")
    grid_args(s)
    s.add_argument("--resolution", type=int, default=200)
    s.add_argument("--outdir", default=".")
    s.add_argument("--x0", type=float, default=DEMO_GAUSSIAN.x0)
    s.add_argument("--y0", type=float, default=DEMO_GAUSSIAN.y0)
    s.add_argument("--sigma", type=float, default=DEMO_GAUSSIAN.sigma)
    s.set_defaults(func=cmd_demo)

    s = sub.add_parser("ortho", help="audit continuous orthogonality by quadrature")
    s.add_argument("--kind", required=True, help="sin- or sin+")
    s.add_argument("--max-label", type=int, default=5)
    s.add_argument("--order", type=int, default=None, help="Gauss-Legendre points per axis "
                   "(default $TRIG2D_QUAD_ORDER or 40)")
    s.add_argument("--tol", type=float, default=1e-9)
    s.set_defaults(func=cmd_ortho)
    return p


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE
    try:
        return args.func(args)
    except InvalidValue as e:
        print(f"trig2d {args.command}: invalid value: {e}", file=sys.stderr)
        return EXIT_INVALID
    except io.FormatError as e:
        print(f"trig2d {args.command}: format error: {e}", file=sys.stderr)
        return EXIT_IO
    except OSError as e:
        print(f"trig2d {args.command}: file error: {e}", file=sys.stderr)
        return EXIT_IO
    except ValueError as e:
        # env var and other configuration problems
        print(f"trig2d {args.command}: invalid value: {e}", file=sys.stderr)
        return EXIT_INVALID


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
