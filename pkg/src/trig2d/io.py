"""CSV and JSON formats for sampled fields, coefficient tables and dense grids.

Reals are written with 17 significant digits (CSV) or shortest round-trip
repr (JSON), so reading back a written file reproduces every double.
Writes go through a temporary file and an atomic rename.
"""
from __future__ import annotations

import csv
import json
import math
import os
import tempfile
from dataclasses import dataclass, field
from pathlib import Path
from typing import Union

import numpy as np

from .functions import HalfInt, Label
from .transforms import (
    CoefficientTable,
    GridSpec,
    SampledField,
    Symmetry,
    Variant,
    label_set,
    sample_points,
)

__all__ = [
    "FormatError",
    "fmt",
    "write_field_csv",
    "read_field_csv",
    "write_coeffs",
    "read_coeffs",
    "DenseGrid",
    "write_dense",
    "read_dense",
    "write_json",
]

PathLike = Union[str, os.PathLike]


class FormatError(ValueError):
    """A file does not match the expected layout or grid."""


def fmt(v: float) -> str:
    return format(float(v), ".17g")


def _atomic_write(path: PathLike, text: str):
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_json(path: PathLike, doc) -> None:
    _atomic_write(path, json.dumps(doc, indent=2) + "\n")


def _spec_header(spec: GridSpec) -> str:
    return f"# symmetry={spec.symmetry.value},variant={spec.variant.value},M={spec.M}"


def _parse_header(line: str) -> dict[str, str]:
    if not line.startswith("#"):
        raise FormatError("missing '# key=value' header line")
    out = {}
    for item in line[1:].strip().split(","):
        if not item:
            continue
        key, sep, value = item.partition("=")
        if not sep:
            raise FormatError(f"malformed header item {item!r}")
        out[key.strip()] = value.strip()
    return out


def _spec_from_header(header: dict[str, str]) -> GridSpec:
    try:
        return GridSpec(Symmetry.parse(header["symmetry"]), Variant.parse(header["variant"]), int(header["M"]))
    except KeyError as e:
        raise FormatError(f"header is missing {e.args[0]!r}") from None
    except ValueError as e:
        raise FormatError(f"bad header: {e}") from None


def _float(text: str, what: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise FormatError(f"{what}: {text!r} is not a number") from None
    if not math.isfinite(v):
        raise FormatError(f"{what}: non-finite value {text!r}")
    return v


def write_field_csv(path: PathLike, values: SampledField) -> None:
    samples = sample_points(values.spec)
    lines = ["m,n,x,y,value"]
    for e, v in zip(samples, values.values):
        lines.append(f"{e.m},{e.n},{fmt(e.x)},{fmt(e.y)},{fmt(v)}")
    _atomic_write(path, "\n".join(lines) + "\n")


def read_field_csv(path: PathLike, spec: GridSpec) -> SampledField:
    """Read ``m,n,x,y,value`` rows and check them against the grid of ``spec``."""
    with open(path, encoding="utf-8", newline="") as fh:
        rows = [r for r in csv.reader(fh) if r and not r[0].startswith("#")]
    if not rows or [c.strip() for c in rows[0]] != ["m", "n", "x", "y", "value"]:
        raise FormatError(f"{path}: expected header 'm,n,x,y,value'")
    rows = rows[1:]
    samples = sample_points(spec)
    if len(rows) != len(samples):
        raise FormatError(f"{path}: row count {len(rows)} does not match {len(samples)} samples "
                          f"of {spec.name} M={spec.M}")
    values = np.empty(len(rows))
    for i, (row, e) in enumerate(zip(rows, samples)):
        if len(row) != 5:
            raise FormatError(f"{path}: row {i + 2} has {len(row)} columns, expected 5")
        try:
            m, n = int(row[0]), int(row[1])
        except ValueError:
            raise FormatError(f"{path}: row {i + 2} has non-integer indices") from None
        if (m, n) != (e.m, e.n):
            raise FormatError(f"{path}: row {i + 2} indices ({m},{n}) do not match grid point ({e.m},{e.n})")
        x, y = _float(row[2], f"row {i + 2} x"), _float(row[3], f"row {i + 2} y")
        if abs(x - e.x) > 1e-12 or abs(y - e.y) > 1e-12:
            raise FormatError(f"{path}: row {i + 2} coordinates ({x},{y}) do not match grid point ({e.x},{e.y})")
        values[i] = _float(row[4], f"row {i + 2} value")
    return SampledField(spec, values)


def coeffs_to_dict(table: CoefficientTable) -> dict:
    spec = table.spec
    return {
        "symmetry": spec.symmetry.value,
        "variant": spec.variant.value,
        "M": spec.M,
        "entries": [
            {"k2": lab.first.twice, "l2": lab.second.twice, "c": float(c)}
            for lab, c in zip(table.labels, table.coeffs)
        ],
    }


def write_coeffs(path: PathLike, table: CoefficientTable) -> None:
    """JSON when ``path`` ends in ``.json``, otherwise ``k,l,c`` CSV."""
    if str(path).lower().endswith(".json"):
        write_json(path, coeffs_to_dict(table))
        return
    lines = [_spec_header(table.spec), "k,l,c"]
    for lab, c in zip(table.labels, table.coeffs):
        lines.append(f"{lab.first},{lab.second},{fmt(c)}")
    _atomic_write(path, "\n".join(lines) + "\n")


def _table_from_entries(spec: GridSpec, entries: list[tuple[Label, float]], path) -> CoefficientTable:
    labels = label_set(spec)
    if len(entries) != len(labels):
        raise FormatError(f"{path}: row count {len(entries)} does not match {len(labels)} labels "
                          f"of {spec.name} M={spec.M}")
    lookup = {}
    for lab, c in entries:
        if lab in lookup:
            raise FormatError(f"{path}: duplicate label {lab}")
        lookup[lab] = c
    missing = [lab for lab in labels if lab not in lookup]
    if missing:
        raise FormatError(f"{path}: label {missing[0]} missing for {spec.name} M={spec.M}")
    return CoefficientTable(spec, [lookup[lab] for lab in labels])


def read_coeffs(path: PathLike) -> CoefficientTable:
    text = Path(path).read_text(encoding="utf-8")
    if str(path).lower().endswith(".json"):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as e:
            raise FormatError(f"{path}: invalid JSON ({e})") from None
        spec = _spec_from_header({k: str(doc.get(k, "")) for k in ("symmetry", "variant", "M") if k in doc})
        entries = []
        for item in doc.get("entries", []):
            try:
                lab = Label(HalfInt(int(item["k2"])), HalfInt(int(item["l2"])))
                c = item["c"]
            except (KeyError, TypeError, ValueError):
                raise FormatError(f"{path}: malformed entry {item!r}") from None
            if not isinstance(c, (int, float)) or not math.isfinite(c):
                raise FormatError(f"{path}: non-finite coefficient in {item!r}")
            entries.append((lab, float(c)))
        return _table_from_entries(spec, entries, path)

    lines = text.splitlines()
    if not lines:
        raise FormatError(f"{path}: empty file")
    spec = _spec_from_header(_parse_header(lines[0]))
    rows = list(csv.reader(lines[1:]))
    if not rows or [c.strip() for c in rows[0]] != ["k", "l", "c"]:
        raise FormatError(f"{path}: expected column header 'k,l,c'")
    entries = []
    for i, row in enumerate(rows[1:]):
        if not row:
            continue
        if len(row) != 3:
            raise FormatError(f"{path}: row {i + 3} has {len(row)} columns, expected 3")
        try:
            lab = Label(row[0], row[1])
        except ValueError as e:
            raise FormatError(f"{path}: row {i + 3}: {e}") from None
        entries.append((lab, _float(row[2], f"row {i + 3} c")))
    return _table_from_entries(spec, entries, path)


@dataclass(frozen=True)
class DenseGrid:
    """Values on a triangular raster, with a free-form ``key=value`` header."""

    header: dict
    x: np.ndarray
    y: np.ndarray
    value: np.ndarray = field(repr=False)

    def __post_init__(self):
        if not (len(self.x) == len(self.y) == len(self.value)):
            raise ValueError("x, y and value must have the same length")
        if not np.all(np.isfinite(self.value)):
            raise ValueError("dense grid values must be finite")

    def __len__(self):
        return len(self.x)


def write_dense(path: PathLike, grid: DenseGrid) -> None:
    head = ",".join(f"{k}={v}" for k, v in grid.header.items())
    lines = [f"# {head}", "x,y,value"]
    lines.extend(f"{fmt(a)},{fmt(b)},{fmt(v)}" for a, b, v in zip(grid.x, grid.y, grid.value))
    _atomic_write(path, "\n".join(lines) + "\n")


def read_dense(path: PathLike) -> DenseGrid:
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if len(lines) < 2:
        raise FormatError(f"{path}: too short for a dense grid file")
    header = _parse_header(lines[0])
    if lines[1].strip() != "x,y,value":
        raise FormatError(f"{path}: expected column header 'x,y,value'")
    data = [row.split(",") for row in lines[2:] if row]
    if any(len(r) != 3 for r in data):
        raise FormatError(f"{path}: every row needs 3 columns")
    arr = np.array([[_float(v, "dense value") for v in r] for r in data]).reshape(-1, 3)
    if "resolution" in header:
        res = int(header["resolution"])
        if len(arr) != res * (res + 1) // 2:
            raise FormatError(f"{path}: row count {len(arr)} does not match resolution {res}")
    return DenseGrid(header, arr[:, 0], arr[:, 1], arr[:, 2])
