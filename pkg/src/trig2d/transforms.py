"""Antisymmetric and symmetric discrete sine transforms of types I-IV.

A transform is fixed by a :class:`GridSpec`: the symmetry (``sin-`` basis
on the strict triangle ``m > n`` or ``sin+`` basis on ``m >= n``), the
variant (integer or half-shifted sample abscissas, integer or half-shifted
labels) and the grid density ``M``.

``forward`` maps samples on the triangular grid to coefficients and
``synthesize`` evaluates the resulting interpolant anywhere in the plane.
The interpolant reproduces the samples exactly.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Iterator, NamedTuple, Sequence

import numpy as np

from .functions import HalfInt, Kind, Label, evaluate

__all__ = [
    "Symmetry",
    "Variant",
    "GridSpec",
    "SampleEntry",
    "SampleSet",
    "SampledField",
    "CoefficientTable",
    "sample_points",
    "label_set",
    "sample_field",
    "forward",
    "synthesize",
    "roundtrip_residual",
    "boundary_check",
]


class Symmetry(Enum):
    ANTISYMMETRIC = "anti"
    SYMMETRIC = "sym"

    @property
    def kind(self) -> Kind:
        return Kind.SIN_MINUS if self is Symmetry.ANTISYMMETRIC else Kind.SIN_PLUS

    @property
    def strict(self) -> bool:
        return self is Symmetry.ANTISYMMETRIC

    @classmethod
    def parse(cls, text: str) -> "Symmetry":
        key = text.strip().lower()
        if key in ("anti", "antisymmetric", "a", "-", "amdst"):
            return cls.ANTISYMMETRIC
        if key in ("sym", "symmetric", "s", "+", "smdst"):
            return cls.SYMMETRIC
        raise ValueError(f"unknown symmetry {text!r}; expected 'anti' or 'sym'")


class Variant(Enum):
    I = "I"
    II = "II"
    III = "III"
    IV = "IV"

    @property
    def shifted_points(self) -> bool:
        return self in (Variant.II, Variant.IV)

    @property
    def shifted_labels(self) -> bool:
        return self in (Variant.III, Variant.IV)

    @classmethod
    def parse(cls, text: str) -> "Variant":
        key = text.strip().upper()
        aliases = {"1": "I", "2": "II", "3": "III", "4": "IV"}
        key = aliases.get(key, key)
        try:
            return cls(key)
        except ValueError:
            raise ValueError(f"unknown variant {text!r}; expected I, II, III or IV") from None


def _d(k: int, M: int) -> float:
    return 0.5 if k == M else 1.0


def _g(k, l) -> float:
    return 2.0 if k == l else 1.0


@dataclass(frozen=True)
class GridSpec:
    symmetry: Symmetry
    variant: Variant
    M: int

    def __post_init__(self):
        if isinstance(self.M, bool) or not isinstance(self.M, (int, np.integer)):
            raise TypeError(f"M must be an integer, got {self.M!r}")
        object.__setattr__(self, "M", int(self.M))
        lowest = 2 if self.symmetry is Symmetry.ANTISYMMETRIC else 1
        if self.M < lowest:
            raise ValueError(f"M must be >= {lowest} for {self.symmetry.value} transforms, got {self.M}")

    @property
    def kind(self) -> Kind:
        return self.symmetry.kind

    @property
    def name(self) -> str:
        prefix = "AMDST" if self.symmetry is Symmetry.ANTISYMMETRIC else "SMDST"
        return f"{prefix}-{self.variant.value}"

    def sample_range(self) -> range:
        M = self.M
        return {
            Variant.I: range(1, M),
            Variant.II: range(0, M),
            Variant.III: range(1, M + 1),
            Variant.IV: range(0, M),
        }[self.variant]

    def label_range(self) -> range:
        """Integer part of the labels; type III/IV labels are these plus 1/2."""
        M = self.M
        return {
            Variant.I: range(1, M),
            Variant.II: range(1, M + 1),
            Variant.III: range(0, M),
            Variant.IV: range(0, M),
        }[self.variant]

    def abscissa(self, m: int) -> float:
        # one division from exact integers keeps grids bit-reproducible
        if self.variant.shifted_points:
            return (2 * m + 1) / (2 * self.M)
        return m / self.M

    def _keep(self, a: int, b: int) -> bool:
        return a > b if self.symmetry.strict else a >= b

    def index_pairs(self) -> list[tuple[int, int]]:
        r = self.sample_range()
        return [(m, n) for m in r for n in r if self._keep(m, n)]

    def label_pairs(self) -> list[tuple[int, int]]:
        r = self.label_range()
        return [(k, l) for k in r for l in r if self._keep(k, l)]

    def sample_weight(self, m: int, n: int) -> float:
        w = 1.0
        if self.variant is Variant.III:
            w *= _d(m, self.M) * _d(n, self.M)
        if self.symmetry is Symmetry.SYMMETRIC:
            w /= _g(m, n)
        return w

    def label_weight(self, k: int, l: int) -> float:
        w = 4.0 / (self.M * self.M)
        if self.variant is Variant.II:
            # also applied to the symmetric type II; without it the k = M
            # coefficients are off by 2 (4 at (M, M)) and interpolation is not exact
            w *= _d(k, self.M) * _d(l, self.M)
        if self.symmetry is Symmetry.SYMMETRIC:
            w /= _g(k, l)
        return w

    def to_label(self, k: int, l: int) -> Label:
        if self.variant.shifted_labels:
            return Label(HalfInt(2 * k + 1), HalfInt(2 * l + 1))
        return Label(HalfInt(2 * k), HalfInt(2 * l))


class SampleEntry(NamedTuple):
    m: int
    n: int
    x: float
    y: float
    weight: float


@dataclass(frozen=True)
class SampleSet:
    """Ordered triangular grid of a transform (``m`` outer, ``n`` inner)."""

    spec: GridSpec
    m: np.ndarray
    n: np.ndarray
    x: np.ndarray
    y: np.ndarray
    weight: np.ndarray

    def __len__(self):
        return len(self.m)

    def __iter__(self) -> Iterator[SampleEntry]:
        for row in zip(self.m, self.n, self.x, self.y, self.weight):
            yield SampleEntry(int(row[0]), int(row[1]), float(row[2]), float(row[3]), float(row[4]))

    @property
    def entries(self) -> list[SampleEntry]:
        return list(self)


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@lru_cache(maxsize=64)
def sample_points(spec: GridSpec) -> SampleSet:
    pairs = spec.index_pairs()
    m = np.array([p[0] for p in pairs], dtype=int)
    n = np.array([p[1] for p in pairs], dtype=int)
    x = np.array([spec.abscissa(a) for a in m], dtype=float)
    y = np.array([spec.abscissa(b) for b in n], dtype=float)
    w = np.array([spec.sample_weight(a, b) for a, b in pairs], dtype=float)
    return SampleSet(spec, *(_frozen(a) for a in (m, n, x, y, w)))


@lru_cache(maxsize=64)
def label_set(spec: GridSpec) -> tuple[Label, ...]:
    """Labels of the basis functions, row-major in ``k`` then ``l``."""
    return tuple(spec.to_label(k, l) for k, l in spec.label_pairs())


@lru_cache(maxsize=64)
def _label_weights(spec: GridSpec) -> np.ndarray:
    return _frozen(np.array([spec.label_weight(k, l) for k, l in spec.label_pairs()], dtype=float))


@lru_cache(maxsize=64)
def _basis_matrix(spec: GridSpec) -> np.ndarray:
    """``B[j, i]`` = basis function ``i`` at sample ``j``."""
    samples = sample_points(spec)
    labels = label_set(spec)
    B = np.empty((len(samples), len(labels)))
    for i, label in enumerate(labels):
        B[:, i] = evaluate(spec.kind, label, samples.x, samples.y)
    return _frozen(B)


@dataclass(frozen=True)
class SampledField:
    spec: GridSpec
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        if values.ndim != 1:
            raise ValueError("field values must be one-dimensional")
        expected = len(sample_points(self.spec))
        if len(values) != expected:
            raise ValueError(f"field has {len(values)} values, {self.spec.name} M={self.spec.M} needs {expected}")
        if not np.all(np.isfinite(values)):
            raise ValueError("field values must be finite")
        object.__setattr__(self, "values", _frozen(values))


def sample_field(spec: GridSpec, f) -> SampledField:
    """Sample a vectorized callable ``f(x, y)`` on the grid of ``spec``."""
    samples = sample_points(spec)
    values = np.broadcast_to(np.asarray(f(samples.x, samples.y), dtype=float), samples.x.shape)
    return SampledField(spec, values)


@dataclass(frozen=True)
class CoefficientTable:
    spec: GridSpec
    coeffs: np.ndarray
    labels: tuple[Label, ...] = field(default=())

    def __post_init__(self):
        labels = label_set(self.spec)
        if self.labels and tuple(self.labels) != labels:
            raise ValueError("labels do not match the label set of the grid spec")
        object.__setattr__(self, "labels", labels)
        coeffs = np.array(self.coeffs, dtype=float)
        if coeffs.shape != (len(labels),):
            raise ValueError(f"expected {len(labels)} coefficients, got shape {coeffs.shape}")
        object.__setattr__(self, "coeffs", _frozen(coeffs))

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, label) -> float:
        if not isinstance(label, Label):
            label = Label(*label)
        try:
            return float(self.coeffs[self.labels.index(label)])
        except ValueError:
            raise KeyError(f"{label} is not in the label set of {self.spec.name}") from None

    def __call__(self, x, y):
        return synthesize(self, x, y)

    def __eq__(self, other):
        if not isinstance(other, CoefficientTable):
            return NotImplemented
        return self.spec == other.spec and np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self):
        return hash((self.spec, self.coeffs.tobytes()))


def forward(spec: GridSpec, field: SampledField | Sequence[float]) -> CoefficientTable:
    """Expansion coefficients of the interpolant through the sampled values."""
    if not isinstance(field, SampledField):
        field = SampledField(spec, field)
    if field.spec != spec:
        raise ValueError(f"field belongs to {field.spec}, not {spec}")
    samples = sample_points(spec)
    weighted = samples.weight * field.values
    coeffs = _label_weights(spec) * (_basis_matrix(spec).T @ weighted)
    return CoefficientTable(spec, coeffs)


def synthesize(table: CoefficientTable, x, y):
    """Evaluate the interpolant ``sum c_kl f_kl(x, y)``."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    out = np.zeros(np.broadcast(x, y).shape)
    kind = table.spec.kind
    for c, label in zip(table.coeffs, table.labels):
        if c != 0.0:
            out += c * evaluate(kind, label, x, y)
    return out[()]


def roundtrip_residual(spec: GridSpec, field: SampledField | Sequence[float]) -> float:
    if not isinstance(field, SampledField):
        field = SampledField(spec, field)
    samples = sample_points(spec)
    if len(samples) == 0:
        return 0.0
    table = forward(spec, field)
    return float(np.max(np.abs(synthesize(table, samples.x, samples.y) - field.values)))


def boundary_check(table: CoefficientTable, points: int = 1000) -> dict[str, float]:
    """Max ``|psi|`` on each edge of the triangle (0,0), (1,0), (1,1).

    ``points`` samples are spread over the three edges.
    """
    per_edge = -(-points // 3)
    t = np.linspace(0.0, 1.0, per_edge)
    edges = {
        "y=0": (t, np.zeros_like(t)),
        "x=1": (np.ones_like(t), t),
        "x=y": (t, t),
    }
    return {name: float(np.max(np.abs(synthesize(table, ex, ey)))) for name, (ex, ey) in edges.items()}
