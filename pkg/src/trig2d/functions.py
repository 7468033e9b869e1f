"""Two-variable (anti)symmetric sine and cosine functions.

Every function is built from a pair of real frequencies ``(lam, mu)`` and a
pair of arguments ``(x, y)``::

    sin-(x, y) = sin(pi lam x) sin(pi mu y) - sin(pi mu x) sin(pi lam y)
    sin+(x, y) = sin(pi lam x) sin(pi mu y) + sin(pi mu x) sin(pi lam y)
    cos-(x, y) = cos(pi lam x) cos(pi mu y) - cos(pi mu x) cos(pi lam y)
    cos+(x, y) = cos(pi lam x) cos(pi mu y) + cos(pi mu x) cos(pi lam y)

Frequencies are stored as exact half-integers so that the shifted labels
``(k + 1/2, l + 1/2)`` used by the type III and IV transforms never drift.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import NamedTuple, Union

import numpy as np

__all__ = [
    "HalfInt",
    "Label",
    "Kind",
    "Point",
    "SignedLabel",
    "as_label",
    "evaluate",
    "canonicalize",
    "is_canonical",
    "fold_point",
    "gradient",
    "mixed_derivative",
    "mixed_derivative_fd",
    "laplacian_eigenvalue",
    "laplacian_fd",
]


@dataclass(frozen=True, order=True)
class HalfInt:
    """An exact integer or half-integer, stored as twice its value."""

    twice: int

    def __post_init__(self):
        if isinstance(self.twice, bool) or not isinstance(self.twice, (int, np.integer)):
            raise TypeError(f"HalfInt stores an integer, got {self.twice!r}")
        object.__setattr__(self, "twice", int(self.twice))

    @classmethod
    def of(cls, value: Union["HalfInt", int, float, str, Fraction]) -> "HalfInt":
        """Coerce ``value`` to a HalfInt, rejecting anything not a multiple of 1/2."""
        if isinstance(value, HalfInt):
            return value
        if isinstance(value, str):
            try:
                value = Fraction(value.strip())
            except ValueError:
                raise ValueError(f"not a number: {value!r}") from None
        if isinstance(value, (float, np.floating)) and not math.isfinite(value):
            raise ValueError(f"label component must be finite, got {value!r}")
        doubled = Fraction(value) * 2
        if doubled.denominator != 1:
            raise ValueError(f"{value!r} is not an integer or half-integer")
        return cls(int(doubled))

    @property
    def value(self) -> float:
        return self.twice / 2

    @property
    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def as_fraction(self) -> Fraction:
        return Fraction(self.twice, 2)

    def __float__(self):
        return self.value

    def __neg__(self):
        return HalfInt(-self.twice)

    def __abs__(self):
        return HalfInt(abs(self.twice))

    def __add__(self, other):
        return HalfInt(self.twice + HalfInt.of(other).twice)

    def __sub__(self, other):
        return HalfInt(self.twice - HalfInt.of(other).twice)

    def __str__(self):
        if self.is_integer:
            return str(self.twice // 2)
        return f"{self.twice / 2:.1f}"

    def __repr__(self):
        return f"HalfInt({self})"


@dataclass(frozen=True)
class Label:
    """Ordered pair of frequencies ``(lam, mu)``; components coerced to HalfInt."""

    first: HalfInt
    second: HalfInt

    def __post_init__(self):
        object.__setattr__(self, "first", HalfInt.of(self.first))
        object.__setattr__(self, "second", HalfInt.of(self.second))

    @classmethod
    def parse(cls, text: str) -> "Label":
        """Parse ``"k,l"`` (e.g. ``"2,1"`` or ``"2.5,0.5"``)."""
        parts = text.replace("(", "").replace(")", "").split(",")
        if len(parts) != 2:
            raise ValueError(f"malformed label {text!r}; expected 'k,l'")
        return cls(HalfInt.of(parts[0]), HalfInt.of(parts[1]))

    @property
    def values(self) -> tuple[float, float]:
        return self.first.value, self.second.value

    @property
    def is_integer(self) -> bool:
        return self.first.is_integer and self.second.is_integer

    def swapped(self) -> "Label":
        return Label(self.second, self.first)

    def __iter__(self):
        return iter((self.first, self.second))

    def __str__(self):
        return f"({self.first},{self.second})"


LabelLike = Union[Label, tuple]


def as_label(obj: LabelLike) -> Label:
    if isinstance(obj, Label):
        return obj
    if isinstance(obj, str):
        return Label.parse(obj)
    first, second = obj
    return Label(first, second)


class Kind(Enum):
    SIN_MINUS = "sin-"
    SIN_PLUS = "sin+"
    COS_MINUS = "cos-"
    COS_PLUS = "cos+"

    @property
    def is_sine(self) -> bool:
        return self in (Kind.SIN_MINUS, Kind.SIN_PLUS)

    @property
    def sign(self) -> int:
        """+1 for the symmetric families, -1 for the antisymmetric ones."""
        return 1 if self in (Kind.SIN_PLUS, Kind.COS_PLUS) else -1

    @property
    def dual(self) -> "Kind":
        """Same +/- family with sine and cosine exchanged."""
        return {
            Kind.SIN_MINUS: Kind.COS_MINUS,
            Kind.SIN_PLUS: Kind.COS_PLUS,
            Kind.COS_MINUS: Kind.SIN_MINUS,
            Kind.COS_PLUS: Kind.SIN_PLUS,
        }[self]

    @classmethod
    def parse(cls, text: str) -> "Kind":
        key = text.strip().lower()
        for kind in cls:
            if kind.value == key:
                return kind
        raise ValueError(f"unknown kind {text!r}; expected one of sin-, sin+, cos-, cos+")

    def __str__(self):
        return self.value


class Point(NamedTuple):
    x: float
    y: float


@dataclass(frozen=True)
class SignedLabel:
    """Result of canonicalization: ``raw == sign * canonical`` as functions.

    ``sign == 0`` means the raw function vanishes identically.
    """

    sign: int
    kind: Kind
    label: Label

    @property
    def is_zero(self) -> bool:
        return self.sign == 0


def _check_finite(*arrays):
    for a in arrays:
        if not np.all(np.isfinite(a)):
            raise ValueError("points must be finite")


def evaluate(kind: Kind, label: LabelLike, x, y):
    """Evaluate one function of family ``kind`` at ``(x, y)``.

    ``x`` and ``y`` may be scalars or broadcastable arrays. The raw
    definition is used, so non-canonical labels are allowed.
    """
    lam, mu = as_label(label).values
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    _check_finite(x, y)
    trig = np.sin if kind.is_sine else np.cos
    out = (trig(np.pi * lam * x) * trig(np.pi * mu * y)
           + kind.sign * trig(np.pi * mu * x) * trig(np.pi * lam * y))
    return out[()] if out.ndim == 0 else out


def is_canonical(kind: Kind, label: LabelLike) -> bool:
    a, b = as_label(label)
    lower = HalfInt(0)
    if kind.is_sine:
        return (a > b if kind.sign < 0 else a >= b) and b > lower
    return (a > b if kind.sign < 0 else a >= b) and b >= lower


def canonicalize(kind: Kind, raw: LabelLike) -> SignedLabel:
    """Reduce ``raw`` to the canonical subscript domain of ``kind``.

    Canonical domains: sin- has lam > mu > 0, sin+ has lam >= mu > 0,
    cos- has lam > mu >= 0 and cos+ has lam >= mu >= 0.
    """
    raw = as_label(raw)
    a, b = raw
    sign = 1
    if kind.is_sine:
        if a.twice == 0 or b.twice == 0:
            return SignedLabel(0, kind, raw)
        # sine is odd in each frequency
        if a.twice < 0:
            sign, a = -sign, -a
        if b.twice < 0:
            sign, b = -sign, -b
    else:
        a, b = abs(a), abs(b)
    if a < b:
        a, b = b, a
        sign *= kind.sign
    if a == b and kind.sign < 0:
        return SignedLabel(0, kind, raw)
    return SignedLabel(sign, kind, Label(a, b))


def fold_point(kind: Kind, x: float, y: float, half_integer: bool = False) -> tuple[int, Point]:
    """Map ``(x, y)`` into the triangle (0,0), (1,0), (1,1).

    Returns ``(sign, q)`` such that ``f(x, y) == sign * f(q)`` for every
    integer-labelled function ``f`` of family ``kind``.  Half-integer labels
    are not 2-periodic, so ``half_integer=True`` is rejected.
    """
    if half_integer:
        raise ValueError("folding into the fundamental domain needs integer labels")
    if not (math.isfinite(x) and math.isfinite(y)):
        raise ValueError("points must be finite")
    sign = 1
    # period 2 in each argument, remainder lands in [-1, 1]
    x = math.remainder(x, 2.0)
    y = math.remainder(y, 2.0)
    if x < 0:
        x = -x
        if kind.is_sine:
            sign = -sign
    if y < 0:
        y = -y
        if kind.is_sine:
            sign = -sign
    if x < y:
        x, y = y, x
        sign *= kind.sign
    return sign, Point(x, y)


def gradient(kind: Kind, label: LabelLike, x, y):
    """Analytic ``(df/dx, df/dy)``."""
    lam, mu = as_label(label).values
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    _check_finite(x, y)
    if kind.is_sine:
        f, df = np.sin, np.cos
    else:
        f, df = np.cos, (lambda t: -np.sin(t))
    s = kind.sign
    a, b = np.pi * lam, np.pi * mu
    gx = a * df(a * x) * f(b * y) + s * b * df(b * x) * f(a * y)
    gy = b * f(a * x) * df(b * y) + s * a * f(b * x) * df(a * y)
    return gx[()], gy[()]


def mixed_derivative(kind: Kind, label: LabelLike, x, y):
    """Analytic d2f/dxdy, equal to pi^2 lam mu times the dual-family function."""
    label = as_label(label)
    lam, mu = label.values
    return np.pi ** 2 * lam * mu * evaluate(kind.dual, label, x, y)


def mixed_derivative_fd(kind: Kind, label: LabelLike, x, y, h: float = 1e-4):
    """Central-difference d2f/dxdy with step ``h``."""
    if h <= 0:
        raise ValueError("h must be positive")

    def f(u, v):
        return evaluate(kind, label, u, v)

    return (f(x + h, y + h) - f(x + h, y - h) - f(x - h, y + h) + f(x - h, y - h)) / (4 * h * h)


def laplacian_eigenvalue(label: LabelLike) -> float:
    lam, mu = as_label(label).values
    return -np.pi ** 2 * (lam * lam + mu * mu)


def laplacian_fd(kind: Kind, label: LabelLike, x, y, h: float = 1e-4):
    """Five-point central-difference Laplacian with step ``h``."""
    if h <= 0:
        raise ValueError("h must be positive")

    def f(u, v):
        return evaluate(kind, label, u, v)

    centre = f(x, y)
    return (f(x + h, y) + f(x - h, y) + f(x, y + h) + f(x, y - h) - 4 * centre) / (h * h)
