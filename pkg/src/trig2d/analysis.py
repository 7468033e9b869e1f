"""Quadrature over the fundamental triangle and interpolation error metrics.

The triangle ``F`` has vertices (0,0), (1,0), (1,1).  Integrals over it use
an iterated Gauss-Legendre rule: outer variable ``x`` on [0,1], inner
variable ``y`` on [0,x].
"""
from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass
from functools import lru_cache
from typing import Callable, Optional

import numpy as np

from .functions import Kind, LabelLike, as_label, evaluate
from .transforms import GridSpec, forward, sample_field, synthesize

__all__ = [
    "DEFAULT_ORDER",
    "QuadratureRule",
    "gauss_legendre",
    "default_order",
    "integrate_F",
    "inner_product_F",
    "expansion_coefficient",
    "GaussianModel",
    "DEMO_GAUSSIAN",
    "gaussian",
    "Raster",
    "raster",
    "ErrorReport",
    "interpolation_error",
]

DEFAULT_ORDER = 40
ORDER_ENV = "TRIG2D_QUAD_ORDER"


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss-Legendre nodes and weights on [0, 1]."""

    order: int
    nodes: np.ndarray
    weights: np.ndarray


@lru_cache(maxsize=32)
def gauss_legendre(order: int) -> QuadratureRule:
    if order < 1:
        raise ValueError("quadrature order must be positive")
    t, w = np.polynomial.legendre.leggauss(order)
    nodes = 0.5 * (t + 1.0)
    weights = 0.5 * w
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return QuadratureRule(order, nodes, weights)


def default_order() -> int:
    """Quadrature order from ``$TRIG2D_QUAD_ORDER``, else 40."""
    raw = os.environ.get(ORDER_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_ORDER
    try:
        order = int(raw)
    except ValueError:
        raise ValueError(f"{ORDER_ENV} must be a positive integer, got {raw!r}") from None
    if order < 1:
        raise ValueError(f"{ORDER_ENV} must be a positive integer, got {raw!r}")
    return order


@lru_cache(maxsize=32)
def _triangle_nodes(order: int):
    rule = gauss_legendre(order)
    x = np.repeat(rule.nodes, order)
    t = np.tile(rule.nodes, order)
    w = np.repeat(rule.weights, order) * np.tile(rule.weights, order) * x
    return x, x * t, w


def integrate_F(f: Callable, order: int = DEFAULT_ORDER) -> float:
    """Integrate a vectorized ``f(x, y)`` over the fundamental triangle."""
    x, y, w = _triangle_nodes(order)
    return float(np.dot(w, np.broadcast_to(f(x, y), x.shape)))


def inner_product_F(kind: Kind, label1: LabelLike, label2: LabelLike, order: int = DEFAULT_ORDER) -> float:
    x, y, w = _triangle_nodes(order)
    return float(np.dot(w, evaluate(kind, label1, x, y) * evaluate(kind, label2, x, y)))


def expansion_coefficient(kind: Kind, label: LabelLike, f: Callable, order: int = DEFAULT_ORDER) -> float:
    """Continuous expansion coefficient of ``f`` along one sine basis function.

    ``4 * integral(f * sin-)`` for the antisymmetric family and
    ``4 / G * integral(f * sin+)`` for the symmetric one, where ``G`` is 2
    on the diagonal ``lam == mu`` and 1 elsewhere.
    """
    if not kind.is_sine:
        raise ValueError("expansion coefficients are defined for the sine families")
    label = as_label(label)
    x, y, w = _triangle_nodes(order)
    c = 4.0 * float(np.dot(w, np.broadcast_to(f(x, y), x.shape) * evaluate(kind, label, x, y)))
    if kind is Kind.SIN_PLUS and label.first == label.second:
        c /= 2.0
    return c


@dataclass(frozen=True)
class GaussianModel:
    x0: float
    y0: float
    sigma: float

    def __post_init__(self):
        if not self.sigma > 0:
            raise ValueError(f"sigma must be positive, got {self.sigma}")

    def __call__(self, x, y):
        return gaussian(self, x, y)


DEMO_GAUSSIAN = GaussianModel(0.707, 0.293, 0.079)


def gaussian(model: GaussianModel, x, y):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    r2 = (x - model.x0) ** 2 + (y - model.y0) ** 2
    return np.exp(-r2 / (2.0 * model.sigma ** 2))[()]


@dataclass(frozen=True)
class Raster:
    """Uniform nodes ``(i, j) / (resolution - 1)`` with ``i >= j``.

    Each node stands for one cell of a ``resolution x resolution`` split of
    the unit square; ``weight`` is that cell's area, halved on the diagonal,
    so the weights sum to 1/2, the area of the triangle.
    """

    resolution: int
    x: np.ndarray
    y: np.ndarray
    weight: np.ndarray

    def __len__(self):
        return len(self.x)


@lru_cache(maxsize=8)
def raster(resolution: int) -> Raster:
    if resolution < 2:
        raise ValueError("raster resolution must be at least 2")
    i, j = np.tril_indices(resolution)
    x = i / (resolution - 1)
    y = j / (resolution - 1)
    w = np.full(x.shape, 1.0 / (resolution * resolution))
    w[i == j] *= 0.5
    for a in (x, y, w):
        a.setflags(write=False)
    return Raster(resolution, x, y, w)


@dataclass(frozen=True)
class ErrorReport:
    max_abs: float
    l2: float
    grid_resolution: int
    symmetry: Optional[str] = None
    variant: Optional[str] = None
    M: Optional[int] = None

    def to_dict(self) -> dict:
        d = asdict(self)
        return {
            "symmetry": d["symmetry"],
            "variant": d["variant"],
            "M": d["M"],
            "resolution": d["grid_resolution"],
            "max_abs": d["max_abs"],
            "l2": d["l2"],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, d: dict) -> "ErrorReport":
        return cls(float(d["max_abs"]), float(d["l2"]), int(d["resolution"]),
                   d.get("symmetry"), d.get("variant"), d.get("M"))


def error_metrics(difference: np.ndarray, grid: Raster) -> tuple[float, float]:
    diff = np.asarray(difference, dtype=float)
    max_abs = float(np.max(np.abs(diff))) if diff.size else 0.0
    l2 = float(np.sqrt(np.dot(grid.weight, diff * diff)))
    return max_abs, l2


def interpolation_error(model: Callable, spec: GridSpec, resolution: int = 200) -> ErrorReport:
    """Sample ``model`` on the grid of ``spec``, interpolate and compare on a raster of F."""
    if resolution < 32:
        raise ValueError("resolution must be at least 32")
    table = forward(spec, sample_field(spec, model))
    grid = raster(resolution)
    diff = np.broadcast_to(model(grid.x, grid.y), grid.x.shape) - synthesize(table, grid.x, grid.y)
    max_abs, l2 = error_metrics(diff, grid)
    return ErrorReport(max_abs, l2, resolution, spec.symmetry.value, spec.variant.value, spec.M)
