"""Extension operators carrying a function on a triangle out to a square.

Each operator takes a scalar callable ``f(x, y)`` and returns a new
scalar callable on a larger domain:

``antisymmetric(f)``  triangle ``x > y`` of [0,1]^2  ->  [0,1]^2, odd under x <-> y
``symmetric(f)``      triangle ``x >= y`` of [0,1]^2 ->  [0,1]^2, even under x <-> y
``mirror(f)``         [0,1]^2 -> [0,2]^2, reflected about x = 1 and y = 1
``odd(f, L)``         [0,L]^2 -> [-L,L]^2, odd in each coordinate

Calling an extension outside its domain raises ``ValueError``.
"""
from __future__ import annotations

import math
from typing import Callable

__all__ = ["ExtensionKind", "odd", "mirror", "antisymmetric", "symmetric", "extend"]

Func = Callable[[float, float], float]


class ExtensionKind:
    ODD = "E"
    MIRROR = "R"
    ANTISYMMETRIC = "A"
    SYMMETRIC = "S"


def _require(cond: bool, x: float, y: float, domain: str):
    if not cond or not (math.isfinite(x) and math.isfinite(y)):
        raise ValueError(f"({x}, {y}) lies outside {domain}")


def odd(f: Func, L: float = 1) -> Func:
    """Odd extension from [0,L]^2 to [-L,L]^2.

    The two half-lines ``y = 0`` and ``y = L`` with ``x >= 0`` fall under
    none of the four cases and are set to 0.
    """

    def ext(x: float, y: float) -> float:
        _require(-L <= x <= L and -L <= y <= L, x, y, f"[-{L},{L}]^2")
        if x >= 0 and 0 < y < L:
            return f(x, y)
        if x < 0 and 0 <= y <= L:
            return -f(-x, y)
        if x >= 0 and y < 0:
            return -f(x, -y)
        if x < 0 and y < 0:
            return f(-x, -y)
        return 0.0

    return ext


def mirror(f: Func) -> Func:
    """Reflect a function on [0,1]^2 across x = 1 and y = 1 onto [0,2]^2."""

    def ext(x: float, y: float) -> float:
        _require(0 <= x <= 2 and 0 <= y <= 2, x, y, "[0,2]^2")
        u = x if x <= 1 else 2 - x
        v = y if y <= 1 else 2 - y
        return f(u, v)

    return ext


def antisymmetric(f: Func) -> Func:
    def ext(x: float, y: float) -> float:
        _require(0 <= x <= 1 and 0 <= y <= 1, x, y, "[0,1]^2")
        if x > y:
            return f(x, y)
        if x == y:
            return 0.0
        return -f(y, x)

    return ext


def symmetric(f: Func) -> Func:
    def ext(x: float, y: float) -> float:
        _require(0 <= x <= 1 and 0 <= y <= 1, x, y, "[0,1]^2")
        return f(x, y) if x >= y else f(y, x)

    return ext


def extend(kind: str, base: Func, x: float, y: float, L: float = 1) -> float:
    """Evaluate a single extension (``"E"``, ``"R"``, ``"A"`` or ``"S"``) of ``base``."""
    ops = {
        ExtensionKind.ODD: lambda g: odd(g, L),
        ExtensionKind.MIRROR: mirror,
        ExtensionKind.ANTISYMMETRIC: antisymmetric,
        ExtensionKind.SYMMETRIC: symmetric,
    }
    try:
        op = ops[kind]
    except KeyError:
        raise ValueError(f"unknown extension {kind!r}; expected one of E, R, A, S") from None
    return op(base)(x, y)
