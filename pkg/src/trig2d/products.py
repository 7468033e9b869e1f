"""Linearization of products of two (anti)symmetric sine/cosine functions.

For labels ``(lam, mu)`` and ``(lam', mu')`` the product, multiplied by 4,
is a signed sum of eight functions of a single family with subscripts::

    (lam + lam', mu + mu'), (lam + lam', mu - mu'),
    (lam - lam', mu + mu'), (lam - lam', mu - mu'),
    (lam + mu', mu + lam'), (lam + mu', mu - lam'),
    (lam - mu', mu + lam'), (lam - mu', mu - lam')

The output family and the eight signs depend only on the pair of input
families and are held in ``PRODUCT_TABLE``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional

import numpy as np

from .functions import (
    HalfInt,
    Kind,
    Label,
    LabelLike,
    SignedLabel,
    as_label,
    canonicalize,
    evaluate,
    is_canonical,
)

__all__ = [
    "PRODUCT_TABLE",
    "Term",
    "TermSum",
    "Slot",
    "expand_product",
    "decompose_product",
    "format_product",
    "format_slots",
    "congruence_class",
    "verify_decomposition",
    "decomposition_json",
    "canonical_labels",
]

SP, SM, CP, CM = Kind.SIN_PLUS, Kind.SIN_MINUS, Kind.COS_PLUS, Kind.COS_MINUS

# (left, right) -> (output family, signs of the eight terms in subscript order)
PRODUCT_TABLE: dict[tuple[Kind, Kind], tuple[Kind, str]] = {
    (SP, SP): (CP, "+--++--+"),
    (SP, SM): (CM, "+--+-++-"),
    (SM, SM): (CP, "+--+-++-"),
    (SP, CP): (SP, "++++++++"),
    (SP, CM): (SM, "++++----"),
    (SM, CP): (SM, "++++++++"),
    (SM, CM): (SP, "++++----"),
    (CP, CP): (CP, "++++++++"),
    (CP, CM): (CM, "++++----"),
    (CM, CM): (CP, "++++----"),
}

# rows are oriented sine before cosine, + before -
_ORIENTATION = {SP: 0, SM: 1, CP: 2, CM: 3}


@dataclass(frozen=True)
class Term:
    coeff: int
    kind: Kind
    label: Label

    def __str__(self):
        sign = "+" if self.coeff > 0 else "-"
        mag = abs(self.coeff)
        scale = "" if mag == 1 else f"{mag}*"
        return f"{sign}{scale}{self.kind}{self.label}"


@dataclass(frozen=True)
class TermSum:
    """Signed integer combination of canonical functions, sorted by label descending."""

    terms: tuple[Term, ...]

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __str__(self):
        return " ".join(str(t) for t in self.terms) if self.terms else "0"

    def evaluate(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        total = np.zeros(np.broadcast(x, y).shape)
        for t in self.terms:
            total = total + t.coeff * evaluate(t.kind, t.label, x, y)
        return total[()]

    def to_dict(self) -> list[dict]:
        return [
            {
                "coeff": t.coeff,
                "kind": t.kind.value,
                "label": str(t.label),
                "k2": t.label.first.twice,
                "l2": t.label.second.twice,
            }
            for t in self.terms
        ]


class Slot(NamedTuple):
    """One of the eight raw terms before merging."""

    table_sign: int
    raw: Label
    reduced: SignedLabel

    @property
    def coeff(self) -> int:
        return self.table_sign * self.reduced.sign


def _oriented(k1: Kind, l1: Label, k2: Kind, l2: Label):
    if _ORIENTATION[k1] > _ORIENTATION[k2]:
        return k2, l2, k1, l1
    return k1, l1, k2, l2


def expand_product(k1: Kind, l1: LabelLike, k2: Kind, l2: LabelLike) -> list[Slot]:
    """The eight raw terms of ``4 * f1 * f2`` in table order, each canonicalized."""
    l1, l2 = as_label(l1), as_label(l2)
    for kind, label in ((k1, l1), (k2, l2)):
        if not is_canonical(kind, label):
            raise ValueError(f"label {label} is not canonical for {kind}")
    k1, l1, k2, l2 = _oriented(k1, l1, k2, l2)
    out_kind, signs = PRODUCT_TABLE[(k1, k2)]
    lam, mu = l1
    lam2, mu2 = l2
    subscripts = [
        (lam + lam2, mu + mu2), (lam + lam2, mu - mu2),
        (lam - lam2, mu + mu2), (lam - lam2, mu - mu2),
        (lam + mu2, mu + lam2), (lam + mu2, mu - lam2),
        (lam - mu2, mu + lam2), (lam - mu2, mu - lam2),
    ]
    slots = []
    for s, (a, b) in zip(signs, subscripts):
        raw = Label(a, b)
        slots.append(Slot(1 if s == "+" else -1, raw, canonicalize(out_kind, raw)))
    return slots


def decompose_product(k1: Kind, l1: LabelLike, k2: Kind, l2: LabelLike) -> TermSum:
    """Decompose ``4 * f1 * f2`` into canonical terms.

    Both labels must already be canonical for their families.  Vanishing
    terms are dropped and repeated labels merged; the factor 4 stays on the
    product side, so ``TermSum.evaluate`` equals ``4 * f1 * f2``.
    """
    merged: dict[tuple[Kind, Label], int] = {}
    for slot in expand_product(k1, l1, k2, l2):
        if slot.reduced.is_zero:
            continue
        key = (slot.reduced.kind, slot.reduced.label)
        merged[key] = merged.get(key, 0) + slot.coeff
    terms = [Term(c, kind, label) for (kind, label), c in merged.items() if c != 0]
    terms.sort(key=lambda t: (t.label.first, t.label.second), reverse=True)
    return TermSum(tuple(terms))


def format_product(k1: Kind, l1: LabelLike, k2: Kind, l2: LabelLike,
                   result: Optional[TermSum] = None) -> str:
    """``4*sin+(2,1)*sin+(3,2) = +cos+(5,3) -cos+(5,1) ...``"""
    l1, l2 = as_label(l1), as_label(l2)
    if result is None:
        result = decompose_product(k1, l1, k2, l2)
    return f"4*{k1}{l1}*{k2}{l2} = {result}"


def format_slots(slots: Iterable[Slot], raw: bool = False) -> str:
    """Render the eight slots in table order.

    With ``raw=True`` the uncanonicalized subscripts are shown; otherwise
    each slot shows its canonical term, or ``0`` when it vanishes.
    """
    parts = []
    for slot in slots:
        kind = slot.reduced.kind
        if raw:
            parts.append(f"{'+' if slot.table_sign > 0 else '-'}{kind}{slot.raw}")
        elif slot.reduced.is_zero:
            parts.append(f"{'+' if slot.table_sign > 0 else '-'}0")
        else:
            parts.append(f"{'+' if slot.coeff > 0 else '-'}{kind}{slot.reduced.label}")
    return " ".join(parts)


def congruence_class(label: LabelLike) -> int:
    """``(lam + mu) mod 2`` for an integer label."""
    label = as_label(label)
    if not label.is_integer:
        raise ValueError(f"congruence class is defined for integer labels only, got {label}")
    return ((label.first.twice + label.second.twice) // 2) % 2


def verify_decomposition(k1: Kind, l1: LabelLike, k2: Kind, l2: LabelLike, x, y) -> float:
    """Max over the given points of ``|4 f1 f2 - sum of terms|``."""
    terms = decompose_product(k1, l1, k2, l2)
    lhs = 4 * evaluate(k1, l1, x, y) * evaluate(k2, l2, x, y)
    return float(np.max(np.abs(lhs - terms.evaluate(x, y)), initial=0.0))


def decomposition_json(k1: Kind, l1: LabelLike, k2: Kind, l2: LabelLike) -> str:
    l1, l2 = as_label(l1), as_label(l2)
    result = decompose_product(k1, l1, k2, l2)
    doc = {
        "left": {"kind": k1.value, "label": str(l1)},
        "right": {"kind": k2.value, "label": str(l2)},
        "factor": 4,
        "terms": result.to_dict(),
    }
    return json.dumps(doc, indent=2)


def canonical_labels(kind: Kind, max_component: int, integer: bool = True) -> list[Label]:
    """All canonical integer labels of ``kind`` with components <= ``max_component``."""
    step = 2 if integer else 1
    out = []
    for a in range(0, 2 * max_component + 1, step):
        for b in range(0, a + 1, step):
            label = Label(HalfInt(a), HalfInt(b))
            if is_canonical(kind, label):
                out.append(label)
    return out
