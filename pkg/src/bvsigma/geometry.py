"""Exact planar predicates: side tests, crossing segments and the variation factor.

All coordinates are :class:`fractions.Fraction`; no predicate uses a tolerance.
Perturbed lines (a base line nudged by an infinitesimal) are evaluated by the
limit-sign rule, so they never need a concrete epsilon.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, NamedTuple, Sequence, Union

import numpy as np

Rational = Union[int, Fraction, str]


def as_fraction(v) -> Fraction:
    """Coerce ints, strings like ``"1/3"``, Fractions and floats to a Fraction.

    Floats are converted exactly (binary value), never rounded.
    """
    if isinstance(v, Fraction):
        return v
    if isinstance(v, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(v, (int, str)):
        return Fraction(v)
    if isinstance(v, float):
        if v != v or v in (float("inf"), float("-inf")):
            raise ValueError("coordinates must be finite")
        return Fraction(v)
    raise TypeError(f"cannot use {type(v).__name__} as an exact coordinate")


class PlanarPoint(NamedTuple):
    x: Fraction
    y: Fraction

    def __add__(self, other):  # type: ignore[override]
        return PlanarPoint(self.x + other[0], self.y + other[1])

    def __sub__(self, other):
        return PlanarPoint(self.x - other[0], self.y - other[1])

    def scale(self, t) -> "PlanarPoint":
        t = as_fraction(t)
        return PlanarPoint(self.x * t, self.y * t)

    def norm2(self) -> Fraction:
        return self.x * self.x + self.y * self.y

    def __complex__(self) -> complex:
        return complex(float(self.x), float(self.y))

    def __repr__(self) -> str:
        return f"pt({self.x}, {self.y})"


def pt(x, y=None) -> PlanarPoint:
    """Build a point from ``(x, y)``, a pair, or a complex number."""
    if y is None:
        if isinstance(x, PlanarPoint):
            return x
        if isinstance(x, complex):
            return PlanarPoint(as_fraction(x.real), as_fraction(x.imag))
        if isinstance(x, (tuple, list)) and len(x) == 2:
            return PlanarPoint(as_fraction(x[0]), as_fraction(x[1]))
        return PlanarPoint(as_fraction(x), Fraction(0))
    return PlanarPoint(as_fraction(x), as_fraction(y))


ORIGIN = PlanarPoint(Fraction(0), Fraction(0))


class Side(IntEnum):
    MINUS = -1
    ZERO = 0
    PLUS = 1


def _sign(v) -> int:
    return (v > 0) - (v < 0)


@dataclass(frozen=True)
class Line:
    """The line ``a*x + b*y + c = 0``, stored with the first nonzero of a, b equal to 1."""

    a: Fraction
    b: Fraction
    c: Fraction

    def __init__(self, a, b, c):
        a, b, c = as_fraction(a), as_fraction(b), as_fraction(c)
        if a == 0 and b == 0:
            raise ValueError("a line needs (a, b) != (0, 0)")
        k = a if a != 0 else b
        object.__setattr__(self, "a", a / k)
        object.__setattr__(self, "b", b / k)
        object.__setattr__(self, "c", c / k)

    @classmethod
    def through(cls, p: PlanarPoint, q: PlanarPoint) -> "Line":
        if p == q:
            raise ValueError("two distinct points are needed")
        a = q.y - p.y
        b = p.x - q.x
        return cls(a, b, -(a * p.x + b * p.y))

    def value(self, p: PlanarPoint) -> Fraction:
        return self.a * p.x + self.b * p.y + self.c

    def sign_at(self, p: PlanarPoint) -> int:
        return _sign(self.value(p))

    def direction(self) -> PlanarPoint:
        return PlanarPoint(-self.b, self.a)


@dataclass(frozen=True)
class PerturbedLine:
    """``base + eps*p1 + eps**2*p2 + ...`` for an infinitesimal eps > 0.

    Each perturbation is an ``(a, b, c)`` triple; the sign at a point is the
    first nonzero sign in the sequence base, p1, p2, ...
    """

    base: Line
    perturbations: tuple = ()

    def sign_at(self, p: PlanarPoint) -> int:
        s = self.base.sign_at(p)
        if s:
            return s
        for a, b, c in self.perturbations:
            s = _sign(a * p.x + b * p.y + c)
            if s:
                return s
        return 0


AnyLine = Union[Line, PerturbedLine]


def side_of(line: AnyLine, p: PlanarPoint) -> Side:
    return Side(line.sign_at(p))


# -- crossing segments -------------------------------------------------------


def _crossing(labels: Sequence[int], i: int) -> bool:
    n = len(labels) - 1
    a, b = labels[i], labels[i + 1]
    if a * b < 0:
        return True
    if a == 0 and (i == 0 or labels[i - 1] != 0):
        return True
    return i == n - 1 and a != 0 and b == 0


def is_crossing_segment(S: Sequence[PlanarPoint], i: int, line: AnyLine) -> bool:
    n = len(S) - 1
    if not 0 <= i < n:
        raise IndexError(f"segment index {i} out of range for a list with {n} segments")
    return _crossing([line.sign_at(p) for p in S], i)


def count_crossings(labels: Sequence[int]) -> int:
    """Number of crossing segments for a list whose side labels are ``labels``."""
    n = len(labels) - 1
    if n == 0:
        return 1 if labels[0] == 0 else 0
    return sum(_crossing(labels, i) for i in range(n))


def vf_on_line(S: Sequence[PlanarPoint], line: AnyLine) -> int:
    if not S:
        raise ValueError("empty point list")
    return count_crossings([line.sign_at(p) for p in S])


# -- candidate lines ----------------------------------------------------------


def _distinct(points: Iterable[PlanarPoint]) -> list:
    return sorted(set(points))


def candidate_lines(S: Sequence[PlanarPoint]) -> list:
    """Finite family of (possibly perturbed) lines realising every side labelling of S.

    For each line L through two distinct points, the points on L are labelled by
    an arbitrary affine function along L in the limit; that is realised by
    translating L (constant perturbation) or rotating it about a point of L or
    about a midpoint between consecutive points of L.
    """
    pts = _distinct(S)
    if not pts:
        raise ValueError("empty point list")
    lines: list = []
    p0 = pts[0]
    far = max(abs(p.x) for p in pts) + max(abs(p.y) for p in pts) + 1
    lines.append(Line(1, 1, -far))  # x + y = far misses every point
    if len(pts) == 1:
        lines.append(Line(1, 0, -p0.x))
        lines.append(Line(0, 1, -p0.y))
        return lines
    seen = set()
    for p, q in itertools.combinations(pts, 2):
        L = Line.through(p, q)
        if L in seen:
            continue
        seen.add(L)
        lines.append(L)
        d = L.direction()
        ts = sorted({d.x * r.x + d.y * r.y for r in pts if L.value(r) == 0})
        pivots = ts + [(u + v) / 2 for u, v in zip(ts, ts[1:])]
        for s in (1, -1):
            lines.append(PerturbedLine(L, ((Fraction(0), Fraction(0), Fraction(s)),)))
            for tau in pivots:
                # vanishes on L exactly where the coordinate along L equals tau
                lines.append(PerturbedLine(L, ((s * d.x, s * d.y, -s * tau),)))
    return lines


def _canonical(labels: tuple) -> tuple:
    for s in labels:
        if s:
            return labels if s > 0 else tuple(-v for v in labels)
    return labels


@lru_cache(maxsize=512)
def _labelings_cached(points: tuple) -> np.ndarray:
    rows = {_canonical(tuple(L.sign_at(p) for p in points)) for L in candidate_lines(points)}
    out = np.array(sorted(rows), dtype=np.int8).reshape(len(rows), len(points))
    out.setflags(write=False)
    return out


def achievable_labelings(points: Sequence[PlanarPoint]) -> np.ndarray:
    """Side labellings (rows, up to a global sign flip) of ``points`` over all lines.

    ``points`` must be distinct; column order follows the input order.
    """
    points = tuple(points)
    if len(set(points)) != len(points):
        raise ValueError("points must be distinct")
    return _labelings_cached(points)


def vf_counts(labels: np.ndarray, seq: Sequence[int]) -> np.ndarray:
    """Crossing counts of the index list ``seq`` under every labelling row."""
    lab = labels[:, list(seq)].astype(np.int16)
    n = lab.shape[1] - 1
    if n == 0:
        return (lab[:, 0] == 0).astype(np.int64)
    a, b = lab[:, :-1], lab[:, 1:]
    hit = (a * b) < 0
    zero = a == 0
    prev_off = np.ones_like(zero)
    prev_off[:, 1:] = lab[:, :-2] != 0
    hit |= zero & prev_off
    hit[:, -1] |= (a[:, -1] != 0) & (b[:, -1] == 0)
    return hit.sum(axis=1)


def vf(S: Sequence[PlanarPoint]) -> int:
    """Variation factor: the largest crossing-segment count over all lines."""
    if not S:
        raise ValueError("empty point list")
    pts = _distinct(S)
    index = {p: k for k, p in enumerate(pts)}
    return int(vf_counts(achievable_labelings(pts), [index[p] for p in S]).max())
