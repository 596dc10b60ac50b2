"""Complex-valued functions on finite point sets, stored as value tables."""
from __future__ import annotations

from fractions import Fraction
from numbers import Number
from typing import Callable, Iterable, Mapping

from .geometry import pt


def as_value(v):
    """Normalise a function value: ints/strings become Fractions, floats and complex stay."""
    if isinstance(v, bool):
        raise TypeError("booleans are not function values")
    if isinstance(v, Fraction):
        return v
    if isinstance(v, (int, str)):
        return Fraction(v)
    if isinstance(v, complex):
        return v.real if v.imag == 0 else v
    if isinstance(v, (float, Number)):
        return v
    raise TypeError(f"unsupported value type {type(v).__name__}")


def as_finite_set(points: Iterable) -> tuple:
    """Sorted tuple of distinct points; raises on an empty input."""
    out = tuple(sorted({pt(p) for p in points}))
    if not out:
        raise ValueError("a finite set must be nonempty")
    return out


class FunctionOnSet:
    """A value table ``point -> value`` on a finite set.

    Values are exact (``Fraction``) or double precision (``float``/``complex``);
    :attr:`exact` reports which mode the table is in. Evaluating a point outside
    the domain raises ``KeyError``.
    """

    __slots__ = ("_values", "_domain")

    def __init__(self, values: Mapping):
        table = {pt(p): as_value(v) for p, v in values.items()}
        if not table:
            raise ValueError("a function needs a nonempty domain")
        self._values = table
        self._domain = tuple(sorted(table))

    @classmethod
    def from_rule(cls, points: Iterable, rule: Callable) -> "FunctionOnSet":
        return cls({p: rule(p) for p in as_finite_set(points)})

    @classmethod
    def constant(cls, points: Iterable, c=1) -> "FunctionOnSet":
        return cls({p: c for p in as_finite_set(points)})

    @classmethod
    def indicator(cls, points: Iterable, support: Iterable) -> "FunctionOnSet":
        support = {pt(s) for s in support}
        return cls({p: int(p in support) for p in as_finite_set(points)})

    @property
    def domain(self) -> tuple:
        return self._domain

    @property
    def exact(self) -> bool:
        return all(isinstance(v, Fraction) for v in self._values.values())

    def __call__(self, p):
        p = pt(p)
        try:
            return self._values[p]
        except KeyError:
            raise KeyError(f"{p!r} is not in the domain") from None

    def items(self):
        return ((p, self._values[p]) for p in self._domain)

    def values(self) -> list:
        return [self._values[p] for p in self._domain]

    def sup_norm(self):
        return max(abs(v) for v in self._values.values())

    def restrict(self, points: Iterable) -> "FunctionOnSet":
        sub = as_finite_set(points)
        missing = [p for p in sub if p not in self._values]
        if missing:
            raise ValueError(f"not a subset of the domain: {missing[:3]}")
        return FunctionOnSet({p: self._values[p] for p in sub})

    def with_value(self, p, v) -> "FunctionOnSet":
        table = dict(self._values)
        table[pt(p)] = v
        return FunctionOnSet(table)

    def map(self, fn: Callable) -> "FunctionOnSet":
        return FunctionOnSet({p: fn(v) for p, v in self._values.items()})

    def _binary(self, other, op):
        if isinstance(other, FunctionOnSet):
            if other._domain != self._domain:
                raise ValueError("functions live on different domains")
            return FunctionOnSet({p: op(v, other._values[p]) for p, v in self._values.items()})
        other = as_value(other)
        return FunctionOnSet({p: op(v, other) for p, v in self._values.items()})

    def __add__(self, other):
        return self._binary(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return self._binary(other, lambda a, b: b - a)

    def __mul__(self, other):
        return self._binary(other, lambda a, b: a * b)

    __rmul__ = __mul__

    def __neg__(self):
        return self.map(lambda v: -v)

    def __eq__(self, other):
        return isinstance(other, FunctionOnSet) and self._values == other._values

    def __hash__(self):
        return hash(tuple(self.items()))

    def __repr__(self):
        body = ", ".join(f"({p.x}, {p.y}): {v}" for p, v in list(self.items())[:6])
        more = ", ..." if len(self._domain) > 6 else ""
        return f"FunctionOnSet({{{body}{more}}})"
