"""Function rules on C-sets and the numerical absolute-continuity test for ray sets."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Optional, Sequence

import numpy as np

from .csets import CSetSpec, truncate
from .functions import FunctionOnSet, as_finite_set, as_value
from .geometry import ORIGIN, PlanarPoint, pt

DEFAULT_SCHEDULE = (10, 20, 40, 80, 160)
DEFAULT_TOL = 1e-6


class FunctionRule:
    """A function that can be evaluated at any point of a C-set spec."""

    def __call__(self, p: PlanarPoint):
        raise NotImplementedError

    def ray_value(self, spec: CSetSpec, j: int, i: int):
        """Value at the i-th point (1-based) of ray j of ``spec``."""
        return self(spec.rays[j].point(i))

    def origin_value(self, spec: CSetSpec):
        return self(ORIGIN)

    def on_points(self, points: Iterable) -> FunctionOnSet:
        return FunctionOnSet({p: self(p) for p in as_finite_set(points)})

    def on_truncation(self, spec: CSetSpec, N: int) -> FunctionOnSet:
        return self.on_points(truncate(spec, N))


class Poly2(FunctionRule):
    """``sum c_nm x^n y^m`` with finitely many coefficients ``{(n, m): c_nm}``."""

    def __init__(self, coefficients: Mapping):
        coeffs = {}
        for (n, m), c in coefficients.items():
            if n < 0 or m < 0:
                raise ValueError("exponents must be nonnegative")
            c = as_value(c)
            if c != 0:
                coeffs[(int(n), int(m))] = c
        self.coefficients = coeffs

    @classmethod
    def identity(cls) -> "Poly2":
        """``z = x + i y`` (complex values, evaluated in double precision)."""
        return cls({(1, 0): 1, (0, 1): 1j})

    def __call__(self, p):
        return poly_eval(self, p)

    def __repr__(self):
        return f"Poly2({self.coefficients})"


def poly_eval(p: Poly2, point):
    """Exact for rational coefficients; complex coefficients give complex doubles."""
    q = pt(point)
    total = Fraction(0)
    for (n, m), c in sorted(p.coefficients.items()):
        total = total + c * q.x**n * q.y**m
    if isinstance(total, complex) and total.imag == 0:
        return total.real
    return total


class Indicator(FunctionRule):
    def __init__(self, points: Iterable):
        self.points = frozenset(pt(p) for p in points)

    def __call__(self, p):
        return Fraction(int(pt(p) in self.points))


class CustomRule(FunctionRule):
    def __init__(self, fn: Callable, name: str = "custom"):
        self.fn, self.name = fn, name

    def __call__(self, p):
        return as_value(self.fn(pt(p)))


class RayTable(FunctionRule):
    """Values given per ray as sequences ``i -> value`` plus a value at 0.

    ``extras`` maps the finite leftover points to their values.  The rule is
    tied to the spec whose rays it describes.
    """

    def __init__(self, spec: CSetSpec, ray_rules: Sequence[Callable], at_zero=0, extras: Optional[Mapping] = None):
        if len(ray_rules) != spec.k:
            raise ValueError("need one value rule per ray")
        self.spec, self.ray_rules = spec, tuple(ray_rules)
        self.at_zero = as_value(at_zero)
        self.extras = {pt(p): as_value(v) for p, v in (extras or {}).items()}

    def ray_value(self, spec, j, i):
        return as_value(self.ray_rules[j](i))

    def origin_value(self, spec):
        return self.at_zero

    def __call__(self, p):
        p = pt(p)
        if p == ORIGIN:
            return self.at_zero
        if p in self.extras:
            return self.extras[p]
        for j, ray in enumerate(self.spec.rays):
            m2 = p.norm2()
            for i in range(1, 1_000_000):
                r = ray.modulus(i)
                if r * r <= m2:
                    if r * r == m2 and ray.point(i) == p:
                        return self.ray_value(self.spec, j, i)
                    break
        raise KeyError(f"{p!r} is not a point of the spec")

    def on_truncation(self, spec, N):
        table = {ORIGIN: self.at_zero}
        for j, ray in enumerate(spec.rays):
            for i in range(1, N + 1):
                table[ray.point(i)] = self.ray_value(spec, j, i)
        for p in spec.extras:
            table[p] = self.extras[p]
        return FunctionOnSet(table)


def restrict(f: FunctionOnSet, sigma1: Iterable) -> FunctionOnSet:
    return f.restrict(sigma1)


def gn_truncation(rule: FunctionRule, spec: CSetSpec, n: int, N: int) -> FunctionOnSet:
    """``g_n``: equal to the rule where ``|z| >= 1/n`` and to its value at 0 elsewhere.

    The N-truncation must contain every point of the set with ``|z| >= 1/n``,
    i.e. the (N+1)-th point of each ray must be closer to 0 than 1/n.
    """
    if spec.sequences:
        raise ValueError("g_n is defined here for ray specs only")
    if n < 1:
        raise ValueError("n must be positive")
    cut = Fraction(1, n * n)
    for ray in spec.rays:
        if ray.modulus(N + 1) ** 2 >= cut:
            raise ValueError(f"truncation at N={N} misses points with |z| >= 1/{n}")
    f = rule.on_truncation(spec, N)
    f0 = f(ORIGIN)
    return FunctionOnSet({p: (v if p.norm2() >= cut else f0) for p, v in f.items()})


def extend_by_point(f: FunctionOnSet, p: Poly2, z, fz) -> FunctionOnSet:
    """``g = p + (fz - p(z)) chi_z`` on the domain of f together with z."""
    z = pt(z)
    if z in f.domain:
        raise ValueError("z must lie outside the domain of f")
    table = {q: poly_eval(p, q) for q in f.domain}
    table[z] = fz
    return FunctionOnSet(table)


# -- absolute continuity on ray sets -------------------------------------------------------


class Verdict(str, enum.Enum):
    AC = "AC"
    NOT_AC = "NotAC"
    INCONCLUSIVE = "Inconclusive"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class ACVerdict:
    """Outcome of :func:`ac_test_kray` with the sequences it was based on.

    ``margins[s]`` is the largest ``|f(z) - f(0)|`` over ray points with index
    in ``(N/2, N]`` and ``tails[s]`` the variation of f over the same index
    block (including the step to the next point), both for ``N = schedule[s]``.
    The blocks are disjoint for a doubling schedule, so block variations that
    stay bounded below force the total variation to diverge.
    """

    verdict: Verdict
    margins: tuple
    tails: tuple
    schedule: tuple
    witness: str = ""
    variation_lower_bound: float = 0.0
    slopes: tuple = field(default=())


def _loglog_slope(schedule, values, tol) -> float:
    """Least-squares slope of log(value) against log(N); -inf once values vanish."""
    if values[-1] <= tol:
        return -math.inf
    xs = np.log(np.asarray(schedule, dtype=float))
    ys = np.log(np.maximum(np.asarray(values, dtype=float), 1e-300))
    return float(np.polyfit(xs, ys, 1)[0])


def _bounded_below(values, tol) -> bool:
    """The second half of the sequence never falls below half of its first value."""
    first = values[0]
    return first > tol and min(values[len(values) // 2:]) >= first / 2


def ac_test_kray(
    rule: FunctionRule,
    spec: CSetSpec,
    schedule: Sequence[int] = DEFAULT_SCHEDULE,
    tol: float = DEFAULT_TOL,
) -> ACVerdict:
    """Three-valued numerical test of continuity at 0 plus bounded variation on a ray set.

    On a k-ray set a function is absolutely continuous exactly when it has
    bounded variation and is continuous at the origin, and bounded variation
    on each ray is summability of the increments.  Along the schedule:

    * NotAC when the continuity margins or the block variations stay bounded
      below (the second half of the sequence never drops under half of the
      first entry); the witness names which;
    * AC when both sequences end below ``tol``, or decay at least like
      ``N^(-1/2)`` (log-log slope <= -1/2) with a smaller final than first entry;
    * Inconclusive otherwise.
    """
    if not spec.is_ray_set:
        raise ValueError("the AC test needs a k-ray spec")
    schedule = tuple(int(N) for N in schedule)
    if len(schedule) < 2 or any(b <= a for a, b in zip(schedule, schedule[1:])) or schedule[0] < 2:
        raise ValueError("schedule must be increasing, with at least two entries >= 2")
    f0 = complex(rule.origin_value(spec))
    margins, tails = [], []
    for N in schedule:
        lo = N // 2 + 1
        m, t = 0.0, 0.0
        for j in range(spec.k):
            vals = [complex(rule.ray_value(spec, j, i)) for i in range(lo, N + 2)]
            m = max(m, max(abs(v - f0) for v in vals[:-1]))
            t += sum(abs(b - a) for a, b in zip(vals, vals[1:]))
        margins.append(m)
        tails.append(t)
    margins, tails = tuple(margins), tuple(tails)
    slopes = (_loglog_slope(schedule, margins, tol), _loglog_slope(schedule, tails, tol))
    lower = float(sum(tails))
    if _bounded_below(margins, tol):
        return ACVerdict(Verdict.NOT_AC, margins, tails, schedule, "discontinuous at 0", lower, slopes)
    if _bounded_below(tails, tol):
        return ACVerdict(Verdict.NOT_AC, margins, tails, schedule, "unbounded variation", lower, slopes)

    def settles(values, slope):
        return values[-1] <= tol or (slope <= -0.5 and values[-1] < values[0])

    if settles(margins, slopes[0]) and settles(tails, slopes[1]):
        return ACVerdict(Verdict.AC, margins, tails, schedule, "", lower, slopes)
    return ACVerdict(Verdict.INCONCLUSIVE, margins, tails, schedule, "", lower, slopes)


def harmonic_increment_rule(spec: CSetSpec) -> RayTable:
    """On every ray: partial sums of ``(-1)^m / m``; at 0 their limit ``-log 2``.

    Continuous at 0 with unbounded variation (the increments are ``1/m``).
    """
    def partial(i):
        return math.fsum((-1) ** m / m for m in range(1, i + 1))

    return RayTable(spec, [partial] * spec.k, at_zero=-math.log(2))
