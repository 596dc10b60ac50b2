"""Equivalent norms: the isolated-point norm, spoke norms and the first-difference map."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .csets import RayPartition, ray_key
from .functions import FunctionOnSet, as_finite_set
from .geometry import ORIGIN, PlanarPoint, pt
from .variation import NormReport, SearchConfig, Status, bv_norm

__all__ = [
    "d_norm",
    "ray_variation",
    "spoke_norm",
    "SpokeCheck",
    "check_spoke_equivalence",
    "psi_ell1",
]


def _zero(f: FunctionOnSet):
    return Fraction(0) if f.exact else 0.0


def d_norm(f: FunctionOnSet, sigma1: Iterable, z, cfg: SearchConfig = SearchConfig()) -> NormReport:
    """``||f restricted to sigma1||_BV + |f(z)|`` for a point z outside sigma1."""
    s1 = as_finite_set(sigma1)
    z = pt(z)
    if z in s1:
        raise ValueError("z must not belong to sigma1")
    if f.domain != tuple(sorted((*s1, z))):
        raise ValueError("domain of f must be sigma1 together with z")
    part = bv_norm(f.restrict(s1), s1, cfg)
    upper = None if part.upper is None else part.upper + abs(f(z))
    params = {"z": z, "bv_sigma1": part.value, **part.parameters}
    return NormReport("D", part.value + abs(f(z)), part.status, params, upper)


def ray_variation(f: FunctionOnSet, ray: Sequence, f0=None):
    """``sup_i |f(l_i) - f0| + sum_i |f(l_i) - f(l_{i+1})|`` along one ray.

    ``ray`` lists the nonzero points by strictly decreasing modulus, all on
    one ray from the origin; the last point is joined to 0 (``l_{N+1} = 0``)
    and ``f0`` defaults to ``f(0)``.
    """
    pts = [pt(p) for p in ray]
    if f0 is None:
        f0 = f(ORIGIN)
    if not pts:
        return _zero(f)
    key = ray_key(pts[0])
    for p in pts:
        if p == ORIGIN or ray_key(p) != key:
            raise ValueError("ray points must lie on one ray from the origin")
    mods = [p.norm2() for p in pts]
    if any(b >= a for a, b in zip(mods, mods[1:])):
        raise ValueError("ray points must have strictly decreasing modulus")
    vals = [f(p) for p in pts] + [f0]
    sup = max(abs(v - f0) for v in vals[:-1])
    jumps = sum((abs(b - a) for a, b in zip(vals, vals[1:])), _zero(f))
    return sup + jumps


def spoke_norm(f: FunctionOnSet, partition: RayPartition) -> NormReport:
    """``|f(0)| + sum_j ||f - f(0)||_BV(ray j)`` on a strict ray partition."""
    if partition.leftovers:
        raise ValueError("spoke norm needs a strict ray set; move the leftover points onto rays first")
    if f.domain != partition.points():
        raise ValueError("domain of f must equal the partitioned set")
    f0 = f(ORIGIN)
    total = abs(f0)
    for ray in partition.rays:  # summed left to right by ray index
        total = total + ray_variation(f, ray, f0)
    return NormReport("Spoke", total, Status.EXACT, {"k": partition.k})


@dataclass(frozen=True)
class SpokeCheck:
    lhs: object  # Sp / (2k + 1)
    mid: object  # BV norm (or its certified lower bound)
    rhs: object  # 3 Sp
    passed: bool
    status: Status
    spoke: NormReport
    bv: NormReport


def check_spoke_equivalence(f: FunctionOnSet, partition: RayPartition, cfg: SearchConfig = SearchConfig()) -> SpokeCheck:
    """Evaluate ``Sp/(2k+1) <= BV <= 3 Sp``.

    With an Exact BV value both inequalities are checked; otherwise the BV
    value is a lower bound, so only ``BV <= 3 Sp`` is decided from it and the
    left inequality is checked against the rigorous upper bound when present.
    """
    sp = spoke_norm(f, partition)
    bv = bv_norm(f, partition.points(), cfg)
    k = partition.k
    lhs = sp.value / (2 * k + 1)
    rhs = 3 * sp.value
    if bv.exact:
        ok = lhs <= bv.value <= rhs
    else:
        ok = bv.value <= rhs and (bv.upper is None or lhs <= bv.upper)
    return SpokeCheck(lhs, bv.value, rhs, bool(ok), bv.status, sp, bv)


def psi_ell1(f: FunctionOnSet) -> tuple:
    """First differences ``(f(1), f(1/2) - f(1), ..., f(0) - f(1/N))`` and their l1 norm.

    The domain must be ``{0} u {1, 1/2, ..., 1/N}``.  The closing term
    ``f(0) - f(1/N)`` keeps the map injective on the truncation; without it
    the value at 0 would be lost.
    """
    N = len(f.domain) - 1
    expected = tuple(sorted([ORIGIN] + [PlanarPoint(Fraction(1, n), Fraction(0)) for n in range(1, N + 1)]))
    if N < 1 or f.domain != expected:
        raise ValueError("domain must be {0} u {1/n : n <= N}")
    vals = [f(pt(Fraction(1, n))) for n in range(1, N + 1)] + [f(ORIGIN)]
    seq = (vals[0],) + tuple(b - a for a, b in zip(vals, vals[1:]))
    return seq, sum((abs(v) for v in seq), _zero(f))
