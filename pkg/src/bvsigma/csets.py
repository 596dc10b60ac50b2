"""C-sets: countable compact sets with limit point 0, described lazily by rays.

A :class:`CSetSpec` is a finite list of rays (each an infinite sequence of
points with strictly decreasing modulus), a finite set of extra points and,
for sets that are not ray sets at all (parabola, spiral), lazily enumerated
point sequences.  :func:`truncate` turns a spec into a finite set.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence, Union

from .geometry import ORIGIN, PlanarPoint, as_fraction, pt

Rule = Callable[[int], Fraction]

_RULE_CHECK = 64  # number of leading terms validated for a modulus rule


def harmonic(i: int) -> Fraction:
    return Fraction(1, i)


def geometric(i: int) -> Fraction:
    return Fraction(1, 2**i)


def inverse_square(i: int) -> Fraction:
    return Fraction(1, i * i)


NAMED_RULES = {"harmonic": harmonic, "geometric": geometric, "inverse_square": inverse_square}


def unit_direction(theta: float, max_den: int = 10**6) -> PlanarPoint:
    """A rational point on the unit circle whose angle approximates ``theta``.

    Uses the half-angle parametrisation ``t -> ((1-t^2)/(1+t^2), 2t/(1+t^2))``
    with ``t`` a rational approximation of ``tan(theta/2)``, so the result has
    modulus exactly 1.
    """
    theta = math.remainder(theta, 2 * math.pi)
    if abs(abs(theta) - math.pi) < 1e-15:
        return pt(-1, 0)
    t = Fraction(math.tan(theta / 2)).limit_denominator(max_den)
    d = 1 + t * t
    return PlanarPoint((1 - t * t) / d, 2 * t / d)


def direction_for(angle, max_den: int = 10**6) -> tuple:
    """Exact unit direction for ``angle`` and a note on how it was obtained.

    A :class:`~fractions.Fraction` (or int, or ``"p/q"`` string) is read as a
    multiple of pi; multiples of 1/2 are exact.  A float is read in radians.
    """
    if isinstance(angle, float):
        return unit_direction(angle, max_den), f"approx(max_den={max_den})"
    q = as_fraction(angle) % 2
    axis = {Fraction(0): (1, 0), Fraction(1, 2): (0, 1), Fraction(1): (-1, 0), Fraction(3, 2): (0, -1)}
    if q in axis:
        return pt(*axis[q]), "exact"
    return unit_direction(float(q) * math.pi, max_den), f"approx(max_den={max_den})"


def angle_key(p: PlanarPoint) -> tuple:
    """Exact sort key increasing with the polar angle of ``p`` in [0, 2pi)."""
    if p == ORIGIN:
        raise ValueError("the origin has no angle")
    u = p.x / (abs(p.x) + abs(p.y))
    if p.y > 0 or (p.y == 0 and p.x > 0):
        return (0, -u)
    return (1, u)


def ray_key(p: PlanarPoint) -> PlanarPoint:
    """Canonical representative of the ray from 0 through ``p``."""
    m = max(abs(p.x), abs(p.y))
    if m == 0:
        raise ValueError("the origin lies on every ray")
    return PlanarPoint(p.x / m, p.y / m)


def _check_rule(rule: Rule, count: int = _RULE_CHECK) -> None:
    prev = None
    for i in range(1, count + 1):
        v = as_fraction(rule(i))
        if v <= 0:
            raise ValueError(f"modulus rule must be positive (term {i} is {v})")
        if prev is not None and v >= prev:
            raise ValueError(f"modulus rule must be strictly decreasing (terms {i - 1}, {i})")
        prev = v


@dataclass(frozen=True)
class RaySpec:
    """Points ``rule(i) * direction`` for i = 1, 2, ... with |direction| = 1."""

    direction: PlanarPoint
    rule: Rule = field(compare=False)
    angle_note: str = "exact"

    def __post_init__(self):
        d = pt(self.direction)
        if d.norm2() != 1:
            raise ValueError("ray directions must be exact unit vectors")
        object.__setattr__(self, "direction", d)
        _check_rule(self.rule)

    @property
    def angle(self) -> float:
        return math.atan2(float(self.direction.y), float(self.direction.x)) % (2 * math.pi)

    def modulus(self, i: int) -> Fraction:
        if i < 1:
            raise IndexError("ray points are numbered from 1")
        return as_fraction(self.rule(i))

    def point(self, i: int) -> PlanarPoint:
        return self.direction.scale(self.modulus(i))

    def points(self, N: int) -> tuple:
        pts = tuple(self.point(i) for i in range(1, N + 1))
        mods = [self.modulus(i) for i in range(1, N + 1)]
        if any(b >= a for a, b in zip(mods, mods[1:])) or (mods and mods[-1] <= 0):
            raise ValueError("modulus rule is not strictly decreasing on the requested range")
        return pts


@dataclass(frozen=True)
class PointSequence:
    """A lazily enumerated sequence of nonzero points converging to 0."""

    name: str
    generator: Callable[[], Iterable] = field(compare=False)

    def first(self, N: int) -> tuple:
        return tuple(pt(p) for p in itertools.islice(self.generator(), N))


@dataclass(frozen=True)
class CSetSpec:
    rays: tuple = ()
    extras: tuple = ()
    sequences: tuple = ()
    metadata: tuple = ()  # (key, value) pairs, e.g. the precision of approximated angles

    def __post_init__(self):
        rays = tuple(self.rays)
        extras = tuple(sorted({pt(p) for p in self.extras}))
        keys = [ray_key(r.direction) for r in rays]
        if len(set(keys)) != len(keys):
            raise ValueError("ray angles must be pairwise distinct")
        if ORIGIN in extras:
            raise ValueError("the origin is always included; extras must be nonzero")
        for p in extras:
            for r in rays:
                if ray_key(p) == ray_key(r.direction) and _on_ray(r, p):
                    raise ValueError(f"extra point {p!r} lies on a ray of the set")
        object.__setattr__(self, "rays", rays)
        object.__setattr__(self, "extras", extras)
        object.__setattr__(self, "sequences", tuple(self.sequences))
        object.__setattr__(self, "metadata", tuple(self.metadata))

    @property
    def k(self) -> int:
        return len(self.rays)

    @property
    def is_ray_set(self) -> bool:
        return not self.sequences and bool(self.rays)

    @property
    def strict(self) -> bool:
        return self.is_ray_set and not self.extras

    def meta(self) -> dict:
        return dict(self.metadata)


def _on_ray(ray: RaySpec, p: PlanarPoint, search: int = 10_000) -> bool:
    """Whether ``p`` is one of the ray's points (moduli are decreasing, so stop early)."""
    m2 = p.norm2()
    for i in range(1, search + 1):
        r = ray.modulus(i)
        if r * r == m2:
            return ray.point(i) == p
        if r * r < m2:
            return False
    return False


def truncate(spec: CSetSpec, N: int) -> tuple:
    """``{0}`` plus the extras plus the first N points of every ray and sequence."""
    if N < 1:
        raise ValueError("N must be at least 1")
    pts = {ORIGIN, *spec.extras}
    for r in spec.rays:
        pts.update(r.points(N))
    for s in spec.sequences:
        pts.update(s.first(N))
    return tuple(sorted(pts))


# -- ray partitions ---------------------------------------------------------------


@dataclass(frozen=True)
class RayPartition:
    """Points grouped by ray from the origin.

    ``rays[j]`` lists the points of ray j by decreasing modulus; rays are sorted
    by angle.  ``structural`` is True when the grouping was read off a finite
    set (it says nothing about which rays are infinite in a parent C-set).
    """

    k: int
    directions: tuple
    rays: tuple
    leftovers: tuple = ()
    structural: bool = True

    @property
    def strict(self) -> bool:
        return not self.leftovers

    def points(self) -> tuple:
        out = {ORIGIN, *self.leftovers}
        for r in self.rays:
            out.update(r)
        return tuple(sorted(out))


def _by_modulus(points: Iterable[PlanarPoint]) -> tuple:
    return tuple(sorted(points, key=lambda p: (-p.norm2(), p)))


def classify_rays(obj: Union[CSetSpec, Iterable], N: Optional[int] = None, min_ray_size: int = 1) -> RayPartition:
    """Group a finite set (or a spec, optionally truncated at N) by rays through 0.

    For a finite set every ray holding at least ``min_ray_size`` points is
    reported; smaller groups go to the leftovers.  For a spec the rays and
    leftovers come from the spec itself; without N the per-ray point lists are
    left empty.
    """
    if isinstance(obj, CSetSpec):
        if obj.sequences:
            raise ValueError("spec contains point sequences; it is not described by rays")
        order = sorted(range(obj.k), key=lambda j: angle_key(obj.rays[j].direction))
        rays = tuple(obj.rays[j] for j in order)
        lists = tuple(_by_modulus(r.points(N)) for r in rays) if N is not None else tuple(() for _ in rays)
        return RayPartition(len(rays), tuple(r.direction for r in rays), lists, obj.extras, structural=False)
    pts = {pt(p) for p in obj}
    if ORIGIN not in pts:
        raise ValueError("the origin must belong to the set")
    groups: dict = {}
    for p in pts - {ORIGIN}:
        groups.setdefault(ray_key(p), []).append(p)
    keys = sorted(groups, key=angle_key)
    rays, dirs, left = [], [], []
    for key in keys:
        if len(groups[key]) >= min_ray_size:
            rays.append(_by_modulus(groups[key]))
            dirs.append(key)
        else:
            left.extend(groups[key])
    return RayPartition(len(rays), tuple(dirs), tuple(rays), tuple(sorted(left)), structural=True)


# -- builders ---------------------------------------------------------------------


def _resolve_rule(rule) -> Rule:
    if isinstance(rule, str):
        try:
            return NAMED_RULES[rule]
        except KeyError:
            raise ValueError(f"unknown modulus rule {rule!r}; known: {sorted(NAMED_RULES)}") from None
    return rule


def real_cset(rule: Union[Rule, str] = harmonic, negative_rule: Union[Rule, str, None] = None) -> CSetSpec:
    """``{0} u {rule(i)}`` and, optionally, ``{-negative_rule(i)}``."""
    rays = [RaySpec(pt(1, 0), _resolve_rule(rule))]
    if negative_rule is not None:
        rays.append(RaySpec(pt(-1, 0), _resolve_rule(negative_rule)))
    return CSetSpec(rays=tuple(rays))


def kray_set(angles: Sequence, rule: Union[Rule, str, Sequence] = harmonic, extras: Iterable = (), max_den: int = 10**6) -> CSetSpec:
    """Rays at the given angles (multiples of pi as Fractions, or radians as floats).

    ``rule`` is one modulus rule for every ray or a sequence with one per ray.
    """
    if isinstance(rule, (list, tuple)):
        rules = [_resolve_rule(r) for r in rule]
        if len(rules) != len(angles):
            raise ValueError("need one rule per ray")
    else:
        rules = [_resolve_rule(rule)] * len(angles)
    rays, notes = [], []
    for a, r in zip(angles, rules):
        d, note = direction_for(a, max_den)
        rays.append(RaySpec(d, r, note))
        notes.append(note)
    meta = (("angles", tuple(str(a) for a in angles)), ("angle_notes", tuple(notes)))
    return CSetSpec(rays=tuple(rays), extras=tuple(extras), metadata=meta)


def _parabola_points():
    for j in itertools.count(1):
        yield PlanarPoint(Fraction(1, j), Fraction(1, j * j))


def parabola_set() -> CSetSpec:
    """``{0} u {1/j + i/j^2}``: no two of its points share a ray."""
    return CSetSpec(sequences=(PointSequence("parabola", _parabola_points),), metadata=(("name", "parabola"),))


def spiral_set(precision: int = 10**6) -> CSetSpec:
    """``{0} u {e^{i/m}/n} u {1/n}`` with e^{i/m} replaced by exact unit vectors.

    The angle 1/m is approximated through a rational tan(1/(2m)) with
    denominator at most ``precision``; pairs (n, m) are enumerated along
    diagonals n + m = 2, 3, ... with n increasing.
    """
    dirs: dict = {}

    def direction(m):
        if m not in dirs:
            dirs[m] = unit_direction(1.0 / m, precision)
        return dirs[m]

    def points():
        for s in itertools.count(2):
            for n in range(1, s):
                m = s - n
                yield direction(m).scale(Fraction(1, n))

    return CSetSpec(
        rays=(RaySpec(pt(1, 0), harmonic),),
        sequences=(PointSequence("spiral", points),),
        metadata=(("name", "spiral"), ("precision", precision)),
    )
