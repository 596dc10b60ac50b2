"""Point bijections, composition operators and locally piecewise affine maps."""
from __future__ import annotations

import enum
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from .csets import RayPartition, harmonic, kray_set, classify_rays, truncate
from .functions import FunctionOnSet, as_finite_set
from .geometry import ORIGIN, PlanarPoint, as_fraction, pt
from .norms import d_norm, spoke_norm
from .variation import NormReport, SearchConfig, Status, bv_norm


class Continuity(str, enum.Enum):
    HOMEOMORPHISM = "Homeomorphism"
    BIJECTION_ONLY = "BijectionOnly"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class PointBijection:
    """A bijection between finite sets stored as forward and inverse tables."""

    forward: Mapping
    inverse: Mapping
    continuity: Continuity = Continuity.BIJECTION_ONLY

    def __post_init__(self):
        fwd = {pt(a): pt(b) for a, b in self.forward.items()}
        inv = {pt(a): pt(b) for a, b in self.inverse.items()}
        if len(set(fwd.values())) != len(fwd) or any(inv.get(b) != a for a, b in fwd.items()) or len(inv) != len(fwd):
            raise ValueError("forward and inverse tables are not mutually inverse bijections")
        object.__setattr__(self, "forward", fwd)
        object.__setattr__(self, "inverse", inv)

    @classmethod
    def from_forward(cls, forward: Mapping, continuity: Continuity = Continuity.BIJECTION_ONLY) -> "PointBijection":
        fwd = {pt(a): pt(b) for a, b in forward.items()}
        return cls(fwd, {b: a for a, b in fwd.items()}, continuity)

    @classmethod
    def identity(cls, points: Iterable) -> "PointBijection":
        pts = as_finite_set(points)
        return cls({p: p for p in pts}, {p: p for p in pts}, Continuity.HOMEOMORPHISM)

    @property
    def source(self) -> tuple:
        return tuple(sorted(self.forward))

    @property
    def target(self) -> tuple:
        return tuple(sorted(self.inverse))

    def __call__(self, p) -> PlanarPoint:
        return self.forward[pt(p)]

    def inverted(self) -> "PointBijection":
        return PointBijection(self.inverse, self.forward, self.continuity)

    def then(self, other: "PointBijection") -> "PointBijection":
        """``other after self``."""
        if set(self.target) != set(other.source):
            raise ValueError("maps do not compose")
        flag = Continuity.HOMEOMORPHISM if self.continuity is other.continuity is Continuity.HOMEOMORPHISM else Continuity.BIJECTION_ONLY
        return PointBijection.from_forward({a: other.forward[b] for a, b in self.forward.items()}, flag)


def compose_operator(f: FunctionOnSet, h: PointBijection) -> FunctionOnSet:
    """``f o h^{-1}``: the function on the target of h."""
    if f.domain != h.source:
        raise ValueError("domain of f must be the source of h")
    return FunctionOnSet({q: f(p) for p, q in h.forward.items()})


def move_isolated_point(sigma1: Iterable, x, y) -> PointBijection:
    """Identity on sigma1 and ``x -> y``."""
    s1 = as_finite_set(sigma1)
    x, y = pt(x), pt(y)
    if x in s1 or y in s1:
        raise ValueError("x and y must lie outside sigma1")
    fwd = {p: p for p in s1}
    fwd[x] = y
    return PointBijection.from_forward(fwd, Continuity.HOMEOMORPHISM)


def order_matching_homeo(sigma: RayPartition, tau: RayPartition) -> PointBijection:
    """Ray j of sigma onto ray j of tau preserving the order by modulus; 0 -> 0."""
    if sigma.leftovers or tau.leftovers:
        raise ValueError("both partitions must be strict")
    if sigma.k != tau.k:
        raise ValueError(f"ray counts differ ({sigma.k} vs {tau.k})")
    fwd = {ORIGIN: ORIGIN}
    for j, (a, b) in enumerate(zip(sigma.rays, tau.rays)):
        if len(a) != len(b):
            raise ValueError(f"ray {j} has {len(a)} points in sigma but {len(b)} in tau")
        fwd.update(zip(a, b))
    return PointBijection.from_forward(fwd, Continuity.HOMEOMORPHISM)


# -- distortion -----------------------------------------------------------------


@dataclass(frozen=True)
class DistortionReport:
    """Observed ratios ``||Phi f|| / ||f||`` over a finite family.

    Only the observed range is reported; it bounds the operator norms of Phi
    and Phi^{-1} from below, never from above.  ``tainted`` is set when a norm
    on either side was only a lower bound.
    """

    norm: str
    ratios: tuple
    max_ratio: object
    min_ratio: object
    max_witness: int
    min_witness: int
    tainted: bool = False
    rows: tuple = ()
    passed: Optional[bool] = None


def _ratio(a, b):
    if b == 0:
        return Fraction(1) if a == 0 else float("inf")
    return a / b


def _summarise(norm: str, pairs: Sequence, tainted: bool, rows=(), passed=None) -> DistortionReport:
    ratios = tuple(_ratio(after, before) for before, after in pairs)
    hi = max(range(len(ratios)), key=lambda i: (ratios[i], -i))
    lo = min(range(len(ratios)), key=lambda i: (ratios[i], i))
    return DistortionReport(norm, ratios, ratios[hi], ratios[lo], hi, lo, tainted, tuple(rows), passed)


def _norm_of(f: FunctionOnSet, norm: str, cfg: SearchConfig, partition=None, z=None) -> NormReport:
    if norm == "BV":
        return bv_norm(f, f.domain, cfg)
    if norm == "Sp":
        return spoke_norm(f, partition if partition is not None else classify_rays(f.domain))
    if norm == "D":
        if z is None:
            raise ValueError("the D norm needs the isolated point z")
        return d_norm(f, [p for p in f.domain if p != z], z, cfg)
    raise ValueError(f"unknown norm {norm!r}; use BV, Sp or D")


def distortion_estimate(
    h: PointBijection,
    family: Sequence[FunctionOnSet],
    norm: str = "BV",
    cfg: SearchConfig = SearchConfig(),
    z=None,
) -> DistortionReport:
    """Ratios of the norm of ``Phi f = f o h^{-1}`` to the norm of f over ``family``.

    For the D norm, ``z`` is the isolated point of the source; its image is
    used on the target side.
    """
    if not family:
        raise ValueError("the test family is empty")
    pairs, tainted = [], False
    zt = None if z is None else h(z)
    for f in family:
        a = _norm_of(f, norm, cfg, z=None if z is None else pt(z))
        b = _norm_of(compose_operator(f, h), norm, cfg, z=zt)
        tainted = tainted or not (a.exact and b.exact)
        pairs.append((a.value, b.value))
    return _summarise(norm, pairs, tainted)


# -- named constructions ------------------------------------------------------------

def canonical_angles(k: int) -> list:
    """Axes first (0, pi, pi/2, 3pi/2 as multiples of pi), then odd multiples of pi/8 in radians."""
    axes = [Fraction(0), Fraction(1), Fraction(1, 2), Fraction(3, 2)]
    extra = [(2 * j + 1) * math.pi / 8 for j in range(max(k - 4, 0))]
    return (axes + extra)[:k]


def canonical_kray(k: int, N: int, rule=harmonic) -> tuple:
    """Strict k-ray spec used by the demos and its partition truncated at N."""
    spec = kray_set(canonical_angles(k), rule)
    return spec, classify_rays(spec, N)


def interleaving_map(k: int, l: int, N: int) -> tuple:
    """Bijection from a strict k-ray truncation (N points per ray) onto an l-ray one.

    Rays 1 and 2 of sigma (and, when l = 1, every further ray) are interleaved
    round-robin into ray 1 of tau, so ``lambda_{1,i}`` lands at position
    2i - 1 and ``lambda_{2,i}`` at 2i when exactly two rays share it.  Ray j >= 3
    goes to ray min(j - 1, l) of tau.
    """
    if not k > l >= 1:
        raise ValueError("need k > l >= 1")
    _, sp = canonical_kray(k, N)
    groups = [[] for _ in range(l)]
    for j in range(k):
        groups[0 if j < 2 else min(j - 1, l - 1)].append(j)
    tspec = kray_set(canonical_angles(l), harmonic)
    fwd = {ORIGIN: ORIGIN}
    for t, g in enumerate(groups):
        r = len(g)
        target = tspec.rays[t].points(N * r)
        for a, j in enumerate(g):
            for i, p in enumerate(sp.rays[j]):
                fwd[p] = target[i * r + a]
    h = PointBijection.from_forward(fwd, Continuity.HOMEOMORPHISM)
    return h, sp, classify_rays(h.target)


def interleaving_demo(k: int = 2, l: int = 1, n_max: int = 8, N: Optional[int] = None) -> DistortionReport:
    """Spoke norms of ``f_n`` (indicator of the n outermost points of ray 1) and of its image.

    ``||f_n||_Sp(k)`` is 2 for every n while the image alternates 1, 0 along a
    single ray of tau and has spoke norm at least 2n.
    """
    N = max(n_max, 1) if N is None else N
    if N < n_max:
        raise ValueError("need N >= n_max so that f_n fits on ray 1")
    h, sp, tp = interleaving_map(k, l, N)
    rows, pairs, ok = [], [], True
    for n in range(1, n_max + 1):
        support = set(sp.rays[0][:n])
        f = FunctionOnSet({p: int(p in support) for p in h.source})
        a = spoke_norm(f, sp).value
        b = spoke_norm(compose_operator(f, h), tp).value
        ok = ok and a == 2 and b >= 2 * n
        rows.append((n, a, b))
        pairs.append((a, b))
    return _summarise("Sp", pairs, False, rows, ok)


def swap_map(N: int) -> PointBijection:
    """On ``{0} u {1/n : n <= N}``: swap 0 and 1, fix everything else."""
    pts = truncate(kray_set([0], harmonic), N)
    fwd = {p: p for p in pts}
    fwd[ORIGIN], fwd[pt(1)] = pt(1), ORIGIN
    return PointBijection.from_forward(fwd, Continuity.BIJECTION_ONLY)


def swap_family(N: int, size: int = 100, seed: int = 0) -> list:
    """Indicators, the identity, +-1 alternations and random rational tables."""
    pts = truncate(kray_set([0], harmonic), N)
    fam = [FunctionOnSet.indicator(pts, [p]) for p in pts]
    fam.append(FunctionOnSet.from_rule(pts, lambda p: p.x))
    fam.append(FunctionOnSet.constant(pts, 1))
    rng = random.Random(seed)
    while len(fam) < size:
        if len(fam) % 2:
            fam.append(FunctionOnSet({p: rng.choice((-1, 1)) for p in pts}))
        else:
            fam.append(FunctionOnSet({p: Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for p in pts}))
    return fam[:size]


def swap_bijection_demo(N: int = 8, size: int = 100, seed: int = 0, cfg: SearchConfig = SearchConfig()) -> DistortionReport:
    """Variation ratios ``var(Phi f) / var(f)`` for the 0 <-> 1 swap; all must lie in [1/3, 3]."""
    from .variation import var_search

    h = swap_map(N)
    pairs, tainted = [], False
    for f in swap_family(N, size, seed):
        a = var_search(f, f.domain, cfg)
        g = compose_operator(f, h)
        b = var_search(g, g.domain, cfg)
        tainted = tainted or a.status is not Status.EXACT or b.status is not Status.EXACT
        pairs.append((a.value, b.value))
    rep = _summarise("var", pairs, tainted)
    ok = not tainted and all(Fraction(1, 3) <= r <= 3 for r in rep.ratios)
    return DistortionReport(**{**rep.__dict__, "passed": ok})


# -- locally piecewise affine maps ------------------------------------------------------


def _cross(o: PlanarPoint, a: PlanarPoint, b: PlanarPoint) -> Fraction:
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)


@dataclass(frozen=True)
class ConvexPolygon:
    """Strictly convex polygon; vertices counterclockwise."""

    vertices: tuple

    def __post_init__(self):
        vs = tuple(pt(v) for v in self.vertices)
        n = len(vs)
        if n < 3:
            raise ValueError("a polygon needs at least 3 vertices")
        for i in range(n):
            if _cross(vs[i], vs[(i + 1) % n], vs[(i + 2) % n]) <= 0:
                raise ValueError("vertices must be strictly convex and counterclockwise")
        # the turning number must be one (rules out star-shaped vertex orders)
        if sum(_cross(vs[0], vs[i], vs[i + 1]) > 0 for i in range(1, n - 1)) != n - 2:
            raise ValueError("vertices do not bound a simple convex polygon")
        object.__setattr__(self, "vertices", vs)

    @property
    def n(self) -> int:
        return len(self.vertices)

    def sides(self) -> list:
        vs = self.vertices
        return [(vs[j], vs[(j + 1) % self.n]) for j in range(self.n)]

    def contains(self, p, strict: bool = False) -> bool:
        p = pt(p)
        for a, b in self.sides():
            c = _cross(a, b, p)
            if c < 0 or (strict and c == 0):
                return False
        return True


@dataclass(frozen=True)
class AffineMap:
    """``p -> M p + t`` with a 2x2 rational matrix ``M = ((a, b), (c, d))``."""

    matrix: tuple
    translation: PlanarPoint = PlanarPoint(Fraction(0), Fraction(0))

    def __post_init__(self):
        (a, b), (c, d) = self.matrix
        m = ((as_fraction(a), as_fraction(b)), (as_fraction(c), as_fraction(d)))
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "translation", pt(self.translation))

    @classmethod
    def identity(cls) -> "AffineMap":
        return cls(((1, 0), (0, 1)))

    @classmethod
    def from_triangles(cls, src: Sequence, dst: Sequence) -> "AffineMap":
        """The affine map sending the three points of ``src`` to those of ``dst``."""
        p0, p1, p2 = (pt(p) for p in src)
        q0, q1, q2 = (pt(q) for q in dst)
        u, v = p1 - p0, p2 - p0
        det = u.x * v.y - v.x * u.y
        if det == 0:
            raise ValueError("source triangle is degenerate")
        U, V = q1 - q0, q2 - q0
        # M [u v] = [U V]  =>  M = [U V] [u v]^{-1}
        inv = ((v.y / det, -v.x / det), (-u.y / det, u.x / det))
        m = (
            (U.x * inv[0][0] + V.x * inv[1][0], U.x * inv[0][1] + V.x * inv[1][1]),
            (U.y * inv[0][0] + V.y * inv[1][0], U.y * inv[0][1] + V.y * inv[1][1]),
        )
        t = q0 - PlanarPoint(m[0][0] * p0.x + m[0][1] * p0.y, m[1][0] * p0.x + m[1][1] * p0.y)
        return cls(m, t)

    @property
    def det(self) -> Fraction:
        (a, b), (c, d) = self.matrix
        return a * d - b * c

    def __call__(self, p) -> PlanarPoint:
        p = pt(p)
        (a, b), (c, d) = self.matrix
        return PlanarPoint(a * p.x + b * p.y + self.translation.x, c * p.x + d * p.y + self.translation.y)

    def inverse(self) -> "AffineMap":
        det = self.det
        if det == 0:
            raise ValueError("affine map is not invertible")
        (a, b), (c, d) = self.matrix
        m = ((d / det, -b / det), (-c / det, a / det))
        t = self.translation
        return AffineMap(m, PlanarPoint(-(m[0][0] * t.x + m[0][1] * t.y), -(m[1][0] * t.x + m[1][1] * t.y)))


@dataclass(frozen=True)
class LocallyPiecewiseAffineMap:
    """Equal to ``alpha`` off the interior of C; affine on each fan triangle of C around x0."""

    polygon: ConvexPolygon
    alpha: AffineMap
    x0: PlanarPoint
    y0: PlanarPoint
    pieces: tuple  # alpha_j on T_j = triangle(s_j, x0)
    conditions: dict = field(default_factory=dict, compare=False)

    def triangles(self) -> list:
        return [(a, b, self.x0) for a, b in self.polygon.sides()]

    def image_triangles(self) -> list:
        return [(self.alpha(a), self.alpha(b), self.y0) for a, b in self.polygon.sides()]


def _in_triangle(p, tri) -> bool:
    a, b, c = tri
    s = _cross(a, b, c)
    d1, d2, d3 = _cross(a, b, p), _cross(b, c, p), _cross(c, a, p)
    if s > 0:
        return d1 >= 0 and d2 >= 0 and d3 >= 0
    return d1 <= 0 and d2 <= 0 and d3 <= 0


def lpam_construct(C: ConvexPolygon, alpha: AffineMap, x0, y0) -> LocallyPiecewiseAffineMap:
    """Build the per-triangle maps and verify the four defining conditions exactly.

    Raises if x0 is not interior to C, alpha is singular, or y0 is not interior
    to alpha(C).  ``conditions`` records each check:

    * ``outside``: every alpha_j agrees with alpha on its side s_j (so h equals
      alpha on the boundary and, by definition, outside C);
    * ``onto``: alpha_j maps the vertices of T_j to those of the image triangle,
      which is nondegenerate, so T_j is mapped onto it;
    * ``affine``: each piece is an invertible affine map;
    * ``centre``: every piece sends x0 to y0;
    * ``edges``: neighbouring pieces agree on their shared edge [v_j, x0].
    """
    x0, y0 = pt(x0), pt(y0)
    if alpha.det == 0:
        raise ValueError("alpha must be invertible")
    if not C.contains(x0, strict=True):
        raise ValueError("x0 must lie in the interior of C")
    img = [alpha(v) for v in C.vertices]
    if alpha.det < 0:
        img = img[::-1]
    if not ConvexPolygon(tuple(img)).contains(y0, strict=True):
        raise ValueError("y0 must lie in the interior of alpha(C)")
    pieces = tuple(AffineMap.from_triangles((a, b, x0), (alpha(a), alpha(b), y0)) for a, b in C.sides())
    h = LocallyPiecewiseAffineMap(C, alpha, x0, y0, pieces)
    sides = C.sides()
    n = C.n
    cond = {
        "outside": all(pieces[j](a) == alpha(a) and pieces[j](b) == alpha(b) for j, (a, b) in enumerate(sides)),
        "onto": all(
            (pieces[j](a), pieces[j](b), pieces[j](x0)) == (alpha(a), alpha(b), y0) and _cross(alpha(a), alpha(b), y0) != 0
            for j, (a, b) in enumerate(sides)
        ),
        "affine": all(p.det != 0 for p in pieces),
        "centre": all(p(x0) == y0 for p in pieces),
        "edges": all(pieces[j](sides[j][0]) == pieces[j - 1](sides[j][0]) and pieces[j](x0) == pieces[j - 1](x0) for j in range(n)),
    }
    object.__setattr__(h, "conditions", cond)
    return h


def lpam_apply(h: LocallyPiecewiseAffineMap, p) -> PlanarPoint:
    p = pt(p)
    if not h.polygon.contains(p, strict=True):
        return h.alpha(p)
    for piece, tri in zip(h.pieces, h.triangles()):
        if _in_triangle(p, tri):
            return piece(p)
    raise AssertionError("interior point not covered by the fan")  # pragma: no cover


def lpam_inverse_apply(h: LocallyPiecewiseAffineMap, q) -> PlanarPoint:
    q = pt(q)
    for piece, tri in zip(h.pieces, h.image_triangles()):
        if _in_triangle(q, tri):
            return piece.inverse()(q)
    return h.alpha.inverse()(q)


def lpam_transport(h: LocallyPiecewiseAffineMap, points: Iterable) -> PointBijection:
    """The restriction of h to a finite set, as a point bijection."""
    fwd = {p: lpam_apply(h, p) for p in as_finite_set(points)}
    return PointBijection.from_forward(fwd, Continuity.HOMEOMORPHISM)


def random_lpam_instance(rng: random.Random, n: int) -> tuple:
    """A random (C, alpha, x0, y0) with C a convex n-gon and both centres interior."""
    while True:
        # rational points on the unit circle at sorted random angles
        ts = sorted({Fraction(rng.randint(-40, 40), rng.randint(1, 12)) for _ in range(n)})
        if len(ts) < n:
            continue
        vs = [PlanarPoint((1 - t * t) / (1 + t * t), 2 * t / (1 + t * t)) for t in ts]
        scale = Fraction(rng.randint(1, 5))
        shift = PlanarPoint(Fraction(rng.randint(-5, 5)), Fraction(rng.randint(-5, 5)))
        vs = [v.scale(scale) + shift for v in vs]
        try:
            C = ConvexPolygon(tuple(vs))
        except ValueError:
            continue
        break
    while True:
        m = ((rng.randint(-3, 3), rng.randint(-3, 3)), (rng.randint(-3, 3), rng.randint(-3, 3)))
        alpha = AffineMap(m, (rng.randint(-4, 4), rng.randint(-4, 4)))
        if alpha.det != 0:
            break

    def interior(points):
        w = [Fraction(rng.randint(1, 9)) for _ in points]
        s = sum(w)
        return PlanarPoint(sum(wi * p.x for wi, p in zip(w, points)) / s, sum(wi * p.y for wi, p in zip(w, points)) / s)

    x0 = interior(C.vertices)
    y0 = interior([alpha(v) for v in C.vertices])
    return C, alpha, x0, y0
