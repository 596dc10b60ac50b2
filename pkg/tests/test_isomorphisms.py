import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from bvsigma import (
    AffineMap,
    ConvexPolygon,
    FunctionOnSet,
    PointBijection,
    classify_rays,
    compose_operator,
    d_norm,
    distortion_estimate,
    interleaving_demo,
    kray_set,
    lpam_apply,
    lpam_construct,
    move_isolated_point,
    order_matching_homeo,
    pt,
    spoke_norm,
    swap_bijection_demo,
    truncate,
)
from bvsigma.csets import geometric, harmonic
from bvsigma.geometry import ORIGIN
from bvsigma.isomorphisms import (
    Continuity,
    interleaving_map,
    lpam_inverse_apply,
    lpam_transport,
    random_lpam_instance,
    swap_family,
    swap_map,
)

F = Fraction
SQUARE = ConvexPolygon((pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)))


def random_table(r, pts, lo=-4, hi=4):
    return FunctionOnSet({p: F(r.randint(lo, hi), r.randint(1, 3)) for p in pts})


def test_identity_operator():
    pts = truncate(kray_set([0, 1]), 3)
    f = random_table(random.Random(1), pts)
    assert compose_operator(f, PointBijection.identity(pts)) == f


def test_swap_moves_indicator_of_zero():
    h = swap_map(5)
    chi0 = FunctionOnSet.indicator(h.source, [ORIGIN])
    assert compose_operator(chi0, h) == FunctionOnSet.indicator(h.target, [pt(1)])


def test_order_matching_transports_by_index():
    sp = classify_rays(truncate(kray_set([0], harmonic), 6))
    tp = classify_rays(truncate(kray_set([0], geometric), 6))
    h = order_matching_homeo(sp, tp)
    assert h.continuity is Continuity.HOMEOMORPHISM
    for a, b in zip(sp.rays[0], tp.rays[0]):
        assert h(a) == b
    assert h(ORIGIN) == ORIGIN
    same = order_matching_homeo(sp, sp)
    assert all(a == b for a, b in same.forward.items())


def test_order_matching_errors():
    one = classify_rays(truncate(kray_set([0]), 3))
    two = classify_rays(truncate(kray_set([0, 1]), 3))
    with pytest.raises(ValueError):
        order_matching_homeo(one, two)
    with pytest.raises(ValueError):
        order_matching_homeo(one, classify_rays(truncate(kray_set([0]), 4)))


def test_bijection_tables_must_agree():
    with pytest.raises(ValueError):
        PointBijection({pt(0): pt(1)}, {pt(1): pt(2)})
    with pytest.raises(ValueError):
        PointBijection.from_forward({pt(0): pt(1), pt(2): pt(1)})


@given(st.integers(0, 10**6))
def test_operator_is_an_algebra_isomorphism(seed):
    r = random.Random(seed)
    src = truncate(kray_set([0, 1]), 3)
    tgt = list(truncate(kray_set([F(1, 2), F(3, 2)], geometric), 3))
    r.shuffle(tgt)
    h = PointBijection.from_forward(dict(zip(src, tgt)))
    f, g = random_table(r, src), random_table(r, src)
    one = FunctionOnSet.constant(src, 1)
    assert compose_operator(f + g, h) == compose_operator(f, h) + compose_operator(g, h)
    assert compose_operator(f * g, h) == compose_operator(f, h) * compose_operator(g, h)
    assert compose_operator(one, h) == FunctionOnSet.constant(h.target, 1)
    back = compose_operator(compose_operator(f, h), h.inverted())
    assert back == f
    assert h.then(h.inverted()).forward == {p: p for p in src}


def test_move_isolated_point_examples():
    s1 = [pt(-1), pt(1)]
    h = move_isolated_point(s1, ORIGIN, pt(5))
    chi = FunctionOnSet.indicator(s1 + [ORIGIN], [ORIGIN])
    assert compose_operator(chi, h) == FunctionOnSet.indicator(s1 + [pt(5)], [pt(5)])
    same = move_isolated_point(s1, ORIGIN, ORIGIN)
    assert same.forward == PointBijection.identity(s1 + [ORIGIN]).forward
    with pytest.raises(ValueError):
        move_isolated_point(s1, pt(1), pt(5))
    with pytest.raises(ValueError):
        move_isolated_point(s1, ORIGIN, pt(-1))


@settings(max_examples=40)
@given(st.integers(0, 10**6))
def test_isolated_point_move_is_d_isometry(seed):
    r = random.Random(seed)
    s1 = [pt(r.randint(-3, 3), r.randint(-3, 3)) for _ in range(4)]
    s1 = sorted(set(s1))
    x, y = pt(10, 10), pt(r.randint(4, 9), r.randint(-9, 9))
    h = move_isolated_point(s1, x, y)
    f = random_table(r, s1 + [x])
    assert d_norm(compose_operator(f, h), s1, y).value == d_norm(f, s1, x).value


@settings(max_examples=40)
@given(st.integers(0, 10**6), st.integers(1, 3))
def test_order_matching_is_spoke_isometry(seed, k):
    r = random.Random(seed)
    angles = [F(j, 2) for j in range(k)]
    sp = classify_rays(truncate(kray_set(angles, harmonic), 5))
    tp = classify_rays(truncate(kray_set(list(reversed(angles)), "inverse_square"), 5))
    h = order_matching_homeo(sp, tp)
    f = random_table(r, sp.points())
    assert spoke_norm(compose_operator(f, h), tp).value == spoke_norm(f, sp).value


def test_interleave_table():
    rep = interleaving_demo(2, 1, 8)
    assert rep.rows == tuple((n, 2, 2 * n) for n in range(1, 9))
    assert rep.passed
    assert rep.max_ratio == 8 and rep.max_witness == 7


def test_interleave_general_and_errors():
    rep = interleaving_demo(3, 2, 4, N=5)
    assert rep.passed and all(a == 2 and b >= 2 * n for n, a, b in rep.rows)
    with pytest.raises(ValueError):
        interleaving_demo(1, 1, 2)
    with pytest.raises(ValueError):
        interleaving_demo(2, 1, 5, N=3)
    h, sp, tp = interleaving_map(2, 1, 3)
    assert [h(p) for p in sp.rays[0]] == [tp.rays[0][0], tp.rays[0][2], tp.rays[0][4]]


def test_swap_demo_small():
    rep = swap_bijection_demo(N=4, size=12)
    assert rep.passed and not rep.tainted
    assert all(F(1, 3) <= r <= 3 for r in rep.ratios)
    fam = swap_family(4, 12)
    const = [i for i, f in enumerate(fam) if len(set(f.values())) == 1]
    assert all(rep.ratios[i] == 1 for i in const)


def test_distortion_identity():
    pts = truncate(kray_set([0, 1]), 2)
    r = random.Random(4)
    fam = [random_table(r, pts) for _ in range(5)]
    for norm in ("BV", "Sp"):
        rep = distortion_estimate(PointBijection.identity(pts), fam, norm)
        assert set(rep.ratios) == {1} and not rep.tainted
    with pytest.raises(ValueError):
        distortion_estimate(PointBijection.identity(pts), [], "BV")
    with pytest.raises(ValueError):
        distortion_estimate(PointBijection.identity(pts), fam, "L2")


def test_distortion_d_norm_under_move():
    s1 = [pt(-1), pt(1)]
    h = move_isolated_point(s1, ORIGIN, pt(5))
    r = random.Random(9)
    fam = [random_table(r, s1 + [ORIGIN]) for _ in range(6)]
    rep = distortion_estimate(h, fam, "D", z=ORIGIN)
    assert all(x == 1 for x in rep.ratios)


def test_convex_polygon_validation():
    with pytest.raises(ValueError):
        ConvexPolygon((pt(0, 0), pt(1, 0)))
    with pytest.raises(ValueError):
        ConvexPolygon((pt(0, 0), pt(0, 1), pt(1, 1), pt(1, 0)))  # clockwise
    with pytest.raises(ValueError):
        ConvexPolygon((pt(0, 0), pt(1, 0), pt(2, 0), pt(1, 1)))  # collinear vertices
    assert SQUARE.contains(pt(F(1, 2), F(1, 2)), strict=True)
    assert SQUARE.contains(pt(1, F(1, 2))) and not SQUARE.contains(pt(1, F(1, 2)), strict=True)


def test_affine_map_basics():
    m = AffineMap(((2, 1), (0, 1)), (1, -1))
    p = pt(F(1, 3), 2)
    assert m.inverse()(m(p)) == p
    tri = (pt(0, 0), pt(1, 0), pt(0, 1))
    fitted = AffineMap.from_triangles(tri, [m(q) for q in tri])
    assert fitted == m
    with pytest.raises(ValueError):
        AffineMap.from_triangles((pt(0), pt(1), pt(2)), tri)


def test_lpam_identity():
    x0 = pt(F(1, 3), F(1, 2))
    h = lpam_construct(SQUARE, AffineMap.identity(), x0, x0)
    assert all(h.conditions.values())
    for q in (pt(F(1, 5), F(4, 5)), pt(F(2, 3), F(1, 7)), pt(3, 3)):
        assert lpam_apply(h, q) == q


def test_lpam_unit_square_move():
    x0, y0 = pt(F(1, 2), F(1, 2)), pt(F(3, 4), F(1, 2))
    h = lpam_construct(SQUARE, AffineMap.identity(), x0, y0)
    assert all(h.conditions.values())
    assert lpam_apply(h, x0) == y0
    for a, b in SQUARE.sides():
        for s in (F(0), F(1, 4), F(1, 2), F(1)):
            q = a + (b - a).scale(s)
            assert lpam_apply(h, q) == q  # boundary fixed pointwise
    for j, (a, _) in enumerate(SQUARE.sides()):
        mid = a + (x0 - a).scale(F(1, 2))
        assert h.pieces[j](mid) == h.pieces[j - 1](mid)


def test_lpam_moves_an_isolated_point_and_fixes_the_rest():
    # a point inside a small square is moved; the rest of the set lies outside it
    C = ConvexPolygon((pt(4, 4), pt(6, 4), pt(6, 6), pt(4, 6)))
    x, y = pt(F(9, 2), F(9, 2)), pt(F(11, 2), F(23, 4))
    s1 = [pt(0, 0), pt(1, 0), pt(F(1, 2), 0), pt(0, 1)]
    h = lpam_construct(C, AffineMap.identity(), x, y)
    moved = lpam_transport(h, s1 + [x])
    assert moved(x) == y and all(moved(p) == p for p in s1)
    f = random_table(random.Random(2), s1 + [x])
    assert d_norm(compose_operator(f, moved), s1, y).value == d_norm(f, s1, x).value


def test_lpam_errors():
    alpha = AffineMap.identity()
    with pytest.raises(ValueError):
        lpam_construct(SQUARE, alpha, pt(1, F(1, 2)), pt(F(1, 2), F(1, 2)))
    with pytest.raises(ValueError):
        lpam_construct(SQUARE, alpha, pt(F(1, 2), F(1, 2)), pt(2, 2))
    with pytest.raises(ValueError):
        lpam_construct(SQUARE, AffineMap(((1, 1), (1, 1))), pt(F(1, 2), F(1, 2)), pt(0, 0))


def test_random_lpam_is_a_bijection_on_each_triangle():
    rng = random.Random(17)
    for t in range(15):
        C, alpha, x0, y0 = random_lpam_instance(rng, 3 + t % 3)
        h = lpam_construct(C, alpha, x0, y0)
        assert all(h.conditions.values())
        for tri, img in zip(h.triangles(), h.image_triangles()):
            for w in ((1, 1, 1), (1, 2, 3), (5, 1, 1)):
                s = sum(w)
                p = pt(
                    sum(F(wi) * v.x for wi, v in zip(w, tri)) / s,
                    sum(F(wi) * v.y for wi, v in zip(w, tri)) / s,
                )
                q = lpam_apply(h, p)
                assert lpam_inverse_apply(h, q) == p
        far = pt(100, -100)
        assert lpam_apply(h, far) == alpha(far)
