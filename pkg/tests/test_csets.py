import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from bvsigma import CSetSpec, RaySpec, classify_rays, kray_set, parabola_set, pt, real_cset, spiral_set, truncate
from bvsigma.csets import angle_key, direction_for, geometric, harmonic, unit_direction
from bvsigma.geometry import ORIGIN

F = Fraction


def test_truncate_examples():
    assert set(truncate(real_cset(), 3)) == {ORIGIN, pt(1), pt(F(1, 2)), pt(F(1, 3))}
    two = kray_set([0, 1])
    assert set(truncate(two, 2)) == {ORIGIN, pt(1), pt(F(1, 2)), pt(-1), pt(F(-1, 2))}
    assert set(truncate(parabola_set(), 2)) == {ORIGIN, pt(1, 1), pt(F(1, 2), F(1, 4))}


def test_truncate_includes_extras_and_rejects_bad_n():
    spec = kray_set([0], extras=[pt(0, 1)])
    assert pt(0, 1) in truncate(spec, 1)
    with pytest.raises(ValueError):
        truncate(spec, 0)


@given(st.integers(1, 3), st.integers(1, 12))
def test_truncate_monotone(k, N):
    spec = kray_set([F(j, 2) for j in range(k)], geometric)
    assert set(truncate(spec, N)) <= set(truncate(spec, N + 1))


def test_classify_finite_examples():
    part = classify_rays([ORIGIN, pt(1), pt(F(1, 2)), pt(-1), pt(F(-1, 2))])
    assert part.k == 2 and part.structural and part.strict
    assert part.directions == (pt(1), pt(-1))
    assert part.rays[0] == (pt(1), pt(F(1, 2)))
    para = classify_rays(truncate(parabola_set(), 4))
    assert para.k == 4 and all(len(r) == 1 for r in para.rays)


def test_classify_spec_example():
    spec = kray_set([0], extras=[pt(0, 1)])
    part = classify_rays(spec)
    assert part.k == 1 and part.leftovers == (pt(0, 1),) and not part.structural
    with pytest.raises(ValueError):
        classify_rays(parabola_set())


def test_classify_requires_origin():
    with pytest.raises(ValueError):
        classify_rays([pt(1), pt(2)])


def test_classify_min_ray_size_moves_small_groups_to_leftovers():
    part = classify_rays([ORIGIN, pt(1), pt(2), pt(0, 3)], min_ray_size=2)
    assert part.k == 1 and part.leftovers == (pt(0, 3),)


@given(st.integers(1, 4), st.integers(1, 8))
def test_classify_truncated_strict_spec(k, N):
    angles = [F(j, 2) for j in range(k)]
    spec = kray_set(angles, "inverse_square")
    part = classify_rays(truncate(spec, N))
    assert part.k == k and part.strict
    for d, ray in zip(part.directions, part.rays):
        assert len(ray) == N
        for p in ray:
            assert p.x * d.y - p.y * d.x == 0
            assert p.x * d.x + p.y * d.y > 0
        mods = [p.norm2() for p in ray]
        assert mods == sorted(mods, reverse=True)


def test_builders():
    real = real_cset()
    assert real.k == 1 and real.rays[0].direction == pt(1)
    three = kray_set([0, F(1, 2), 1], geometric)
    assert three.k == 3 and three.strict
    both = real_cset(harmonic, "geometric")
    assert both.k == 2


def test_spiral_contains_real_ray_and_approximated_points():
    spec = spiral_set(precision=1000)
    pts = set(truncate(spec, 10))
    assert {pt(F(1, n)) for n in range(1, 11)} <= pts
    assert spec.meta()["precision"] == 1000
    off_axis = [p for p in pts if p.y != 0]
    assert off_axis
    for p in off_axis:
        n2 = p.norm2()
        n = round(1 / math.sqrt(float(n2)))
        assert n2 == F(1, n * n)  # exactly of modulus 1/n


def test_rule_must_decrease():
    with pytest.raises(ValueError):
        RaySpec(pt(1), lambda i: F(i))
    with pytest.raises(ValueError):
        RaySpec(pt(1), lambda i: F(1))
    with pytest.raises(ValueError):
        real_cset("nope")


def test_spec_invariants():
    with pytest.raises(ValueError):
        kray_set([0, 2])  # same ray twice
    with pytest.raises(ValueError):
        CSetSpec(rays=(RaySpec(pt(1), harmonic),), extras=(ORIGIN,))
    with pytest.raises(ValueError):
        kray_set([0], extras=[pt(F(1, 2))])
    assert kray_set([0], extras=[pt(F(2, 3))]).extras == (pt(F(2, 3)),)
    with pytest.raises(ValueError):
        RaySpec(pt(1, 1), harmonic)  # not a unit vector


def test_directions():
    assert direction_for(F(1, 2)) == (pt(0, 1), "exact")
    assert direction_for(3)[0] == pt(-1)
    d, note = direction_for(0.3, 10**4)
    assert d.norm2() == 1 and note.startswith("approx")
    assert abs(math.atan2(float(d.y), float(d.x)) - 0.3) < 1e-6
    assert unit_direction(math.pi) == pt(-1)


@given(st.floats(0.01, 2 * math.pi - 0.01), st.floats(0.01, 2 * math.pi - 0.01))
def test_angle_key_orders_like_atan2(a, b):
    p, q = unit_direction(a), unit_direction(b)
    ta = math.atan2(float(p.y), float(p.x)) % (2 * math.pi)
    tb = math.atan2(float(q.y), float(q.x)) % (2 * math.pi)
    if abs(ta - tb) > 1e-9:
        assert (angle_key(p) < angle_key(q)) == (ta < tb)
