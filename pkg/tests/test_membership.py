import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from bvsigma import (
    CustomRule,
    FunctionOnSet,
    Indicator,
    Poly2,
    RayTable,
    ac_test_kray,
    bv_norm,
    classify_rays,
    d_norm,
    extend_by_point,
    gn_truncation,
    kray_set,
    parabola_set,
    poly_eval,
    pt,
    real_cset,
    restrict,
    spoke_norm,
    truncate,
)
from bvsigma.geometry import ORIGIN
from bvsigma.membership import Verdict, harmonic_increment_rule

F = Fraction
THREE_RAYS = kray_set([0, F(1, 2), 1], "geometric")


def test_poly_eval_examples():
    x = Poly2({(1, 0): 1})
    assert poly_eval(x, pt(F(1, 2), F(1, 4))) == F(1, 2)
    assert poly_eval(Poly2({(2, 1): 1}), pt(2, 3)) == 12
    one = Poly2({(0, 0): 1})
    assert all(poly_eval(one, p) == 1 for p in (pt(0), pt(5, -7), pt(F(1, 3), 2)))
    assert Poly2.identity()(pt(1, 2)) == complex(1, 2)
    assert Poly2({(0, 1): 1j, (1, 0): 0}).coefficients == {(0, 1): 1j}
    with pytest.raises(ValueError):
        Poly2({(-1, 0): 1})


def test_rules_on_points():
    ind = Indicator([pt(1)])
    assert ind(pt(1)) == 1 and ind(pt(2)) == 0
    sq = CustomRule(lambda p: p.x * p.x, "square")
    assert sq.on_points([pt(2), pt(3)]) == FunctionOnSet({pt(2): 4, pt(3): 9})


def test_ray_table():
    spec = kray_set([0, 1], extras=[pt(0, 1)])
    rule = RayTable(spec, [lambda i: i, lambda i: -i], at_zero=7, extras={pt(0, 1): 3})
    f = rule.on_truncation(spec, 3)
    assert f(ORIGIN) == 7 and f(pt(0, 1)) == 3
    assert f(pt(F(1, 3))) == 3 and f(pt(F(-1, 2))) == -2
    assert rule(pt(F(1, 2))) == 2 and rule(pt(0, 1)) == 3
    with pytest.raises(KeyError):
        rule(pt(F(2, 3)))
    with pytest.raises(ValueError):
        RayTable(spec, [lambda i: i])


def test_restrict_examples():
    pts = [pt(-1), ORIGIN, pt(1)]
    chi = FunctionOnSet.indicator(pts, [ORIGIN])
    assert restrict(chi, pts) == chi
    assert restrict(chi, [pt(-1), pt(1)]) == FunctionOnSet.constant([pt(-1), pt(1)], 0)
    with pytest.raises(ValueError):
        restrict(chi, [pt(3)])


@settings(max_examples=30)
@given(st.integers(0, 10**6))
def test_restriction_never_increases_bv(seed):
    r = random.Random(seed)
    pts = sorted({pt(r.randint(-3, 3), r.randint(-3, 3)) for _ in range(5)})
    f = FunctionOnSet({p: r.randint(-3, 3) for p in pts})
    sub = pts[: max(1, len(pts) - 2)]
    assert bv_norm(restrict(f, sub), sub).value <= bv_norm(f, pts).value


def test_gn_truncation_examples():
    spec = real_cset()
    ident = CustomRule(lambda p: p.x)
    full = ident.on_truncation(spec, 6)
    assert gn_truncation(ident, spec, 6, 6) == full
    flat = gn_truncation(ident, spec, 1, 6)
    # only the point 1 survives the cutoff |z| >= 1
    assert flat(pt(1)) == 1 and all(flat(p) == 0 for p in full.domain if p != pt(1))
    with pytest.raises(ValueError):
        gn_truncation(ident, spec, 6, 5)
    with pytest.raises(ValueError):
        gn_truncation(ident, parabola_set(), 2, 5)


def test_gn_constant_when_cutoff_excludes_all_ray_points():
    spec = kray_set([0], lambda i: F(1, 4 * i))
    g = gn_truncation(CustomRule(lambda p: p.x + 5), spec, 2, 3)
    assert set(g.values()) == {5}


@pytest.mark.parametrize(
    "rule",
    [
        CustomRule(lambda p: p.x, "x"),
        Poly2({(1, 0): 1, (0, 2): 3, (1, 1): -2}),
        CustomRule(lambda p: p.x * p.x - p.y, "x^2 - y"),
    ],
)
@pytest.mark.parametrize("spec", [real_cset(), THREE_RAYS])
def test_gn_approximation_is_monotone(rule, spec):
    N = 40
    part = classify_rays(truncate(spec, N))
    f = rule.on_truncation(spec, N)
    dists = []
    for n in range(1, 21):
        try:
            g = gn_truncation(rule, spec, n, N)
        except ValueError:
            break
        dists.append(spoke_norm(f - g, part).value)
    assert len(dists) >= 5
    assert all(b <= a for a, b in zip(dists, dists[1:]))
    assert dists[-1] < dists[0]


def test_extend_by_point_example():
    s1 = [pt(-1), pt(1)]
    f = FunctionOnSet.indicator(s1, [pt(1)])
    p = Poly2({(1, 0): F(1, 2), (0, 0): F(1, 2)})
    g = extend_by_point(f, p, ORIGIN, 0)
    assert (g(pt(-1)), g(pt(1)), g(ORIGIN)) == (0, 1, 0)
    with pytest.raises(ValueError):
        extend_by_point(f, p, pt(1), 0)


@settings(max_examples=40)
@given(st.integers(0, 10**6))
def test_extension_distance_identity(seed):
    r = random.Random(seed)
    s1 = sorted({pt(r.randint(-3, 3), r.randint(-3, 3)) for _ in range(4)})
    z = pt(4, r.randint(-3, 3))
    f = FunctionOnSet({q: F(r.randint(-4, 4), r.randint(1, 3)) for q in s1 + [z]})
    p = Poly2({(r.randint(0, 2), r.randint(0, 2)): r.randint(-2, 2) for _ in range(3)})
    g = extend_by_point(restrict(f, s1), p, z, f(z))
    lhs = d_norm(f - g, s1, z).value
    rhs = bv_norm(restrict(f, s1) - p.on_points(s1), s1).value
    assert lhs == rhs


def test_extension_of_interpolated_function_is_exact():
    s1 = [pt(0), pt(1), pt(2)]
    p = Poly2({(2, 0): 1, (0, 0): -1})
    f = p.on_points(s1 + [pt(0, 5)]).with_value(pt(0, 5), 9)
    g = extend_by_point(restrict(f, s1), p, pt(0, 5), 9)
    assert d_norm(f - g, s1, pt(0, 5)).value == 0


def test_ac_examples():
    v = ac_test_kray(Poly2.identity(), THREE_RAYS)
    assert v.verdict is Verdict.AC
    chi = ac_test_kray(Indicator([ORIGIN]), real_cset())
    assert chi.verdict is Verdict.NOT_AC and chi.witness == "discontinuous at 0"
    assert all(m == 1 for m in chi.margins)
    spec = real_cset()
    harm = ac_test_kray(harmonic_increment_rule(spec), spec)
    assert harm.verdict is Verdict.NOT_AC and harm.witness == "unbounded variation"
    assert harm.variation_lower_bound > 1


def test_indicator_of_isolated_point_is_ac():
    z = pt(0, 1)
    spec = kray_set([0, 1], extras=[z])
    assert ac_test_kray(Indicator([z]), spec).verdict is Verdict.AC


def test_indicator_of_a_ray_point_is_ac():
    assert ac_test_kray(Indicator([pt(1)]), real_cset()).verdict is Verdict.AC


def test_slow_decay_is_inconclusive():
    # margins decay like 1/log N: neither bounded below nor fast enough
    rule = CustomRule(lambda p: 0.0 if p == ORIGIN else 1.0 / math.log(2 + float(1 / p.x)))
    v = ac_test_kray(rule, real_cset())
    assert v.verdict is Verdict.INCONCLUSIVE


def test_ac_requires_ray_spec_and_valid_schedule():
    with pytest.raises(ValueError):
        ac_test_kray(Poly2.identity(), parabola_set())
    with pytest.raises(ValueError):
        ac_test_kray(Poly2.identity(), real_cset(), schedule=(10, 5))
    with pytest.raises(ValueError):
        ac_test_kray(Poly2.identity(), real_cset(), schedule=(10,))


coeff = st.fractions(min_value=-3, max_value=3, max_denominator=4)


@settings(max_examples=40)
@given(st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)), coeff, max_size=5))
def test_polynomials_are_ac(coeffs):
    assert ac_test_kray(Poly2(coeffs), THREE_RAYS).verdict is Verdict.AC
