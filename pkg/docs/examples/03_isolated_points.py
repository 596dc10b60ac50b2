"""The isolated-point norm and moving an isolated point without changing it."""
from fractions import Fraction

from bvsigma import FunctionOnSet, bv_norm, compose_operator, d_norm, move_isolated_point, pt
from bvsigma.geometry import ORIGIN

s1 = [pt(-1), pt(1)]
sigma = s1 + [ORIGIN]
for name, f in (("bump at 0", FunctionOnSet.indicator(sigma, [ORIGIN])), ("constant 1", FunctionOnSet.constant(sigma, 1))):
    print(f"{name}: D = {d_norm(f, s1, ORIGIN).value}, BV = {bv_norm(f, sigma).value}")

# send 0 far away; the D norm only sees |f(z)| at the isolated point
h = move_isolated_point(s1, ORIGIN, pt(5, 2))
f = FunctionOnSet({pt(-1): Fraction(1, 2), pt(1): -2, ORIGIN: 3})
g = compose_operator(f, h)
print("before the move:", d_norm(f, s1, ORIGIN).value, " after:", d_norm(g, s1, pt(5, 2)).value)
print("BV norms before/after:", bv_norm(f, sigma).value, bv_norm(g, g.domain).value)
