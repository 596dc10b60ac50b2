"""Move one interior point of a polygon while keeping everything outside fixed."""
from fractions import Fraction

from bvsigma import AffineMap, ConvexPolygon, lpam_apply, lpam_construct, pt

F = Fraction
square = ConvexPolygon((pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)))
h = lpam_construct(square, AffineMap.identity(), pt(F(1, 2), F(1, 2)), pt(F(3, 4), F(1, 2)))
print("defining conditions:", h.conditions)
for p in (pt(F(1, 2), F(1, 2)), pt(F(1, 4), F(1, 2)), pt(F(1, 2), F(1, 4)), pt(1, F(1, 3)), pt(2, 2)):
    print(f"{p} -> {lpam_apply(h, p)}")
