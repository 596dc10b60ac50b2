"""Variation and BV norm of functions on small planar sets."""
from bvsigma import FunctionOnSet, SearchConfig, bv_norm, cvar, pt, var_exhaustive, var_search, vf
from bvsigma.geometry import ORIGIN

line = [pt(-1), ORIGIN, pt(1)]
bump = FunctionOnSet.indicator(line, [ORIGIN])
est = var_search(bump, line)
print("var of the bump on {-1, 0, 1}:", est.value, est.status, "via", [str(p) for p in est.certificate])
print("its BV norm:", bv_norm(bump, line).value)

# a checkerboard on the unit square: the supremum is only approached by long walks
square = [pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)]
checker = FunctionOnSet(dict(zip(square, (1, 0, 1, 0))))
for t in (1, 2, 5, 20):
    walk = square * t + [square[0]]
    print(f"walk around {t} times: cvar/vf = {cvar(checker, walk)}/{vf(walk)}")
est = var_search(checker, square)
print("certified variation:", est.value, est.status, "best short list:", est.certificate_value, "attained:", est.attained)
print("exhaustive over lists of length <= 7:", var_exhaustive(checker, square, 7).value)
print("length-bounded search without the certificate:", var_search(checker, square, SearchConfig(certify=False)).value)
