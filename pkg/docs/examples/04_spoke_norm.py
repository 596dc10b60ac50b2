"""Ray sets, their spoke norm, and how it compares with the BV norm."""
import random

from bvsigma import FunctionOnSet, check_spoke_equivalence, classify_rays, kray_set, spoke_norm, truncate

spec = kray_set([0, 1, "1/2"], "harmonic")
part = classify_rays(truncate(spec, 5))
print("rays found:", part.k, "points per ray:", [len(r) for r in part.rays])

rng = random.Random(1)
for _ in range(5):
    f = FunctionOnSet({p: rng.randint(-3, 3) for p in part.points()})
    c = check_spoke_equivalence(f, part)
    print(f"Sp/(2k+1) = {c.lhs}  <=  BV = {c.mid}  <=  3 Sp = {c.rhs}   holds: {c.passed}")

ident = FunctionOnSet.from_rule(part.points(), lambda p: p.x + p.y)
print("spoke norm of x + y:", spoke_norm(ident, part).value)
