"""Numerical absolute-continuity verdicts on ray sets."""
import math

from bvsigma import CustomRule, Indicator, Poly2, ac_test_kray, kray_set, real_cset
from bvsigma.geometry import ORIGIN
from bvsigma.membership import harmonic_increment_rule

three = kray_set([0, "1/2", 1], "geometric")
line = real_cset()
cases = [
    ("z on three rays", Poly2.identity(), three),
    ("bump at the limit point", Indicator([ORIGIN]), line),
    ("alternating harmonic partial sums", harmonic_increment_rule(line), line),
    ("1/log(1/x)", CustomRule(lambda p: 0.0 if p == ORIGIN else 1 / math.log(2 + float(1 / p.x))), line),
]
for name, rule, spec in cases:
    v = ac_test_kray(rule, spec)
    margins = ", ".join(f"{m:.2g}" for m in v.margins)
    tails = ", ".join(f"{t:.2g}" for t in v.tails)
    print(f"{name}: {v.verdict} {v.witness}\n    margins {margins}\n    block variations {tails}")
