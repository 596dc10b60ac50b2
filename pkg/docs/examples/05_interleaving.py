"""Why a two-ray set and a one-ray set have different spaces of functions.

Interleave the two rays into one. The indicator of the first n points of ray 1
keeps spoke norm 2, but its image oscillates n times and its norm grows like 2n.
"""
from bvsigma import interleaving_demo

rep = interleaving_demo(k=2, l=1, n_max=8)
print(" n  ||f_n||  ||image||")
for n, a, b in rep.rows:
    print(f"{n:2d}  {a!s:>6}  {b!s:>8}")
print("every row within the predicted bounds:", rep.passed)
