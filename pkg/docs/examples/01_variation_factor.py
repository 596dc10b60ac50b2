"""How many times can one line cross a polygonal path through a finite point list?"""
from fractions import Fraction

from bvsigma import Line, pt, vf, vf_on_line

path = [pt(-1), pt(0), pt(1)]
print("vf along a straight segment:", vf(path))

# going back and forth lets a single line cut the path twice
zigzag = [pt(0), pt(2), pt(1)]
print("vf of 0 -> 2 -> 1:", vf(zigzag))
print("the line x = 3/2 alone crosses", vf_on_line(zigzag, Line(1, 0, Fraction(-3, 2))), "times")

# points on a convex curve: any line meets the curve at most twice
parabola = [pt(Fraction(1, j), Fraction(1, j * j)) for j in range(6, 0, -1)]
print("vf of an increasing list on the parabola y = x^2:", vf(parabola))
