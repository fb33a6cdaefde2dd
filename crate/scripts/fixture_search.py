"""Search small-height rational points in the right lobe of the two-ellipse quartic."""
from fractions import Fraction as Q
import itertools

def v(x, y):
    e1 = x * x / 16 + y * y / 9 - 1
    e2 = x * x / 9 + y * y / 16 - 1
    return e1 * e2

pts = []
for den in range(1, 9):
    for an in range(int(2.4 * den) + 1, 4 * den + 1):
        for bn in range(1, 2 * den + 1):
            a, b = Q(an, den), Q(bn, den)
            if a.denominator != den and b.denominator != den:
                continue
            if b >= a - Q(1, 2):
                continue
            val = v(a, b)
            if -0.035 < val < -0.012:
                pts.append((float(val), a, b))
for p in sorted(pts, key=lambda t: (t[1].denominator * t[2].denominator)):
    print(p[0], p[1], p[2])
