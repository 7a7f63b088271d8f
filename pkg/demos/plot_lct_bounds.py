"""
Log canonical thresholds from Newton polygons
=============================================

For a nondegenerate germ the lct is read off the Newton polygon.  The
pencil bound optimizes a weighted ratio over a one-parameter family of
subgroups; it is exact but, as the last example shows, it can exceed the
lct of a special member.
"""

from fractions import Fraction

from pencilstab import Pencil
from pencilstab.forms import ORIGIN
from pencilstab.lct import lct_at_point, local_lct, newton_lct_candidate, parse_germ, pencil_lct_lower_bound

for germ in ["u*v", "u^2 - v^3", "u^2 - v^4", "u^3 - v^3", "u^2 - v^7", "u^3 + v^5"]:
    est = newton_lct_candidate(parse_germ(germ))
    print(f"{germ:>10}  lct {est.exact}  nondegenerate {est.nondegeneracy_checked}")

# a degenerate chart: the local routine completes the square first
germ = parse_germ("(u - v^2)^2 - v^5")
print("(u - v^2)^2 - v^5: candidate", newton_lct_candidate(germ).upper, "-> exact", local_lct(germ).exact)

P = Pencil.from_strings("x^3", "y^3", 3)
b = pencil_lct_lower_bound(P, ORIGIN)
print("<x^3, y^3>: bound", b.capped, "at a =", b.a_star)

# <x^3, y^2 z>: at a = 1 the ratio is 2/5, yet the member x^3 has lct 1/3
P = Pencil.from_strings("x^3", "y^2*z", 3)
b = pencil_lct_lower_bound(P, ORIGIN)
print("<x^3, y^2 z>: bound", b.capped, "at a =", b.a_star)
print("  lct at the point of x^3:", lct_at_point(P.f, ORIGIN).best_lower, " of y^2 z:",
      lct_at_point(P.g, ORIGIN).best_lower)
print("  bound exceeds the triple line:", b.capped > Fraction(1, 3))
