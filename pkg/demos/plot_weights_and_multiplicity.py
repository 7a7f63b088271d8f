"""
Weights, the torus test and the multiplicity criterion
======================================================

A pencil is unstable when some one-parameter subgroup makes every Plücker
coordinate positive.  We look at <x^3, y^3> from three sides.
"""

from pencilstab import Pencil, affine_weight_pencil, multiplicity_criterion, torus_decide_pencil
from pencilstab.weights import StateSet, threshold_margin

P = Pencil.from_strings("x^3", "y^3", 3)
print("minors:", P.plucker())

# one state, (3, 3); its projection misses the barycentre (2, 2)
S = StateSet.of_pencil(P)
print("projected states:", S.projected())
tv = torus_decide_pencil(P)
print("torus verdict:", tv.status, "witness", tuple(tv.witness))

# the witness by hand: omega against (2d/3)(a_x + a_y - 2a_z)
lam = (1, 1, -2)
omega = affine_weight_pencil(P, lam)
print("omega =", omega, " threshold = 12", " margin =", threshold_margin(omega, lam, 6))

# the base point (0:0:1) carries a triple point on both generators: 3 + 3 > 4d/3
cert = multiplicity_criterion(P)
print(cert.verdict, cert.criterion, "valid:", cert.is_valid())
for entry in cert.audit:
    print("  ", entry)

# the Hesse pencil is torus-stable in its own coordinates
hesse = Pencil.from_strings("x^3 + y^3 + z^3", "x*y*z", 3)
print("Hesse at identity:", torus_decide_pencil(hesse).status)
