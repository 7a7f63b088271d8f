"""
Special members and the sufficient criteria
===========================================

Positive verdicts never come from a failed search.  They come from the
members: the discriminant locates the singular ones, each is analysed,
and the criteria combine the statuses.
"""

from pencilstab import Pencil, pencil_stability_search
from pencilstab.members import scan_members

# a quartic pencil with one tacnodal member, every other member stable
P = Pencil.from_strings("(y*z - x^2)^2 - x^4 + y^4", "x^4 + 2*y^4 + 3*z^4 + x*y*z^2 - y^3*z", 4)
scan = scan_members(P)
print("discriminant degree", scan.discriminant.degree, "of", scan.discriminant.expected_degree)
def show(scan):
    for r in scan.records:
        label = r.label if len(r.label) < 40 else f"root of a degree-{r.parameter.degree()} factor"
        print(f"  s = {label:>32}  order {r.order}  {r.status}")


show(scan)
res = pencil_stability_search(P)
print("verdict:", res.certificate.verdict, "via", res.certificate.criterion)
print("certificates:", [(c.verdict, c.criterion) for c in res.certificates])

# the Hesse pencil: two conjugate triangles cannot be analysed over Q
hesse = Pencil.from_strings("x^3 + y^3 + z^3", "x*y*z", 3)
show(scan_members(hesse))
print("Hesse:", pencil_stability_search(hesse).certificate.verdict)
