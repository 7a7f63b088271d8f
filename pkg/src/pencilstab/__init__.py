"""Exact GIT stability analysis for pencils of plane curves under SL(3).

All arithmetic is over the rationals.  Negative verdicts come with a
coordinate change and a one-parameter subgroup that can be rechecked by
hand; positive verdicts come from sufficient criteria on the members.
"""

__version__ = "0.1.0"

from .forms import HomogeneousForm, Matrix3, ProjectivePoint, change_coordinates, format_form, multiplicity_at, parse_form
from .pencil import Pencil, ProportionalGeneratorsError, member, plucker
from .weights import (
    StateSet,
    TorusVerdict,
    WeightVector,
    affine_weight_curve,
    affine_weight_pencil,
    equalizing_partner,
    torus_decide,
    torus_decide_pencil,
    weight_inequality_audit,
)
from .certificate import StabilityCertificate
from .basepoints import base_points, multiplicity_criterion
from .lct import lct_at_point, newton_lct_candidate, pencil_lct_lower_bound, weighted_mult_bound
from .members import lct_stability_screen, scan_members
from .search import pencil_stability_search
from .analysis import analyze

__all__ = [
    "HomogeneousForm",
    "Matrix3",
    "ProjectivePoint",
    "Pencil",
    "ProportionalGeneratorsError",
    "StabilityCertificate",
    "StateSet",
    "TorusVerdict",
    "WeightVector",
    "affine_weight_curve",
    "affine_weight_pencil",
    "analyze",
    "base_points",
    "change_coordinates",
    "equalizing_partner",
    "format_form",
    "lct_at_point",
    "lct_stability_screen",
    "member",
    "multiplicity_at",
    "multiplicity_criterion",
    "newton_lct_candidate",
    "parse_form",
    "pencil_lct_lower_bound",
    "pencil_stability_search",
    "plucker",
    "scan_members",
    "torus_decide",
    "torus_decide_pencil",
    "weight_inequality_audit",
    "weighted_mult_bound",
]
