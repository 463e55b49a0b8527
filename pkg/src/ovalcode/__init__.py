"""Near-MDS [q+5, 3, q+2] codes over GF(2^m) from oval polynomials, with local repair."""

from .gf2m import FieldContext, enumerate_elements, field_new
from .linalg import FieldMatrix, kernel_basis, rank, solve_unique
from .lrc import (
    RepairPlan,
    cm_bound_dimension,
    dual_repair_plan,
    minimum_locality_dual,
    minimum_locality_primal,
    optimality_report,
    repair,
    repair_plan,
    singleton_like_bound,
)
from .nmds import (
    LinearCode,
    build_generator,
    classify_weight3_supports,
    dual_distance_and_weight3,
    encode,
    min_weight_support_pairing,
    verify_nmds,
    weight_distribution_bruteforce,
)
from .ovalpoly import OvalPolynomial, check_oval_definition, make_family
from .weights import (
    WeightDistribution,
    macwilliams_dual,
    nmds_recurrence_dual,
    nmds_recurrence_primal,
    theoretical_weight_distribution,
)

__version__ = "0.1.0"
