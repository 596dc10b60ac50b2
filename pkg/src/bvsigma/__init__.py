"""Two-dimensional variation, BV/AC norms and composition operators on finite and countable planar sets."""
from .geometry import (
    ORIGIN,
    Line,
    PerturbedLine,
    PlanarPoint,
    Side,
    achievable_labelings,
    candidate_lines,
    is_crossing_segment,
    pt,
    side_of,
    vf,
    vf_on_line,
)
from .functions import FunctionOnSet
from .variation import (
    NormReport,
    SearchConfig,
    Status,
    VarEstimate,
    bv_norm,
    cvar,
    var_collinear,
    var_exhaustive,
    var_search,
)
from .csets import (
    CSetSpec,
    RayPartition,
    RaySpec,
    classify_rays,
    kray_set,
    parabola_set,
    real_cset,
    spiral_set,
    truncate,
)
from .norms import check_spoke_equivalence, d_norm, psi_ell1, ray_variation, spoke_norm
from .isomorphisms import (
    AffineMap,
    ConvexPolygon,
    DistortionReport,
    LocallyPiecewiseAffineMap,
    PointBijection,
    compose_operator,
    distortion_estimate,
    interleaving_demo,
    lpam_apply,
    lpam_construct,
    move_isolated_point,
    order_matching_homeo,
    swap_bijection_demo,
)
from .membership import (
    ACVerdict,
    CustomRule,
    Indicator,
    Poly2,
    RayTable,
    ac_test_kray,
    extend_by_point,
    gn_truncation,
    poly_eval,
    restrict,
)

__version__ = "0.1.0"
