"""orbitforge: exact classification of periodic integer orbits.

Decides, constructs, and independently verifies every periodic integer
orbit of the families x -> x^m - k and x -> a*x^2 + b*x + c, using only
exact integer and rational arithmetic, and surveys their cycle structure
over the rings Z_M.
"""

from .classify import (
    ALL_FIXED,
    DIVERGES_DOWN,
    DIVERGES_SPLIT,
    DIVERGES_UP,
    BoundsProfile,
    Cycle,
    GapReport,
    OrbitClassification,
    band_gap_checks,
    band_integers,
    band_width_decimal,
    band_width_exceeds_one,
    classify_power,
    classify_quad,
    power_bounds,
    power_fixed_points,
    solve_pronic,
    translation_bounds,
)
from .kernel import (
    DecimalApprox,
    Side,
    approx_band_floor,
    approx_band_floor_q,
    approx_max_fixed_point,
    approx_max_fixed_point_q,
    band_floor_is_real_q,
    compare_to_band_floor,
    compare_to_band_floor_q,
    compare_to_max_fixed_point,
    compare_to_max_fixed_point_q,
    iroot,
    isqrt,
    max_fixed_point_floor,
    max_fixed_point_floor_q,
    perfect_square_root,
    rational_square_root,
)
from .maps import (
    Conjugacy,
    LatticeCert,
    PowerMap,
    QuadMap,
    RationalPoly,
    conjugacy_of_quad,
    lattice_check,
    parse_rational,
    vertex_conjugacy,
)
from .modular import (
    CheckpointError,
    FunctionalGraphSummary,
    ScanRow,
    functional_graph,
    max_cycle_scan,
    naive_graph_oracle,
    read_checkpoint,
)
from .oracle import (
    CrossCheckReport,
    EscapeBound,
    OrbitTrace,
    cross_check,
    escape_bound,
    escape_is_sound,
    iterate_with_escape,
    oracle_cycles,
)

__version__ = "0.1.0"

__all__ = [
    "ALL_FIXED",
    "DIVERGES_DOWN",
    "DIVERGES_SPLIT",
    "DIVERGES_UP",
    "BoundsProfile",
    "CheckpointError",
    "Conjugacy",
    "CrossCheckReport",
    "Cycle",
    "DecimalApprox",
    "EscapeBound",
    "FunctionalGraphSummary",
    "GapReport",
    "LatticeCert",
    "OrbitClassification",
    "OrbitTrace",
    "PowerMap",
    "QuadMap",
    "RationalPoly",
    "ScanRow",
    "Side",
    "approx_band_floor",
    "approx_band_floor_q",
    "approx_max_fixed_point",
    "approx_max_fixed_point_q",
    "band_floor_is_real_q",
    "band_gap_checks",
    "band_integers",
    "band_width_decimal",
    "band_width_exceeds_one",
    "classify_power",
    "classify_quad",
    "compare_to_band_floor",
    "compare_to_band_floor_q",
    "compare_to_max_fixed_point",
    "compare_to_max_fixed_point_q",
    "conjugacy_of_quad",
    "cross_check",
    "escape_bound",
    "escape_is_sound",
    "functional_graph",
    "iroot",
    "isqrt",
    "iterate_with_escape",
    "lattice_check",
    "max_cycle_scan",
    "max_fixed_point_floor",
    "max_fixed_point_floor_q",
    "naive_graph_oracle",
    "oracle_cycles",
    "parse_rational",
    "perfect_square_root",
    "power_bounds",
    "power_fixed_points",
    "rational_square_root",
    "read_checkpoint",
    "solve_pronic",
    "translation_bounds",
    "vertex_conjugacy",
]
