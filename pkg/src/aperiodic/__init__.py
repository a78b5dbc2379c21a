"""Exact tools for low-complexity point sets and annihilating polynomials.

Group elements are integer exponent tuples over a declared basis of
rational embedding generators; all verdicts are either exact or carry an
explicit bracket and window caveat.
"""

from .algebra import (
    ExponentBasis,
    LaurentPoly,
    LineVerdict,
    difference_poly,
    dilate,
    format_poly,
    has_vertex_in_direction,
    is_line_poly,
    line_direction,
    monomial,
    parse_poly,
)
from .annihilators import (
    AnnihilationCertificate,
    check_dilation,
    detect_period_1d,
    dilation_bound,
    find_periodizer,
    is_admissible_scale,
    line_annihilator_period,
    merge_parallel,
    periodizer_to_annihilator,
    special_annihilator,
    verify_annihilator,
)
from .configurations import (
    Alphabet,
    Configuration,
    DomainError,
    ExplicitConfig,
    FloorFiberConfig,
    LatticeConfig,
    PolyAppliedConfig,
    SumConfig,
    TorusConfig,
    TranslateConfig,
    pattern_complexity,
    patterns,
    torus_components,
    torus_config,
)
from .decomposition import (
    DecompositionError,
    DecompositionWitness,
    decompose,
    integrate_step,
    required_outer_box,
)
from .delone import (
    PointCloud,
    class_tests,
    config_from_cloud,
    delone_constants,
    lagarias_test,
    meyer_HT,
    minkowski_flc,
    patch_count,
    patches,
)
from .forced import (
    CoverageReport,
    convex_hull_2d,
    edge_normal_rays,
    hyperplane_condition,
    vertex_coverage,
)
from .generators import (
    EXAMPLE_NAMES,
    example_set,
    fibonacci_chain,
    ideal_crystal_1d,
    ideal_crystal_2d,
)
from .precision import named_value, precision_bits
from .window import Window, parse_window

__version__ = "1.0.0"
