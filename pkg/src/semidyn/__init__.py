"""semidyn: numerical dynamics of finitely generated holomorphic semigroups.

Approximates Fatou, Julia, and escaping sets of semigroups built from a
closed catalog of generator maps, and checks the invariance theorems and
set identities those sets satisfy.
"""

__version__ = "0.1.0"

from .maps import (
    OVERFLOW,
    OVERFLOW_GUARD,
    AffineExp,
    AllSamplesOverflowedError,
    ExpAffine,
    MapDescriptor,
    ParseError,
    PowerQuotient,
    SampleSpec,
    SineAffine,
    SingularValueNote,
    Tchebyshev,
    UnsupportedMapError,
    ZeroArgumentError,
    commutator_defect,
    eval_map,
    eval_map_array,
    inverse_branches,
    is_overflow,
    parse_map,
    render_map,
    tchebyshev_coeffs,
)
from .semigroup import (
    BudgetExceededError,
    SemigroupSpec,
    Word,
    concat,
    eval_word,
    eval_word_array,
    random_word_stream,
    word_count,
    words_up_to,
)
from .grid import GridSpec, IndicatorGrid, PixelClass, boundary_band, dilate
from .escape import (
    EscapeParams,
    Orbit,
    OrbitOutcome,
    RationalGeneratorsRejectedError,
    SemigroupEscapeClass,
    approximate_escaping_set,
    classify_orbit,
    classify_point_semigroup,
    classify_points_semigroup,
    iterate_word,
    random_word_divergence_test,
)
from .julia import (
    JuliaParams,
    PointCloud,
    approximate_julia_union,
    backward_ifs_sample,
    fatou_indicator,
    preimage_grid,
    word_julia_band,
)
from .checks import (
    CheckReport,
    GridBundle,
    InvalidParameterError,
    annulus_reference_check,
    check_abelian_equalities,
    check_backward_invariance,
    check_forward_invariance,
    check_inclusions,
    check_intersection_identity,
    check_union_identity,
    compute_grid_bundle,
    is_abelian,
)
from .config import ConfigError, SceneConfig, load_scene_config, parse_scene_config, render_scene_config
from .io import write_pgm, write_pointcloud_csv, write_report
