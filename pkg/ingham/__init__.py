from .frequency_types import (
    ConstantChain,
    ConstantsMode,
    FrequencyFamily,
    GapGeometry,
    PartitionedFamily,
    PartitionSource,
)
from .spectra import class_gaps, geometry, minimal_gap, one_d_mth_gap, remark_radius, residue_partition
from .ball_analysis import (
    BallTransform,
    RadialWindow,
    alpha_m_plus_1,
    ball_transform_g,
    ball_volume,
    bessel_j,
    dirichlet_mu,
    eigen_profile,
    first_bessel_zero,
    fourier_h,
    min_h_squared,
    normalized_bessel,
    profile_table,
)
from .constants import alpha_j, alpha_j_prime, alpha_zero, assembly_lower_bound, exponent, theorem_constants
from .gram_oracle import (
    DualFamily,
    GramMatrix,
    KahaneAssembly,
    RieszBounds,
    dual_family,
    gram_matrix,
    haraux_map,
    projection_dual,
    quadratic_form,
    quadrature_gram_entry,
    rho_hat,
    riesz_bounds,
    translated_quadratic_form,
)
from .performance import PerformanceMonitor

__version__ = "1.0.0"

__all__ = [
    "ConstantChain",
    "ConstantsMode",
    "FrequencyFamily",
    "GapGeometry",
    "PartitionedFamily",
    "PartitionSource",
    "class_gaps",
    "geometry",
    "minimal_gap",
    "one_d_mth_gap",
    "remark_radius",
    "residue_partition",
    "BallTransform",
    "RadialWindow",
    "alpha_m_plus_1",
    "ball_transform_g",
    "ball_volume",
    "bessel_j",
    "dirichlet_mu",
    "eigen_profile",
    "first_bessel_zero",
    "fourier_h",
    "min_h_squared",
    "normalized_bessel",
    "profile_table",
    "alpha_j",
    "alpha_j_prime",
    "alpha_zero",
    "assembly_lower_bound",
    "exponent",
    "theorem_constants",
    "DualFamily",
    "GramMatrix",
    "KahaneAssembly",
    "RieszBounds",
    "dual_family",
    "gram_matrix",
    "haraux_map",
    "projection_dual",
    "quadratic_form",
    "quadrature_gram_entry",
    "rho_hat",
    "riesz_bounds",
    "translated_quadratic_form",
    "PerformanceMonitor",
    "__version__",
]
