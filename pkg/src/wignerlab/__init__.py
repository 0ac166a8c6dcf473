"""Wigner matrix simulation and kernel estimation of the semicircle law."""

__version__ = "0.1.0"

from .eigen import Spectrum, symmetric_eigenvalues, tridiagonalize
from .ensembles import (
    EntryDistribution,
    ScalingConstant,
    SymmetricMatrix,
    VARIANTS,
    build_raw_entries,
    build_wigner,
    entry_distribution,
    sample_entries,
    scaling_constant,
    tail_diagnostic,
    truncated_second_moment,
)
from .errors import ConfigurationError, DomainError, NumericError
from .estimators import (
    EstimatorCurve,
    KernelSpec,
    bandwidth_default,
    curve,
    esd_at,
    esd_cdf,
    get_kernel,
    kcdf_at,
    kde_at,
    register_kernel,
    semicircle_cdf,
    semicircle_pdf,
)
from .experiments import (
    ExperimentConfig,
    run_convergence,
    run_figure,
    run_identity_check,
    run_spectrum,
)
from .metrics import (
    kolmogorov_distance,
    levy_cube_trace_bound,
    levy_distance,
    rank_inequality_check,
    sup_density_error,
)
from .reductions import (
    center_and_rescale,
    lindeberg_diagnostic,
    reduction_chain,
    truncate_entries,
    truncated_moments,
    zero_diagonal,
)
from .transforms import (
    cauchy_kernel_identity_check,
    stieltjes_esd,
    stieltjes_semicircle,
)

__all__ = [
    "__version__",
    "ConfigurationError",
    "DomainError",
    "NumericError",
    "EntryDistribution",
    "ScalingConstant",
    "SymmetricMatrix",
    "VARIANTS",
    "entry_distribution",
    "sample_entries",
    "truncated_second_moment",
    "scaling_constant",
    "build_wigner",
    "build_raw_entries",
    "tail_diagnostic",
    "Spectrum",
    "tridiagonalize",
    "symmetric_eigenvalues",
    "KernelSpec",
    "EstimatorCurve",
    "get_kernel",
    "register_kernel",
    "bandwidth_default",
    "kde_at",
    "kcdf_at",
    "esd_at",
    "esd_cdf",
    "semicircle_pdf",
    "semicircle_cdf",
    "curve",
    "stieltjes_esd",
    "stieltjes_semicircle",
    "cauchy_kernel_identity_check",
    "kolmogorov_distance",
    "levy_distance",
    "sup_density_error",
    "levy_cube_trace_bound",
    "rank_inequality_check",
    "zero_diagonal",
    "truncate_entries",
    "truncated_moments",
    "center_and_rescale",
    "reduction_chain",
    "lindeberg_diagnostic",
    "ExperimentConfig",
    "run_spectrum",
    "run_figure",
    "run_convergence",
    "run_identity_check",
]
