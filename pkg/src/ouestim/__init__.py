"""Simulation and inference laboratory for a non-ergodic Ornstein-Uhlenbeck
process driven by fractional Gaussian noise families.

The package is organized around one pipeline: covariance kernels
(:mod:`ouestim.kernels`) feed exact Gaussian path samplers
(:mod:`ouestim.pathgen`), paths feed the overflow-free trajectory recursion
(:mod:`ouestim.ou_model`), trajectories feed the energy-ratio estimator and
its rescaled error statistic (:mod:`ouestim.estimator`), and the advertised
asymptotics are checked deterministically by quadrature
(:mod:`ouestim.limit_theory`) and stochastically by replicated studies
(:mod:`ouestim.montecarlo`).  :mod:`ouestim.cli` exposes all of it as the
``ouestim`` command.
"""
from .estimator import (
    Degenerate,
    ErrorStatistic,
    EstimateReport,
    error_statistic,
    estimate,
    estimate_trajectory,
    make_report,
)
from .kernels import Family, KernelSpec, bifbm, bm, cov, cov_matrix, fbm, sfbm
from .limit_theory import (
    LimitReport,
    build_report,
    cross_cov_decay,
    delta_g,
    i_lambda,
    j_lambda,
    sigma_limit,
    smooth_term_identity,
    variance_curve,
    z_infinity_variance,
)
from .montecarlo import (
    MCConfig,
    MCSummary,
    cauchy_cdf,
    ks_distance,
    run_cauchy,
    run_consistency,
    run_replicates,
    summarize,
)
from .ou_model import ScaledTrajectory, build_trajectory, materialize_x, scaled_identity_residual
from .pathgen import (
    NumericalFailure,
    SamplePath,
    TimeGrid,
    sample_cholesky,
    sample_fbm_circulant,
)

__version__ = "0.1.0"

__all__ = [
    "Degenerate",
    "ErrorStatistic",
    "EstimateReport",
    "Family",
    "KernelSpec",
    "LimitReport",
    "MCConfig",
    "MCSummary",
    "NumericalFailure",
    "SamplePath",
    "ScaledTrajectory",
    "TimeGrid",
    "bifbm",
    "bm",
    "build_report",
    "build_trajectory",
    "cauchy_cdf",
    "cov",
    "cov_matrix",
    "cross_cov_decay",
    "delta_g",
    "error_statistic",
    "estimate",
    "estimate_trajectory",
    "fbm",
    "i_lambda",
    "j_lambda",
    "ks_distance",
    "make_report",
    "materialize_x",
    "run_cauchy",
    "run_consistency",
    "run_replicates",
    "sample_cholesky",
    "sample_fbm_circulant",
    "scaled_identity_residual",
    "sfbm",
    "sigma_limit",
    "smooth_term_identity",
    "summarize",
    "variance_curve",
    "z_infinity_variance",
    "__version__",
]
