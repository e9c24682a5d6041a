"""Human-in-the-loop multi-objective Bayesian optimization of UI designs."""

import os as _os

# The linear algebra here is all small matrices: BLAS threading only adds
# sync overhead, and replaying a session byte-identically requires the same
# reduction order it was produced with.  Respects explicit user overrides.
for _var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
    _os.environ.setdefault(_var, "1")

from .analysis import compare_groups
from .design_space import (
    DesignSpaceError,
    ParameterSpec,
    PhysicalDesign,
    parameter_catalog,
    to_physical,
    validate,
)
from .engine import (
    History,
    OptimizerConfig,
    ehvi,
    propose_next,
    reference_point,
    sobol_seed,
)
from .gp import GPModel, fit, log_marginal_likelihood, posterior, sample_posterior
from .loess import loess
from .objectives import RawRatings, aggregate, is_perfect, normalize
from .pareto import ParetoFront, dominates, hypervolume, pareto_front
from .session import (
    SessionState,
    export_session,
    import_session,
    run_simulated,
    start_session,
    submit_rating,
)
from .simulate import SimulatedUser
from .stats import (
    BayesResult,
    Evidence,
    bayes_factor_ttest,
    categorize_evidence,
    median_iqr,
    pearson_correlation_matrix,
)

__version__ = "0.1.0"
