"""Weighted operator means, their reverse-inequality constants, Kwong
function classification and randomized verification of the inequalities."""

__version__ = "0.1.0"

from .bounds import (  # noqa: E402
    BoundParams,
    corollary26_lambda,
    corollary_lambda,
    critical_point,
    f_alpha_beta,
    gamma_bound,
    kantorovich,
    lambda_bound,
    mu_bound,
    specht,
)
from .functions import ScalarFunction, catalog_listing, get_function  # noqa: E402
from .kwong import (  # noqa: E402
    check_audenaert_equivalence,
    classify_kwong,
    classify_operator_convex,
    classify_operator_monotone,
    kwong_matrix,
    loewner_matrix,
)
from .linalg import (  # noqa: E402
    ToleranceConfig,
    eig_hermitian,
    ky_fan_norm,
    loewner_leq,
    matrix_power,
    matrix_sqrt,
    random_hpd,
)
from .means import (  # noqa: E402
    SandwichInterval,
    arithmetic_mean,
    geometric_mean,
    harmonic_mean,
    kubo_ando_mean,
    sandwich_interval,
)
from .verify import TrialConfig, run_check, run_suite  # noqa: E402
