"""ratideal: exact and high-precision verification of rational
hypergeometric identities and their parent hyperbolic integrals.

The package evaluates the hyperbolic gamma function (infinite-product
and contour-integral representations), checks its singular degeneration
onto Pochhammer symbols, and verifies -- exactly, over the Gaussian
rationals -- the bilateral residue-sum identities that the degeneration
produces, together with their quadrature-level parents.
"""

__version__ = "0.1.0"

from .degeneration import DegenerationPoint, ScanReport, limit_lhs, limit_rhs, limit_scan
from .errors import (
    ConeError,
    DegenerateParameters,
    DomainError,
    InvalidParameters,
    InvalidScan,
    InvalidTerm,
    NumericalFailure,
    PoleAtEvaluation,
    PoleOfGamma,
    PoleOfGammaH,
    QuadratureFailure,
    RatidealError,
    ResidueMismatch,
    SlowConvergence,
    TransformOutOfDomain,
    WindowNotClosed,
)
from .hypgamma import (
    ConeCheckReport,
    GammaHValue,
    OmegaPair,
    PointClassification,
    bernoulli_b22,
    classify_point,
    cone_asymptotics_check,
    gamma_h,
    gamma_h_integral,
    gamma_h_product,
)
from .hypverify import (
    HyperbolicParams,
    kernel_decay_rate,
    kernel_delta,
    kernel_tail_exponent,
    verify_hyperbolic_beta,
    verify_v_transform,
)
from .rational import (
    ContourIntegral,
    FactoredRational,
    ParameterSet,
    TransformedSet,
    VerificationReport,
    build_term,
    classify_contribution,
    closed_form_debranges_wilson,
    closed_form_half_integer,
    closed_form_rahman,
    debranges_wilson_set,
    e7_transform,
    half_integer_set,
    integrate_term,
    rahman_set,
    ratbeta_lhs,
    ratbeta_rhs,
    verify_ratbeta,
    verify_rat_trafo,
)
from .sampling import (
    default_omega_pair,
    random_hyperbolic_set,
    random_rat_trafo_set,
    random_ratbeta_set,
)
from .scalars import (
    DEFAULT_DPS,
    GaussianRational,
    HalfInteger,
    half,
    log_gamma,
    pochhammer,
    pochhammer_pm,
    working_dps,
)
