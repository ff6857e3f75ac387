"""Numerical verification of the parametric-integral proof of sum 1/n^2 = pi^2/6."""

from .checks import CheckReport, CheckResult
from .errors import (
    AlphaOutOfRange,
    DivergentIntegral,
    DivergentValue,
    FeynmanVerifyError,
    InvalidDomain,
    NonConvergence,
    NonFiniteSample,
    StepCountTooSmall,
    StepOutOfRange,
    XOutOfRange,
)
from .parametric import (
    BASEL,
    CONSTANTS,
    AlphaParam,
    DerivativeTriple,
    I_closed,
    I_direct,
    antiderivative_check,
    check_symmetry,
    dIdalpha_closed,
    dIdalpha_finite_difference,
    dIdalpha_integral,
    derivative_triple,
    infer_constant,
    reconstruct_I,
    verify_identities,
)
from .quadrature import Domain, QuadConfig, QuadResult, integrate
from .series import (
    SeriesState,
    apostol_check,
    basel_integral_check,
    log_series_check,
    termwise_integral,
    zeta2_accelerated,
    zeta2_partial,
)
from .suite import run_verify_suite

__version__ = "0.1.0"
