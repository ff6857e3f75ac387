"""Exception hierarchy shared by the numerical modules."""

from __future__ import annotations


class FeynmanVerifyError(Exception):
    """Base class for every error raised by this package."""


class QuadratureError(FeynmanVerifyError):
    pass


class InvalidDomain(QuadratureError, ValueError):
    pass


class NonFiniteSample(QuadratureError, ArithmeticError):
    """The integrand returned NaN or an infinity at an interior node."""

    def __init__(self, x: float, value: float):
        super().__init__(f"integrand returned {value!r} at x={x!r}")
        self.x = x
        self.value = value


class NonConvergence(QuadratureError):
    """Refinement budget exhausted before two levels agreed.

    The best estimate reached is kept on ``result`` so callers can still
    inspect it (``result.converged`` is False).
    """

    def __init__(self, result):
        super().__init__(
            f"no convergence after {result.evaluations} evaluations: "
            f"value={result.value!r}, error_estimate={result.error_estimate!r}"
        )
        self.result = result


class AlphaOutOfRange(FeynmanVerifyError, ValueError):
    pass


class DivergentIntegral(FeynmanVerifyError, ArithmeticError):
    pass


class DivergentValue(FeynmanVerifyError, ArithmeticError):
    pass


class StepOutOfRange(FeynmanVerifyError, ValueError):
    pass


class StepCountTooSmall(FeynmanVerifyError, ValueError):
    pass


class XOutOfRange(FeynmanVerifyError, ValueError):
    pass
