"""The parametric integral I(alpha) and everything derived from it.

    I(alpha)   = int_0^inf ln(1 + alpha e^{-x} + e^{-2x}) dx,   -2 <= alpha <= 2
    dI/dalpha  = int_0^1 dx / (1 + alpha x + x^2)
               = 2/sqrt(4 - alpha^2) * arctan(sqrt((2 - alpha)/(2 + alpha)))
    I(alpha)   = -arccos(alpha/2)^2 / 2 + c,   with c fixed by I(2) = 4 I(0)

The derivative is computed three independent ways (quadrature of the
substituted integrand, the arctan closed form, and a Richardson-improved
central difference of I itself), and I can be rebuilt from the derivative
alone, anchored only on the symmetry ``I(2) = 4 I(0)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterable, Union

import mpmath
import numpy as np

from ._special import arccos_half, log1mexp
from .checks import CheckReport, CheckResult
from .errors import (
    AlphaOutOfRange,
    DivergentIntegral,
    DivergentValue,
    StepCountTooSmall,
    StepOutOfRange,
)
from .quadrature import Domain, QuadConfig, QuadResult, integrate

BASEL = math.pi ** 2 / 6


@dataclass(frozen=True)
class AlphaParam:
    """The parameter alpha, restricted to the closed interval [-2, 2].

    Both endpoints are admitted; each operation excludes whichever endpoint
    is singular for it.
    """

    value: float

    def __post_init__(self):
        if not -2.0 <= self.value <= 2.0:
            raise AlphaOutOfRange(f"alpha must lie in [-2, 2], got {self.value!r}")

    def __float__(self) -> float:
        return float(self.value)


AlphaLike = Union[float, AlphaParam]


def _alpha(alpha: AlphaLike) -> float:
    return float(alpha) if isinstance(alpha, AlphaParam) else float(AlphaParam(float(alpha)))


@dataclass(frozen=True)
class ClosedFormConstants:
    c: float
    basel: float
    i_zero: float
    i_neg2: float


CONSTANTS = ClosedFormConstants(
    c=BASEL,
    basel=BASEL,
    i_zero=-math.pi ** 2 / 8 + BASEL,
    i_neg2=-0.5 * math.pi ** 2 + BASEL,
)


@dataclass(frozen=True)
class DerivativeTriple:
    by_quadrature: float
    by_closed_form: float
    by_finite_difference: float

    @property
    def max_pairwise_gap(self) -> float:
        values = (self.by_quadrature, self.by_closed_form, self.by_finite_difference)
        return max(abs(a - b) for a, b in combinations(values, 2))


def _log_shifted_square(d: float, e: float, c: float) -> float:
    # ln(d^2 + c*e) without letting d^2 underflow or cancel
    a = d * d
    b = c * e
    if b <= a:
        return 2.0 * math.log(d) + math.log1p(b / a)
    return math.log(b) + math.log1p(a / b)


def uniform_grid(start: float, stop: float, points: int) -> list[float]:
    """``points`` equally spaced values with both endpoints hit exactly."""
    if points < 2:
        raise ValueError("a grid needs at least 2 points")
    step = (stop - start) / (points - 1)
    return [start + i * step for i in range(points - 1)] + [float(stop)]


def parametric_integrand(alpha: float) -> Callable[[float], float]:
    """``x -> ln(1 + alpha e^{-x} + e^{-2x})``.

    The quadratic is rewritten as ``(1 - e^{-x})^2 + (alpha + 2) e^{-x}`` so
    the alpha -> -2, x -> 0 corner stays accurate.
    """
    shift = alpha + 2.0

    def f(x: float) -> float:
        return _log_shifted_square(-math.expm1(-x), math.exp(-x), shift)

    return f


def derivative_integrand(alpha: float) -> Callable[[float], float]:
    """``x -> 1 / (1 + alpha x + x^2)`` on [0, 1], written as ``(1-x)^2 + (alpha+2) x``."""
    shift = alpha + 2.0

    def f(x: float) -> float:
        d = 1.0 - x
        return 1.0 / (d * d + shift * x)

    return f


def I_direct(alpha: AlphaLike, config: QuadConfig | None = None) -> QuadResult:
    a = _alpha(alpha)
    return integrate(parametric_integrand(a), Domain.semi_infinite(0.0), config)


def dIdalpha_integral(alpha: AlphaLike, config: QuadConfig | None = None) -> QuadResult:
    a = _alpha(alpha)
    if a == -2.0:
        raise DivergentIntegral("int_0^1 dx/(1-x)^2 diverges at x = 1")
    return integrate(derivative_integrand(a), Domain.finite(0.0, 1.0), config)


def dIdalpha_closed(alpha: AlphaLike) -> float:
    """Closed form of dI/dalpha; returns the removable limit 1/2 at alpha = 2."""
    a = _alpha(alpha)
    if a == -2.0:
        raise DivergentValue("dI/dalpha -> +inf as alpha -> -2")
    if a == 2.0:
        return 0.5
    root = math.sqrt((2.0 - a) * (2.0 + a))
    return 2.0 / root * math.atan(math.sqrt((2.0 - a) / (2.0 + a)))


def dIdalpha_finite_difference(alpha: AlphaLike, h: float = 1e-3,
                               config: QuadConfig | None = None) -> float:
    """Central difference of I_direct with one Richardson step on (h, h/2)."""
    a = _alpha(alpha)
    if not 0.0 < h < min(2.0 - a, a + 2.0):
        raise StepOutOfRange(f"alpha +/- h leaves (-2, 2): alpha={a!r}, h={h!r}")

    def central(step: float) -> float:
        up = I_direct(a + step, config).value
        down = I_direct(a - step, config).value
        return (up - down) / (2.0 * step)

    return (4.0 * central(0.5 * h) - central(h)) / 3.0


def derivative_triple(alpha: AlphaLike, config: QuadConfig | None = None,
                      h: float = 1e-3) -> DerivativeTriple:
    a = _alpha(alpha)
    if abs(a) == 2.0:
        raise AlphaOutOfRange("derivative_triple needs -2 < alpha < 2")
    return DerivativeTriple(
        by_quadrature=dIdalpha_integral(a, config).value,
        by_closed_form=dIdalpha_closed(a),
        by_finite_difference=dIdalpha_finite_difference(a, h, config),
    )


def antiderivative(alpha: float) -> Callable[[float], float]:
    """``F(x) = 2/sqrt(4-alpha^2) * arctan((alpha + 2x)/sqrt(4-alpha^2))``."""
    root = math.sqrt((2.0 - alpha) * (2.0 + alpha))

    def F(x: float) -> float:
        return 2.0 / root * math.atan((alpha + 2.0 * x) / root)

    return F


def antiderivative_check(alpha: AlphaLike, samples: int = 101,
                         tolerance: float = 1e-6) -> CheckResult:
    """Differentiate F numerically at interior points of (0, 1) and compare to the integrand.

    Uses the 5-point stencil with step 1e-3 (truncation ~h^4).
    """
    a = _alpha(alpha)
    if abs(a) == 2.0:
        raise AlphaOutOfRange("antiderivative_check needs -2 < alpha < 2")
    if samples < 1:
        raise ValueError("samples must be positive")
    F = antiderivative(a)
    f = derivative_integrand(a)
    h = 1e-3
    worst = 0.0
    for i in range(1, samples + 1):
        x = i / (samples + 1)
        slope = (F(x - 2 * h) - 8 * F(x - h) + 8 * F(x + h) - F(x + 2 * h)) / (12 * h)
        worst = max(worst, abs(slope - f(x)))
    return CheckResult.compare(f"antiderivative[alpha={a:g}]", 0.0, worst, tolerance)


def verify_identities(samples: int = 1000, seed: int = 0,
                      tolerance: float = 1e-12) -> CheckReport:
    """Spot-check the arctan difference formula and the half-angle tangent.

    Both sides are evaluated at 30 significant digits.  In double precision
    ``1 + cos(u)`` cancels as u -> pi, which would show up as a false
    failure of an identity that holds exactly.
    """
    if samples < 2:
        raise ValueError("samples must be >= 2")
    rng = np.random.default_rng(seed)

    pairs = [(1.0, 0.0), (3.0, 1.0 / math.sqrt(3.0))]
    while len(pairs) < samples:
        x, y = rng.uniform(-10.0, 10.0, size=2)
        if 1.0 + x * y > 0.0:
            pairs.append((float(x), float(y)))

    angles = [0.5 * math.pi]
    while len(angles) < samples:
        u = float(rng.uniform(0.0, math.pi))
        if 0.0 < u < math.pi:
            angles.append(u)

    with mpmath.workdps(30):
        arctan_gap = max(
            abs(mpmath.atan(x) - mpmath.atan(y) - mpmath.atan((x - y) / (1 + x * y)))
            for x, y in map(lambda p: (mpmath.mpf(p[0]), mpmath.mpf(p[1])), pairs)
        )
        half_angle_gap = max(
            abs(mpmath.sqrt((1 - mpmath.cos(u)) / (1 + mpmath.cos(u))) - mpmath.tan(u / 2))
            for u in map(mpmath.mpf, angles)
        )
    return CheckReport([
        CheckResult.compare("identity_arctan_difference", 0.0, float(arctan_gap), tolerance),
        CheckResult.compare("identity_half_angle", 0.0, float(half_angle_gap), tolerance),
    ])


def I_closed(alpha: AlphaLike) -> float:
    theta = arccos_half(_alpha(alpha))
    return -0.5 * theta * theta + CONSTANTS.c


def constant_estimate(alpha: AlphaLike, config: QuadConfig | None = None) -> float:
    """``I_direct(alpha) + arccos(alpha/2)^2 / 2``, which should not depend on alpha."""
    a = _alpha(alpha)
    theta = arccos_half(a)
    return I_direct(a, config).value + 0.5 * theta * theta


def infer_constant(grid: Iterable[AlphaLike], config: QuadConfig | None = None) -> tuple[float, float]:
    """Mean and max-min spread of the integration constant estimated over ``grid``."""
    alphas = [_alpha(a) for a in grid]
    if not alphas:
        raise ValueError("grid must be nonempty")
    if any(a == -2.0 for a in alphas):
        raise AlphaOutOfRange("infer_constant grid must avoid alpha = -2")
    estimates = [constant_estimate(a, config) for a in alphas]
    return math.fsum(estimates) / len(estimates), max(estimates) - min(estimates)


def check_symmetry(config: QuadConfig | None = None) -> list[CheckResult]:
    """I(2) = 4 I(0), plus the two factorizations at alpha = +2 and alpha = -2.

    Returns three results: the symmetry itself, then
    ``I(2) = 2 int ln(1 + e^{-x})`` and ``I(-2) = 2 int ln(1 - e^{-x})``.
    """
    half_line = Domain.semi_infinite(0.0)
    i_two = I_direct(2.0, config).value
    i_zero = I_direct(0.0, config).value
    i_neg2 = I_direct(-2.0, config).value
    plus = integrate(lambda x: math.log1p(math.exp(-x)), half_line, config).value
    minus = integrate(log1mexp, half_line, config).value
    return [
        CheckResult.compare("symmetry_I2_eq_4I0", 4.0 * i_zero, i_two, 1e-9),
        CheckResult.compare("factorization_alpha_2", 2.0 * plus, i_two, 1e-9),
        CheckResult.compare("factorization_alpha_neg2", 2.0 * minus, i_neg2, 1e-7),
    ]


def rk4(rhs: Callable[[float, float], float], t0: float, y0: float, t1: float, steps: int) -> float:
    """Classical fixed-step 4th-order Runge-Kutta for a scalar ODE y' = rhs(t, y)."""
    dt = (t1 - t0) / steps
    y = y0
    for i in range(steps):
        t = t0 + i * dt
        k1 = rhs(t, y)
        k2 = rhs(t + 0.5 * dt, y + 0.5 * dt * k1)
        k3 = rhs(t + 0.5 * dt, y + 0.5 * dt * k2)
        k4 = rhs(t + dt, y + dt * k3)
        y += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return y


def symmetry_anchor(config: QuadConfig | None = None) -> float:
    """I(2) taken as 4 I(0), both computed numerically (no pi^2/6 involved)."""
    return 4.0 * I_direct(0.0, config).value


def reconstruct_I(alpha_target: AlphaLike, steps: int = 256,
                  config: QuadConfig | None = None, anchor: float | None = None) -> float:
    """Rebuild I(alpha_target) by integrating dI/dalpha (by quadrature) down from alpha = 2.

    The closed form is never consulted; the only input besides the
    derivative is the symmetry anchor I(2) = 4 I(0).
    """
    target = _alpha(alpha_target)
    if target == -2.0:
        raise DivergentIntegral("dI/dalpha is not integrable up to alpha = -2")
    if steps < 8:
        raise StepCountTooSmall(f"need at least 8 steps, got {steps}")
    if anchor is None:
        anchor = symmetry_anchor(config)
    if target == 2.0:
        return anchor

    memo: dict[float, float] = {}

    def slope(a: float, _y: float) -> float:
        if a not in memo:
            memo[a] = dIdalpha_integral(min(a, 2.0), config).value
        return memo[a]

    return rk4(slope, 2.0, anchor, target, steps)
