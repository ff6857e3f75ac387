"""Series side of the Basel identity: partial sums of zeta(2) and their links to integrals."""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath

from ._special import log1mexp
from .checks import CheckResult
from .errors import XOutOfRange
from .parametric import BASEL
from .quadrature import Domain, QuadConfig, integrate


@dataclass(frozen=True)
class SeriesState:
    """Partial sum of sum 1/n^2 after ``n_terms`` terms, with the tail enclosed in (tail_low, tail_high)."""

    n_terms: int
    partial_sum: float

    @property
    def tail_low(self) -> float:
        return 1.0 / (self.n_terms + 1)

    @property
    def tail_high(self) -> float:
        return 1.0 / self.n_terms


def zeta2_partial(N: int) -> SeriesState:
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    total = 0.0
    # smallest terms first
    for n in range(N, 0, -1):
        total += 1.0 / (n * n)
    return SeriesState(N, total)


def zeta2_accelerated(N: int, correction_order: int = 3) -> float:
    """Partial sum plus the first ``correction_order`` Euler-Maclaurin tail terms.

    The tail is 1/N - 1/(2N^2) + 1/(6N^3) - 1/(30N^5) + ..., so orders 1 and 2
    leave errors of size N^-2 and N^-3, and order 3 leaves N^-5 (the N^-4
    coefficient is zero).
    """
    if N < 10:
        raise ValueError(f"N must be >= 10, got {N}")
    if correction_order not in (1, 2, 3):
        raise ValueError(f"correction_order must be 1, 2 or 3, got {correction_order}")
    tail = 1.0 / N
    if correction_order >= 2:
        tail -= 1.0 / (2.0 * N * N)
    if correction_order >= 3:
        tail += 1.0 / (6.0 * N ** 3)
    return zeta2_partial(N).partial_sum + tail


def termwise_integral(n: int, config: QuadConfig | None = None,
                      tolerance: float = 1e-10) -> CheckResult:
    """``int_0^inf e^{-nx}/n dx`` by quadrature, against 1/n^2."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    value = integrate(lambda x: math.exp(-n * x) / n, Domain.semi_infinite(0.0), config).value
    return CheckResult.compare(f"termwise_integral[n={n}]", 1.0 / (n * n), value, tolerance)


def log_series_check(x: float, N: int) -> CheckResult:
    """Compare ``-ln(1-x)`` with its first N Taylor terms against the remainder bound.

    The deviation is measured with enough working digits to resolve the
    bound ``x^(N+1) / ((N+1)(1-x))``, which for most (x, N) lies below double
    precision.  The result has expected 0, actual = deviation and tolerance
    = bound, so it passes iff deviation <= bound.
    """
    if not 0.0 <= x < 1.0:
        raise XOutOfRange(f"x must lie in [0, 1), got {x!r}")
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    name = f"log_series[x={x:g},N={N}]"
    if x == 0.0:
        return CheckResult.compare(name, 0.0, 0.0, math.ulp(0.0))
    bound = x ** (N + 1) / ((N + 1) * (1.0 - x))
    digits = max(30, int(-math.log10(bound)) + 20) if bound > 0 else 30
    with mpmath.workdps(digits):
        xm = mpmath.mpf(x)
        exact = -mpmath.log1p(-xm)
        partial = mpmath.fsum(xm ** n / n for n in range(1, N + 1))
        deviation = abs(exact - partial)
        bound_mp = xm ** (N + 1) / ((N + 1) * (1 - xm))
    return CheckResult.compare(name, 0.0, float(deviation), float(bound_mp))


def basel_integral(config: QuadConfig | None = None) -> float:
    """``int_0^inf ln(1 - e^{-x}) dx`` (log singularity at x = 0)."""
    return integrate(log1mexp, Domain.semi_infinite(0.0), config).value


def basel_integral_check(config: QuadConfig | None = None, tolerance: float = 1e-8) -> CheckResult:
    return CheckResult.compare("basel_integral", -BASEL, basel_integral(config), tolerance)


def apostol_integrand(x: float) -> float:
    """``-ln(1-x)/x``, the Apostol double integral after the inner y-integration."""
    if x == 0.0:
        return 1.0
    return -math.log1p(-x) / x


def apostol_integral(config: QuadConfig | None = None) -> float:
    return integrate(apostol_integrand, Domain.finite(0.0, 1.0), config).value


def apostol_check(config: QuadConfig | None = None, tolerance: float = 1e-8) -> CheckResult:
    return CheckResult.compare("apostol", BASEL, apostol_integral(config), tolerance)
