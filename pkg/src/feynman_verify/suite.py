"""The full verification suite, run as an ordered list of named checks.

Every check is a pure function of the run context and yields one
``CheckResult``.  Results are reported in declaration order whether the
checks run serially or on a thread pool.  Engine errors (for example
``NonConvergence`` on a starved refinement budget) become failed results
named ``<check>:<ErrorClass>`` and do not stop the run.
"""

from __future__ import annotations

import math
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping

from . import parametric as par
from . import series as ser
from .checks import CheckReport, CheckResult
from .errors import FeynmanVerifyError
from .quadrature import Domain, QuadConfig, integrate

BASEL = par.BASEL

# Tolerance tiers: regular integrals, singular-endpoint integrals,
# finite-difference comparisons.
REGULAR_TOL = 1e-10
SINGULAR_TOL = 1e-8
FD_TOL = 1e-5

DERIVATIVE_GRID = par.uniform_grid(-1.9, 1.9, 39)
CLOSED_FORM_GRID = par.uniform_grid(-1.99, 2.0, 41)
CONSTANT_GRID = par.uniform_grid(-1.9, 2.0, 21)
LOG_SERIES_CASES = [(0.0, 10), (0.5, 50), (0.9, 200)]
ENCLOSURE_NS = [10, 100, 1000, 10_000]
IDENTITY_SAMPLES = 1000
IDENTITY_SEED = 0


class _Run:
    """Per-run configuration plus a memo for values shared between checks."""

    def __init__(self, config: QuadConfig):
        self.config = config
        self._memo: dict = {}
        self._lock = threading.Lock()

    def memo(self, key, compute: Callable):
        with self._lock:
            if key in self._memo:
                return self._memo[key]
        value = compute()
        with self._lock:
            return self._memo.setdefault(key, value)

    def i_direct(self, alpha: float) -> float:
        return self.memo(("I", alpha), lambda: par.I_direct(alpha, self.config).value)

    def basel(self) -> float:
        return self.memo("basel", lambda: ser.basel_integral(self.config))

    def identities(self) -> CheckReport:
        return self.memo("identities", lambda: par.verify_identities(IDENTITY_SAMPLES, IDENTITY_SEED))

    def constant(self) -> tuple[float, float]:
        return self.memo("constant", lambda: par.infer_constant(CONSTANT_GRID, self.config))

    def symmetry(self) -> dict[str, CheckResult]:
        return self.memo("symmetry", lambda: {r.name: r for r in par.check_symmetry(self.config)})

    def anchor(self) -> float:
        return self.memo("anchor", lambda: 4.0 * self.i_direct(0.0))

    def reconstruct(self, target: float, steps: int) -> float:
        return self.memo(
            ("reconstruct", target, steps),
            lambda: par.reconstruct_I(target, steps, self.config, anchor=self.anchor()),
        )

    def termwise(self) -> list[float]:
        return self.memo(
            "termwise",
            lambda: [ser.termwise_integral(n, self.config).actual for n in range(1, 101)],
        )


@dataclass(frozen=True)
class SuiteCheck:
    name: str
    tolerance: float
    compute: Callable[[_Run], tuple[float, float]]


def _quad(f, domain, expected):
    return lambda run: (expected, integrate(f, domain, run.config).value)


def _max_gap(pairs) -> float:
    return max(abs(a - b) for a, b in pairs)


def _derivative_grid(run: _Run):
    return 0.0, max(par.derivative_triple(a, run.config).max_pairwise_gap for a in DERIVATIVE_GRID)


def _closed_form_grid(run: _Run):
    return 0.0, _max_gap((run.i_direct(a), par.I_closed(a)) for a in CLOSED_FORM_GRID)


def _observed_order(run: _Run):
    exact = BASEL / 4.0
    coarse = abs(run.reconstruct(0.0, 128) - exact)
    fine = abs(run.reconstruct(0.0, 256) - exact)
    return 4.0, math.log2(coarse / fine)


def _log_series(x: float, N: int) -> SuiteCheck:
    bound = ser.log_series_check(x, N).tolerance

    def compute(run):
        r = ser.log_series_check(x, N)
        return r.expected, r.actual

    return SuiteCheck(f"log_series[x={x:g},N={N}]", bound, compute)


def _enclosure(N: int) -> SuiteCheck:
    state = ser.zeta2_partial(N)
    mid = 0.5 * (state.tail_low + state.tail_high)
    half = 0.5 * (state.tail_high - state.tail_low)
    return SuiteCheck(f"zeta2_tail_enclosure[N={N}]", half, lambda run: (mid, BASEL - state.partial_sum))


def _antiderivative(alpha: float) -> SuiteCheck:
    def compute(run):
        r = par.antiderivative_check(alpha, 101)
        return r.expected, r.actual

    return SuiteCheck(f"antiderivative[alpha={alpha:g}]", 1e-6, compute)


def _symmetry(name: str, tolerance: float) -> SuiteCheck:
    def compute(run):
        r = run.symmetry()[name]
        return r.expected, r.actual

    return SuiteCheck(name, tolerance, compute)


def _identity(name: str) -> SuiteCheck:
    return SuiteCheck(name, 1e-12, lambda run: (0.0, run.identities()[name].actual))


def _zeta2_partial_10(run: _Run):
    exact = float(sum(Fraction(1, n * n) for n in range(1, 11)))
    return exact, ser.zeta2_partial(10).partial_sum


def build_suite() -> list[SuiteCheck]:
    """The suite in its fixed declaration order."""
    half_line = Domain.semi_infinite(0.0)
    unit = Domain.finite(0.0, 1.0)
    checks = [
        SuiteCheck("quad_oracle_arctan", REGULAR_TOL,
                   _quad(lambda x: 1.0 / (1.0 + x * x), unit, math.pi / 4)),
        SuiteCheck("quad_oracle_exp", REGULAR_TOL, _quad(lambda x: math.exp(-x), half_line, 1.0)),
        SuiteCheck("quad_oracle_log", SINGULAR_TOL, _quad(math.log, unit, -1.0)),
        SuiteCheck("quad_oracle_I0", REGULAR_TOL,
                   _quad(lambda x: math.log1p(math.exp(-2.0 * x)), half_line, BASEL / 4)),
        SuiteCheck("derivative_triple_grid", FD_TOL, _derivative_grid),
        SuiteCheck("dIdalpha_closed_limit", 1e-15, lambda run: (0.5, par.dIdalpha_closed(2.0))),
        *(_antiderivative(a) for a in (0.0, 1.0, -1.9)),
        _identity("identity_arctan_difference"),
        _identity("identity_half_angle"),
        SuiteCheck("constant_mean", SINGULAR_TOL, lambda run: (BASEL, run.constant()[0])),
        SuiteCheck("constant_spread", 1e-7, lambda run: (0.0, run.constant()[1])),
        _symmetry("symmetry_I2_eq_4I0", 1e-9),
        _symmetry("factorization_alpha_2", 1e-9),
        _symmetry("factorization_alpha_neg2", 1e-7),
        SuiteCheck("reconstruct_alpha_0", 1e-6, lambda run: (BASEL / 4, run.reconstruct(0.0, 256))),
        SuiteCheck("reconstruct_alpha_neg1", 1e-6,
                   lambda run: (-math.pi ** 2 / 18, run.reconstruct(-1.0, 256))),
        # log2 of the error ratio when steps double; +-1 is a factor 2 on the ratio
        SuiteCheck("reconstruct_observed_order", 1.0, _observed_order),
        SuiteCheck("closed_form_grid", 1e-7, _closed_form_grid),
        SuiteCheck("termwise_integral_max", REGULAR_TOL,
                   lambda run: (0.0, _max_gap((v, 1.0 / (n * n)) for n, v in enumerate(run.termwise(), 1)))),
        SuiteCheck("termwise_telescoping", 1e-9,
                   lambda run: (ser.zeta2_partial(100).partial_sum, math.fsum(run.termwise()))),
        *(_log_series(x, N) for x, N in LOG_SERIES_CASES),
        SuiteCheck("basel_integral", SINGULAR_TOL, lambda run: (-BASEL, run.basel())),
        SuiteCheck("apostol", SINGULAR_TOL, lambda run: (BASEL, ser.apostol_integral(run.config))),
        SuiteCheck("apostol_vs_basel", 2e-8,
                   lambda run: (-run.basel(), ser.apostol_integral(run.config))),
        SuiteCheck("zeta2_partial_10", 1e-12, _zeta2_partial_10),
        *(_enclosure(N) for N in ENCLOSURE_NS),
        SuiteCheck("zeta2_accelerated_1000_order3", 1e-12,
                   lambda run: (BASEL, ser.zeta2_accelerated(1000, 3))),
    ]
    return checks


def check_names() -> list[str]:
    return [c.name for c in build_suite()]


def _run_one(check: SuiteCheck, run: _Run, tolerance: float) -> CheckResult:
    try:
        expected, actual = check.compute(run)
    except (FeynmanVerifyError, ArithmeticError, ValueError) as exc:
        return CheckResult.errored(check.name, exc, tolerance=tolerance)
    return CheckResult.compare(check.name, expected, actual, tolerance)


def run_verify_suite(config: QuadConfig | None = None,
                     tolerance_overrides: Mapping[str, float] | None = None,
                     jobs: int = 1) -> CheckReport:
    """Run every check and aggregate the results in declaration order.

    ``tolerance_overrides`` maps check names to replacement tolerances; an
    unknown name raises ``KeyError`` before anything runs.
    """
    config = config or QuadConfig()
    overrides = dict(tolerance_overrides or {})
    suite = build_suite()
    unknown = set(overrides) - {c.name for c in suite}
    if unknown:
        raise KeyError(f"unknown check name(s): {', '.join(sorted(unknown))}")
    tolerances = [overrides.get(c.name, c.tolerance) for c in suite]

    run = _Run(config)
    start = time.perf_counter()
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(lambda ct: _run_one(ct[0], run, ct[1]), zip(suite, tolerances)))
    else:
        results = [_run_one(c, run, tol) for c, tol in zip(suite, tolerances)]
    return CheckReport(results, time.perf_counter() - start)
