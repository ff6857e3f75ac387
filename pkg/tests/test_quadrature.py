import math
import threading

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from feynman_verify.errors import InvalidDomain, NonConvergence, NonFiniteSample
from feynman_verify.parametric import parametric_integrand
from feynman_verify.quadrature import Domain, QuadConfig, integrate

ABS_TOL = 1e-10
UNIT = Domain.finite(0.0, 1.0)
HALF_LINE = Domain.semi_infinite(0.0)


@pytest.mark.parametrize("f, domain, expected", [
    (lambda x: 1.0 / (1.0 + x * x), UNIT, math.pi / 4),
    (lambda x: math.exp(-x), HALF_LINE, 1.0),
    (math.log, UNIT, -1.0),
    (lambda x: math.log1p(math.exp(-2.0 * x)), HALF_LINE, math.pi ** 2 / 24),
])
def test_examples(f, domain, expected):
    result = integrate(f, domain, QuadConfig(abs_tol=ABS_TOL))
    assert result.converged
    assert result.value == pytest.approx(expected, abs=ABS_TOL)
    assert result.error_estimate <= ABS_TOL
    assert result.evaluations > 0


def test_converged_result_respects_tolerance_invariant():
    cfg = QuadConfig(abs_tol=1e-6, rel_tol=1e-9)
    r = integrate(lambda x: math.exp(x), Domain.finite(0.0, 10.0), cfg)
    assert r.converged
    assert r.error_estimate <= max(cfg.abs_tol, cfg.rel_tol * abs(r.value))
    assert r.value == pytest.approx(math.expm1(10.0), rel=1e-12)


def test_evaluation_count_is_exact():
    calls = []

    def f(x):
        calls.append(x)
        return x * x

    r = integrate(f, UNIT)
    assert r.evaluations == len(calls)


def test_endpoints_never_sampled():
    seen = []

    def f(x):
        seen.append(x)
        return math.log(x) + math.log1p(-x)

    integrate(f, UNIT)
    assert all(0.0 < x < 1.0 for x in seen)

    seen.clear()
    integrate(lambda x: seen.append(x) or math.exp(-x), Domain.semi_infinite(2.0))
    assert all(x > 2.0 for x in seen)


@pytest.mark.parametrize("make", [
    lambda: Domain.finite(1.0, 1.0),
    lambda: Domain.finite(2.0, 1.0),
    lambda: Domain.finite(0.0, math.inf),
    lambda: Domain.semi_infinite(-math.inf),
    lambda: Domain("nope", 0.0, 1.0),
])
def test_invalid_domain(make):
    with pytest.raises(InvalidDomain):
        make()


def test_non_finite_sample():
    with pytest.raises(NonFiniteSample):
        integrate(lambda x: 1.0 / (x - 0.5) if x != 0.5 else math.nan, UNIT)


def test_non_convergence_carries_partial_result():
    with pytest.raises(NonConvergence) as info:
        integrate(lambda x: math.sin(200.0 * x), UNIT, QuadConfig(max_refinement_level=3))
    assert not info.value.result.converged
    assert info.value.result.error_estimate > 1e-10


@pytest.mark.parametrize("kwargs", [
    dict(abs_tol=0.0), dict(rel_tol=-1.0), dict(max_refinement_level=0),
    dict(max_refinement_level=16), dict(tail_cutoff_epsilon=0.0),
    dict(semi_infinite_method="other"),
])
def test_config_validation(kwargs):
    with pytest.raises(ValueError):
        QuadConfig(**kwargs)


def test_truncation_mode_matches_substitution():
    f = lambda x: math.log1p(math.exp(-2.0 * x))
    sub = integrate(f, HALF_LINE).value
    cut = integrate(f, HALF_LINE, QuadConfig(semi_infinite_method="truncation", tail_cutoff_epsilon=1e-18))
    assert cut.value == pytest.approx(sub, abs=1e-12)


def test_shifted_semi_infinite():
    r = integrate(lambda x: math.exp(-x), Domain.semi_infinite(3.0))
    assert r.value == pytest.approx(math.exp(-3.0), abs=1e-14)


# --- properties -------------------------------------------------------------

coeffs = st.lists(st.floats(-5, 5), min_size=1, max_size=6)
bounds = st.tuples(st.floats(-3, 3), st.floats(0.1, 3))


def poly(cs):
    return lambda x: sum(c * x ** k for k, c in enumerate(cs))


def poly_integral(cs, a, b):
    return sum(c * (b ** (k + 1) - a ** (k + 1)) / (k + 1) for k, c in enumerate(cs))


@settings(max_examples=60, deadline=None)
@given(coeffs, coeffs, st.floats(-3, 3), st.floats(-3, 3), bounds)
def test_linearity(cf, cg, a, b, ab):
    lo, width = ab
    dom = Domain.finite(lo, lo + width)
    f, g = poly(cf), poly(cg)
    combined = integrate(lambda x: a * f(x) + b * g(x), dom).value
    separate = a * integrate(f, dom).value + b * integrate(g, dom).value
    assert abs(combined - separate) <= 10 * ABS_TOL


@settings(max_examples=60, deadline=None)
@given(coeffs, st.floats(-3, 3), st.floats(0.1, 2), st.floats(0.1, 2))
def test_interval_additivity(cf, a, w1, w2):
    f = poly(cf)
    b, c = a + w1, a + w1 + w2
    left = integrate(f, Domain.finite(a, b)).value
    right = integrate(f, Domain.finite(b, c)).value
    whole = integrate(f, Domain.finite(a, c)).value
    assert abs(left + right - whole) <= 10 * ABS_TOL


def _rational(alpha):
    root = math.sqrt(4.0 - alpha * alpha)
    F = lambda x: 2.0 / root * math.atan((alpha + 2.0 * x) / root)
    return (lambda x: 1.0 / (1.0 + alpha * x + x * x)), F(1.0) - F(0.0)


ORACLE_BATTERY = [
    ("x^0 on [0,1]", poly([1.0]), UNIT, 1.0),
    ("x on [0,2]", poly([0, 1]), Domain.finite(0, 2), 2.0),
    ("x^2 on [-1,1]", poly([0, 0, 1]), Domain.finite(-1, 1), 2 / 3),
    ("x^3 on [1,2]", poly([0, 0, 0, 1]), Domain.finite(1, 2), 15 / 4),
    ("x^5-x on [0,3]", poly([0, -1, 0, 0, 0, 1]), Domain.finite(0, 3), 3 ** 6 / 6 - 4.5),
    ("1+2x+3x^2 on [-2,1]", poly([1, 2, 3]), Domain.finite(-2, 1), poly_integral([1, 2, 3], -2, 1)),
    ("x^8 on [0,1]", poly([0] * 8 + [1]), UNIT, 1 / 9),
    ("x^11 on [-1,2]", poly([0] * 11 + [1]), Domain.finite(-1, 2), (2 ** 12 - 1) / 12),
    ("e^x on [0,1]", math.exp, UNIT, math.e - 1),
    ("e^-x on [0,inf)", lambda x: math.exp(-x), HALF_LINE, 1.0),
    ("e^-3x on [0,inf)", lambda x: math.exp(-3 * x), HALF_LINE, 1 / 3),
    ("e^-x/2 on [1,inf)", lambda x: math.exp(-x / 2), Domain.semi_infinite(1.0), 2 * math.exp(-0.5)),
    ("e^2x on [-1,0]", lambda x: math.exp(2 * x), Domain.finite(-1, 0), (1 - math.exp(-2)) / 2),
    ("x e^-x on [0,inf)", lambda x: x * math.exp(-x), HALF_LINE, 1.0),
    ("x^2 e^-x on [0,inf)", lambda x: x * x * math.exp(-x), HALF_LINE, 2.0),
    ("e^-x on [0,5]", lambda x: math.exp(-x), Domain.finite(0, 5), 1 - math.exp(-5)),
    ("cosh on [-1,1]", math.cosh, Domain.finite(-1, 1), 2 * math.sinh(1)),
    ("1/(1-x+x^2)", *_rational(-1.0)[:1], UNIT, _rational(-1.0)[1]),
    ("1/(1+x^2)", *_rational(0.0)[:1], UNIT, _rational(0.0)[1]),
    ("1/(1+x+x^2)", *_rational(1.0)[:1], UNIT, _rational(1.0)[1]),
]


@pytest.mark.parametrize("label, f, domain, expected", ORACLE_BATTERY, ids=[c[0] for c in ORACLE_BATTERY])
def test_oracle_battery(label, f, domain, expected):
    assert abs(integrate(f, domain).value - expected) <= ABS_TOL


def test_oracle_battery_size():
    assert len(ORACLE_BATTERY) == 20


def test_error_estimate_shrinks_with_budget_on_singular_integrand():
    f = parametric_integrand(-2.0)
    estimates = []
    for level in range(1, 9):
        try:
            r = integrate(f, HALF_LINE, QuadConfig(abs_tol=1e-300, max_refinement_level=level))
        except NonConvergence as exc:
            r = exc.result
        estimates.append(r.error_estimate)
    # strictly shrinking until the roundoff floor, and never rising above it
    floor = 16 * math.ulp(math.pi ** 2 / 3)
    for prev, cur in zip(estimates, estimates[1:]):
        assert cur < prev or cur <= floor
    assert estimates[0] > 1e-6 and estimates[-1] <= floor


def test_reentrant_from_threads():
    f = parametric_integrand(0.5)
    reference = integrate(f, HALF_LINE)
    out = []
    threads = [threading.Thread(target=lambda: out.append(integrate(f, HALF_LINE))) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert out == [reference] * 8
