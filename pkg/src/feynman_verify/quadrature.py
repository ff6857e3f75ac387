"""Double-exponential (tanh-sinh) quadrature on finite and semi-infinite intervals.

The finite-interval rule works on (0, 1) with every node carried as a pair
``(u, v)`` where ``u + v == 1`` and both are computed without cancellation.
That keeps integrable endpoint singularities such as ``ln(x)`` or
``ln(1 - x)`` resolvable right down to the last node.

A semi-infinite interval ``[lower, inf)`` is mapped onto (0, 1] with
``u = exp(-(x - lower))``; near ``x = lower`` the node is recovered from the
accurate complement ``v = 1 - u`` via ``log1p``.

All state lives in immutable, cached node tables, so :func:`integrate` is
reentrant and may be called from several threads at once as long as the
integrand itself has no side effects.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Literal

from .errors import InvalidDomain, NonConvergence, NonFiniteSample

__all__ = [
    "Domain",
    "QuadConfig",
    "QuadResult",
    "integrate",
    "MAX_REFINEMENT_LEVEL",
]

Integrand = Callable[[float], float]

MAX_REFINEMENT_LEVEL = 15

# Half-width of the trapezoid range in the t variable.  At t = 4.5 the node
# sits about 1e-61 from the endpoint and its weight is ~1e-60, far below
# anything a log-type singularity can contribute.
_T_MAX = 4.5
# Convergence is never declared before this level (h = 1/4).
_MIN_LEVEL = 2


@dataclass(frozen=True)
class Domain:
    """Integration range: ``finite`` is [lower, upper], ``semi_infinite`` is [lower, inf)."""

    kind: Literal["finite", "semi_infinite"]
    lower: float
    upper: float = math.inf

    def __post_init__(self):
        if not math.isfinite(self.lower):
            raise InvalidDomain(f"lower bound must be finite, got {self.lower!r}")
        if self.kind == "finite":
            if not math.isfinite(self.upper):
                raise InvalidDomain(f"upper bound must be finite, got {self.upper!r}")
            if not self.lower < self.upper:
                raise InvalidDomain(f"need lower < upper, got [{self.lower!r}, {self.upper!r}]")
        elif self.kind == "semi_infinite":
            if self.upper != math.inf:
                raise InvalidDomain("semi_infinite domain has no finite upper bound")
        else:
            raise InvalidDomain(f"unknown domain kind {self.kind!r}")

    @classmethod
    def finite(cls, lower: float, upper: float) -> "Domain":
        return cls("finite", float(lower), float(upper))

    @classmethod
    def semi_infinite(cls, lower: float = 0.0) -> "Domain":
        return cls("semi_infinite", float(lower))


@dataclass(frozen=True)
class QuadConfig:
    """Tolerances and budget for :func:`integrate`.

    ``tail_cutoff_epsilon`` is only used when ``semi_infinite_method`` is
    ``"truncation"``, a debugging path that cuts ``[lower, inf)`` at
    ``lower + ln(1/tail_cutoff_epsilon)`` instead of substituting.
    """

    abs_tol: float = 1e-10
    rel_tol: float = 0.0
    max_refinement_level: int = MAX_REFINEMENT_LEVEL
    tail_cutoff_epsilon: float = 1e-17
    semi_infinite_method: Literal["substitution", "truncation"] = "substitution"

    def __post_init__(self):
        if not self.abs_tol > 0:
            raise ValueError(f"abs_tol must be > 0, got {self.abs_tol!r}")
        if not self.rel_tol >= 0:
            raise ValueError(f"rel_tol must be >= 0, got {self.rel_tol!r}")
        if not 1 <= self.max_refinement_level <= MAX_REFINEMENT_LEVEL:
            raise ValueError(
                f"max_refinement_level must be in 1..{MAX_REFINEMENT_LEVEL}, "
                f"got {self.max_refinement_level!r}"
            )
        if not 0 < self.tail_cutoff_epsilon < 1:
            raise ValueError("tail_cutoff_epsilon must be in (0, 1)")
        if self.semi_infinite_method not in ("substitution", "truncation"):
            raise ValueError(f"unknown semi_infinite_method {self.semi_infinite_method!r}")

    def tolerance_for(self, value: float) -> float:
        return max(self.abs_tol, self.rel_tol * abs(value))


@dataclass(frozen=True)
class QuadResult:
    value: float
    error_estimate: float
    evaluations: int
    converged: bool


@lru_cache(maxsize=None)
def _level_nodes(level: int) -> tuple[tuple[float, float, float], ...]:
    """Nodes added at ``level`` as ``(u, v, weight)`` triples on (0, 1).

    Level 0 uses step 1 in t; each further level halves the step and only
    contributes the odd multiples.  Weights exclude the factor ``h``.
    """
    h = 2.0 ** -level
    jmax = int(_T_MAX / h)
    if level == 0:
        js = range(-jmax, jmax + 1)
    else:
        js = range(-jmax if jmax % 2 else -jmax + 1, jmax + 1, 2)
    nodes = []
    for j in js:
        t = j * h
        s = 0.5 * math.pi * math.sinh(t)
        cosh_s = math.cosh(s)
        # distance from the nearer endpoint, free of cancellation
        near = math.exp(-abs(s)) / (2.0 * cosh_s)
        far = 1.0 - near
        weight = 0.25 * math.pi * math.cosh(t) / (cosh_s * cosh_s)
        u, v = (near, far) if t < 0 else (far, near)
        nodes.append((u, v, weight))
    return tuple(nodes)


def _unit_integrand(f: Integrand, domain: Domain, config: QuadConfig):
    """Pull ``f`` back to a function ``g(u, v)`` on (0, 1) plus a scale factor.

    ``g`` returns None for nodes that round onto an endpoint; those are
    skipped, never evaluated.
    """
    lower = domain.lower
    if domain.kind == "semi_infinite" and config.semi_infinite_method == "substitution":

        def g(u: float, v: float):
            x = lower - (math.log1p(-v) if v < 0.5 else math.log(u))
            if x == lower or u == 0.0:
                return None
            return x, f(x) / u

        return g, 1.0

    if domain.kind == "semi_infinite":
        upper = lower + math.log(1.0 / config.tail_cutoff_epsilon)
    else:
        upper = domain.upper
    width = upper - lower

    def g(u: float, v: float):
        x = lower + width * u if u <= v else upper - width * v
        if x <= lower or x >= upper:
            return None
        return x, f(x)

    return g, width


def _level_sum(g, level: int) -> tuple[float, int]:
    total = 0.0
    count = 0
    for u, v, w in _level_nodes(level):
        sample = g(u, v)
        if sample is None:
            continue
        x, y = sample
        count += 1
        if not math.isfinite(y):
            raise NonFiniteSample(x, y)
        total += w * y
    return total, count


def integrate(f: Integrand, domain: Domain, config: QuadConfig | None = None) -> QuadResult:
    """Integrate ``f`` over ``domain`` by level-doubling tanh-sinh quadrature.

    Convergence is declared once two successive levels agree within
    ``config.tolerance_for(value)``; the absolute difference of those two
    levels is returned as the error estimate.

    Raises:
        NonConvergence: ``max_refinement_level`` reached without agreement.
            The partial estimate is available as ``exc.result``.
        NonFiniteSample: ``f`` returned NaN or an infinity at a node.
    """
    if config is None:
        config = QuadConfig()
    g, scale = _unit_integrand(f, domain, config)

    raw, evaluations = _level_sum(g, 0)
    previous = scale * raw
    error = math.inf
    for level in range(1, config.max_refinement_level + 1):
        added, count = _level_sum(g, level)
        evaluations += count
        raw = 0.5 * raw + 2.0 ** -level * added
        current = scale * raw
        error = abs(current - previous)
        if level >= _MIN_LEVEL and error <= config.tolerance_for(current):
            return QuadResult(current, error, evaluations, True)
        previous = current
    raise NonConvergence(QuadResult(previous, error, evaluations, False))
