"""Small cancellation-free building blocks shared by the integrands."""

import math

_LN2 = math.log(2.0)


def log1mexp(x: float) -> float:
    """``ln(1 - exp(-x))`` for x > 0, accurate at both ends of the range."""
    if x <= _LN2:
        return math.log(-math.expm1(-x))
    return math.log1p(-math.exp(-x))


def arccos_half(alpha: float) -> float:
    """``arccos(alpha / 2)`` for alpha in [-2, 2].

    Near the endpoints ``1 - (alpha/2)**2`` loses digits, so the angle is
    taken from ``atan2(sqrt((2 - alpha)(2 + alpha)), alpha)`` instead.
    """
    if abs(alpha) > 1.9:
        return math.atan2(math.sqrt((2.0 - alpha) * (2.0 + alpha)), alpha)
    return math.acos(0.5 * alpha)
