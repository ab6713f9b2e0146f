"""Small-denominator rational recognition of big floats."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mp


@dataclass(frozen=True)
class RecognizedRational:
    input: object
    fraction: Fraction | None
    residual: object
    accepted: bool

    def __str__(self):
        return str(self.fraction) if self.accepted else "unrecognized"


def _exact(x):
    """Exact Fraction equal to an mpf (mantissa * 2**exponent)."""
    sign, man, exp, _ = mpmath.mpf(x)._mpf_
    if man == 0:
        return Fraction(0)
    return (-1) ** sign * Fraction(int(man)) * Fraction(2) ** int(exp)


def recognize_rational(x, q_max=64, threshold=None):
    """Best rational p/q with q <= q_max via continued fractions.

    The candidate is accepted only when ``|x - p/q| <= threshold`` (default
    ``10^(-P/2)`` at the current precision).
    """
    x = mpmath.mpf(x)
    if threshold is None:
        threshold = mpmath.mpf(10) ** (-(mp.dps // 2))
    cand = _exact(x).limit_denominator(q_max)
    residual = abs(x - mpmath.mpf(cand.numerator) / cand.denominator)
    return RecognizedRational(x, cand, residual, bool(residual <= threshold))
