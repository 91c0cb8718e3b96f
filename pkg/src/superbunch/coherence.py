"""Exact coherence coefficients for N passes through a Michelson interferometer.

All counting is done on Python integers, so results stay exact for any pass
count. Conversion to float happens once, in :func:`metrics`, from exact
rationals.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Decimal
from fractions import Fraction
from functools import lru_cache
from typing import List, Tuple, Union

from .errors import DomainError

def _check_passes(n: int) -> int:
    if isinstance(n, bool) or not isinstance(n, int):
        raise TypeError(f"pass count must be an int, got {type(n).__name__}")
    if n < 1:
        raise DomainError(f"pass count must be >= 1, got {n}")
    return n


def binomial(n: int, k: int) -> int:
    """Exact binomial coefficient C(n, k); raises ``DomainError`` if k > n."""
    if n < 0 or k < 0:
        raise DomainError(f"binomial arguments must be non-negative, got ({n}, {k})")
    if k > n:
        raise DomainError(f"binomial({n}, {k}) undefined: k > n")
    return math.comb(n, k)


@lru_cache(maxsize=None)
def _row(n: int) -> Tuple[int, ...]:
    return tuple(math.comb(n, k) for k in range(n + 1))


def overlap_sum(n: int, m: int) -> int:
    """Number of (route, conjugate route) pairs of one photon whose arm-2
    counts differ by exactly ``m``: sum_k C(n, k) C(n, k + m)."""
    row = _row(n)
    m = abs(m)
    return sum(row[k] * row[k + m] for k in range(n - m + 1))


def constant_coefficient(n: int) -> int:
    """Weight of the delay-independent background, (sum_k C(n,k)^2)^2."""
    _check_passes(n)
    return overlap_sum(n, 0) ** 2


def interference_coefficients(n: int) -> List[int]:
    """Per-order weights ``[c_1, ..., c_n]`` of the sinc^2(m dw tau / 2) terms."""
    _check_passes(n)
    return [2 * overlap_sum(n, m) ** 2 for m in range(1, n + 1)]


@dataclass(frozen=True)
class CoefficientSet:
    n: int
    c_constant: int
    c_interference: Tuple[int, ...]

    @property
    def c_interference_total(self) -> int:
        return sum(self.c_interference)

    @classmethod
    def for_passes(cls, n: int) -> "CoefficientSet":
        return cls(n, constant_coefficient(n), tuple(interference_coefficients(n)))


@dataclass(frozen=True)
class CoherenceMetrics:
    """Closed-form figures of merit for one pass count.

    ``r_pb`` is the peak-to-background ratio of the fringe-resolved trace,
    ``f_pb`` the same ratio after the carrier fringes are filtered out.
    """

    n: int
    r_pb: float
    f_pb: float
    g2_zero: float
    tpa_peak: float
    amplification: float

    def rounded(self, decimals: int = 2) -> dict:
        out = {"n": self.n}
        for key in ("r_pb", "f_pb", "g2_zero", "tpa_peak", "amplification"):
            out[key] = round_half_even(getattr(self, key), decimals)
        return out


def exact_ratios(n: int) -> Tuple[Fraction, Fraction, Fraction]:
    """Exact ``(r_pb, f_pb, g2_zero)`` as fractions."""
    coeffs = CoefficientSet.for_passes(n)
    cc = coeffs.c_constant
    ratio = Fraction(coeffs.c_interference_total, cc)
    return Fraction(16**n, cc), 1 + ratio, 1 + 2 * ratio


def metrics(n: int) -> CoherenceMetrics:
    r_pb, f_pb, g2 = exact_ratios(n)
    return CoherenceMetrics(
        n=n,
        r_pb=float(r_pb),
        f_pb=float(f_pb),
        g2_zero=float(g2),
        tpa_peak=float(2 * r_pb),
        amplification=float(r_pb / 4),
    )


def tpa_peak_counts(n: int) -> float:
    """Normalized TPA count at zero delay, twice the full-trace peak-to-background."""
    _check_passes(n)
    return float(Fraction(2 * 16**n, constant_coefficient(n)))


def amplification_factor(n: int) -> float:
    """TPA peak relative to a single pass (whose peak is 8)."""
    _check_passes(n)
    return float(Fraction(2 * 16**n, constant_coefficient(n)) / Fraction(2 * 16, constant_coefficient(1)))


def round_half_even(value: Union[float, Fraction], decimals: int = 2) -> float:
    if isinstance(value, Fraction):
        dec = Decimal(value.numerator) / Decimal(value.denominator)
    else:
        dec = Decimal(value)
    quantum = Decimal(1).scaleb(-decimals)
    return float(dec.quantize(quantum, rounding=ROUND_HALF_EVEN))
