"""Sphere-sliding coefficient algebra.

Sliding a skein of even degree n across a separating sphere rewrites the
standard diagram as ``1 / (q^n - q^(-n-6))`` times terms of lower degree.
Only the coefficients and the degree bookkeeping live here; the lower-degree
diagrams are opaque remainders tagged by degree.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List

from .exact_arith import LaurentPoly, Q, RatFunc, eval_q1


class OddDegree(ValueError):
    pass


class NegativeDegree(ValueError):
    pass


@dataclass(frozen=True)
class SlideCoeff:
    n: int
    value: RatFunc


def _check_degree(n: int):
    if n < 0:
        raise NegativeDegree(f"degree {n} < 0")
    if n % 2:
        raise OddDegree(f"degree {n} is odd")


def kink_coeff() -> LaurentPoly:
    """Removing a positive kink multiplies by -q^-3."""
    return LaurentPoly.monomial(-3, -1)


def slide_denominator(n: int) -> LaurentPoly:
    """q^n - q^(-n-6)."""
    return LaurentPoly({n: 1}) - LaurentPoly({-n - 6: 1})


def derived_denominator(n: int) -> LaurentPoly:
    """Rebuild the denominator from the three local moves.

    Pushing the arcs over the sphere one way costs q^n, the other way q^-n,
    and the two pictures differ by two kinks: posi = kink^2 * nega.  Equating
    q^n * std + lower = kink^2 * (q^-n * std + lower) leaves
    (q^n - kink^2 q^-n) * std = lower.
    """
    posi = Q ** n
    nega = Q ** (-n)
    return posi - kink_coeff() ** 2 * nega


def degree_reduction_coeff(n: int) -> SlideCoeff:
    _check_degree(n)
    return SlideCoeff(n, RatFunc(1, slide_denominator(n)))


def check_nonvanishing(n_max: int) -> bool:
    """q^n - q^(-n-6) is a nonzero element of Q(q) for all even 0 <= n <= n_max."""
    if n_max < 0:
        raise NegativeDegree(f"n_max {n_max} < 0")
    return all(not slide_denominator(n).is_zero() for n in range(0, n_max + 1, 2))


@dataclass(frozen=True)
class SlideStep:
    degree: int
    coeff: SlideCoeff
    remainder_degree: int


def reduction_chain(n: int) -> List[SlideStep]:
    """Slides from degree n down to 0; each remainder has degree n - 2.

    The chain is finite because the degree tags are even, non-negative and
    strictly decreasing.
    """
    _check_degree(n)
    steps = []
    while n > 0:
        nxt = n - 2
        if not (0 <= nxt < n and nxt % 2 == 0):
            raise AssertionError("degree tags must decrease through even values")
        steps.append(SlideStep(n, degree_reduction_coeff(n), nxt))
        n = nxt
    return steps


def q1_denominator_values(n_max: int) -> List[int]:
    """eval at q=1 of every slide denominator; all zero, so divide before specializing."""
    return [int(eval_q1(slide_denominator(n))) for n in range(0, n_max + 1, 2)]
