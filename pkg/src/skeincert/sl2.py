"""Exact 2x2 integer/rational matrix helpers and seeded SL2(Z) sampling."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Tuple

Matrix = Tuple[Tuple[object, object], Tuple[object, object]]

IDENTITY: Matrix = ((1, 0), (0, 1))


class NotSL2(ValueError):
    pass


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    return (
        (a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]),
        (a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]),
    )


def mat_inv(a: Matrix) -> Matrix:
    """Inverse of a determinant-1 matrix (the adjugate)."""
    return ((a[1][1], -a[0][1]), (-a[1][0], a[0][0]))


def det(a: Matrix):
    return a[0][0] * a[1][1] - a[0][1] * a[1][0]


def trace(a: Matrix):
    return a[0][0] + a[1][1]


def check_sl2(*mats: Matrix) -> None:
    for a in mats:
        if det(a) != 1:
            raise NotSL2(f"determinant {det(a)} != 1 for {a}")


def random_sl2(rng: random.Random, bound: int = 10, steps: int = 12) -> Matrix:
    """Product of random elementary matrices, entries kept within ``bound``.

    A step that would push an entry past ``bound`` is skipped, so the result
    is always in SL2(Z) with ``max |entry| <= bound``.
    """
    m = IDENTITY
    for _ in range(rng.randint(1, steps)):
        k = rng.choice((-2, -1, 1, 2))
        e = ((1, k), (0, 1)) if rng.random() < 0.5 else ((1, 0), (k, 1))
        cand = mat_mul(m, e)
        if max(abs(x) for row in cand for x in row) <= bound:
            m = cand
    if rng.random() < 0.25:
        m = tuple(tuple(-x for x in row) for row in m)
    return m


def as_fraction_matrix(a: Matrix) -> Matrix:
    return tuple(tuple(Fraction(x) for x in row) for row in a)
