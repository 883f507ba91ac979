"""The q=1 skein ring of the four-holed sphere.

Seven generators ``s1, s2, s3, s12, s13, s23, s123`` (in that order) subject
to one cubic relation rewriting ``s12 s13 s23``.  Reduced elements are
supported on the basis set Lambda = {k : k12 * k13 * k23 = 0}.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterator, List, Sequence, Tuple

from .polyring import (
    Monomial,
    RewriteRule,
    Ring,
    SparsePoly,
    normal_form,
    weight_of,
    weighted_degree,
)
from .sl2 import Matrix, check_sl2, mat_mul, random_sl2, trace

NAMES = ("s1", "s2", "s3", "s12", "s13", "s23", "s123")
S4 = Ring(NAMES)
S1, S2, S3, S12, S13, S23, S123 = S4.gens()

# index of each generator inside an exponent tuple
I1, I2, I3, I12, I13, I23, I123 = range(7)

S_WEIGHT = (3, 3, 3, 4, 4, 4, 3)
SPRIME_WEIGHT = (2, 2, 1, 2, 3, 3, 3)
# number of s12/s13/s23 factors; drops by at least one per rewrite
COUNT_WEIGHT = (0, 0, 0, 1, 1, 1, 0)

RELATION_LHS: Monomial = (0, 0, 0, 1, 1, 1, 0)
RELATION_RHS = (
    S12 ** 2 + S13 ** 2 + S23 ** 2
    + S12 * (S1 * S2 + S3 * S123)
    + S13 * (S1 * S3 + S2 * S123)
    + S23 * (S2 * S3 + S1 * S123)
    + S1 * S2 * S3 * S123
    + S1 ** 2 + S2 ** 2 + S3 ** 2 + S123 ** 2
    - 4
)
RELATION = RewriteRule(RELATION_LHS, RELATION_RHS, COUNT_WEIGHT)


def s_weight(k: Sequence[int]) -> int:
    return weight_of(k, S_WEIGHT)


def sprime_weight(k: Sequence[int]) -> int:
    return weight_of(k, SPRIME_WEIGHT)


def in_lambda(k: Sequence[int]) -> bool:
    return k[I12] * k[I13] * k[I23] == 0


def sprime_order(m: Monomial):
    return (sprime_weight(m), weight_of(m, COUNT_WEIGHT), m)


def s4_normal_form(e: SparsePoly, highest_first: bool = True) -> SparsePoly:
    """Unique Lambda-supported representative of ``e``.

    Reducible monomials of largest s' are rewritten first.
    """
    return normal_form(e, RELATION, order=sprime_order, highest_first=highest_first)


def is_reduced(e: SparsePoly) -> bool:
    return all(in_lambda(m) for m in e.monomials())


def sprime_degree(e: SparsePoly) -> int:
    return weighted_degree(e, SPRIME_WEIGHT)


def lambda_monomials(max_weight: int, weight: Sequence[int] = SPRIME_WEIGHT) -> List[Monomial]:
    """All Lambda tuples with weighted degree <= ``max_weight``, sorted."""
    out = []
    bounds = [max_weight // w if w else 0 for w in weight]

    def rec(i, acc, budget):
        if i == 7:
            if in_lambda(acc):
                out.append(tuple(acc))
            return
        for e in range(bounds[i] + 1):
            if e * weight[i] > budget:
                break
            rec(i + 1, acc + [e], budget - e * weight[i])

    rec(0, [], max_weight)
    return sorted(out)


# -- SL2 oracle -------------------------------------------------------------------

def generator_values(a1: Matrix, a2: Matrix, a3: Matrix) -> Tuple:
    """Values of the seven generators at an SL2 triple.

    A loop maps to minus the trace of its holonomy at q = 1.
    """
    check_sl2(a1, a2, a3)
    a12 = mat_mul(a1, a2)
    return tuple(-trace(m) for m in (
        a1, a2, a3, a12, mat_mul(a1, a3), mat_mul(a2, a3), mat_mul(a12, a3)))


def sl2_oracle_eval(e: SparsePoly, triple: Sequence[Matrix]):
    return e.evaluate(generator_values(*triple))


def random_triple(rng: random.Random) -> Tuple[Matrix, Matrix, Matrix]:
    return random_sl2(rng), random_sl2(rng), random_sl2(rng)


def random_element(rng: random.Random, terms: int = 4, max_exp: int = 3,
                   reduced: bool = False) -> SparsePoly:
    """Random element with small integer coefficients.

    When ``reduced`` is false the monomials are unconstrained, so the result
    usually needs rewriting.
    """
    out = {}
    while len(out) < terms:
        m = tuple(rng.randint(0, max_exp) if rng.random() < 0.5 else 0 for _ in range(7))
        if reduced and not in_lambda(m):
            continue
        c = rng.randint(-5, 5)
        if c:
            out[m] = c
    return SparsePoly(S4, out)


# -- degree-bound verification ----------------------------------------------------

@dataclass
class DegreeBoundRow:
    k: Tuple[int, int, int]
    terms: int
    bound: int
    max_sprime: int
    top_terms: int
    max_top_u13u23: int
    ok: bool


@dataclass
class DegreeBoundReport:
    max_exp: int
    rows: List[DegreeBoundRow] = field(default_factory=list)
    violations: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations


def reduced_sss(k12: int, k13: int, k23: int) -> SparsePoly:
    return s4_normal_form(S4.monomial((0, 0, 0, k12, k13, k23, 0)))


def verify_product_degree_bounds(max_exp: int) -> DegreeBoundReport:
    """Brute-force s12^a s13^b s23^c for 1 <= a, b, c <= max_exp.

    Checks that every basis monomial has s' <= 2a + 3(b + c) and that the
    monomials reaching that bound have u13 * u23 < b * c.
    """
    if max_exp < 1:
        raise ValueError("max_exp must be >= 1")
    report = DegreeBoundReport(max_exp)
    for a, b, c in itertools.product(range(1, max_exp + 1), repeat=3):
        nf = reduced_sss(a, b, c)
        bound = 2 * a + 3 * (b + c)
        degs = {m: sprime_weight(m) for m in nf.monomials()}
        top = [m for m, d in degs.items() if d == bound]
        top_prod = max((m[I13] * m[I23] for m in top), default=0)
        ok = True
        for m, d in sorted(degs.items()):
            if d > bound:
                ok = False
                report.violations.append(f"k=({a},{b},{c}): {m} has s'={d} > {bound}")
            if d == bound and m[I13] * m[I23] >= b * c:
                ok = False
                report.violations.append(
                    f"k=({a},{b},{c}): top monomial {m} has u13*u23={m[I13] * m[I23]} >= {b * c}")
        report.rows.append(DegreeBoundRow(
            (a, b, c), len(nf), bound, max(degs.values()), len(top), top_prod, ok))
    return report


def check_product_subadditivity(rng: random.Random, pairs: int,
                                terms: int = 3, max_exp: int = 2) -> List[str]:
    """s'(nf(u v)) <= s'(u) + s'(v) for random reduced u, v.  Returns violations."""
    bad = []
    for _ in range(pairs):
        u = random_element(rng, terms, max_exp, reduced=True)
        v = random_element(rng, terms, max_exp, reduced=True)
        w = s4_normal_form(u * v)
        if w.is_zero():
            continue
        lhs, rhs = sprime_degree(w), sprime_degree(u) + sprime_degree(v)
        if lhs > rhs:
            bad.append(f"s'({u} * {v}) = {lhs} > {rhs}")
    return bad


# -- generator images for the genus-3 first family at q = 1 -----------------------

def case2a_images() -> List[Tuple[str, SparsePoly]]:
    """Images of alpha_1 .. alpha_123 in the q=1 ring, in variable order."""
    return [
        ("a1", S1), ("a2", S2), ("a3", S3),
        ("a12", S12), ("a13", S13),
        ("a23", S23 + S2 * S3),
        ("a123", S123 + S12 * S3),
    ]


def keylem_product(k: Sequence[int], images=None) -> SparsePoly:
    """Reduced alpha_123^k123 alpha_12^k12 alpha_13^k13 alpha_23^k23 s1^k1 s2^k2 s3^k3."""
    images = images or case2a_images()
    p = S4.one()
    for (_, g), e in zip(images, k):
        if e:
            p = s4_normal_form(p * g ** e)
    return p


def verify_keylem_shadow(max_exp: int) -> List[str]:
    """Every monomial of the reduced alpha-product has s' <= s'(k).  Returns violations."""
    bad = []
    for k in itertools.product(range(max_exp + 1), repeat=7):
        p = keylem_product(k)
        if p.is_zero():
            continue
        d = sprime_degree(p)
        if d > sprime_weight(k):
            bad.append(f"k={k}: s' {d} > {sprime_weight(k)}")
    return bad
