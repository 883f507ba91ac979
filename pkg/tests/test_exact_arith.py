from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given, strategies as st

from skeincert.exact_arith import (
    DivisionByZero,
    LaurentPoly,
    Q,
    RatFunc,
    eval_q1,
    format_laurent,
    laurent_mul,
    normalize,
    parse_laurent,
    poly_gcd,
    ratfunc_field_ops,
)

from conftest import laurent, nonzero_laurent, ratfunc

qi = Q ** -1


def test_laurent_mul_examples():
    assert laurent_mul(Q + qi, Q - qi) == Q ** 2 - Q ** -2
    loop = -(Q ** 2) - Q ** -2
    assert laurent_mul(loop, LaurentPoly.const(1)) == loop
    assert laurent_mul(Q ** 3, -(Q ** -3)) == LaurentPoly.const(-1)


def test_monomial_inverse_power():
    assert (2 * Q ** 3) ** -1 == LaurentPoly.monomial(-3, Fraction(1, 2))
    with pytest.raises(ValueError):
        (Q + 1) ** -1


def test_zero_terms_are_dropped():
    p = LaurentPoly({1: 1, 2: 0}) - Q
    assert p.is_zero() and p == LaurentPoly()
    assert not LaurentPoly({-1: Fraction(0)}).terms


def test_eval_q1_examples():
    assert eval_q1(-(Q ** 2) - Q ** -2) == -2
    assert eval_q1(Q + qi) == 2
    for n in range(0, 12):
        assert eval_q1(Q ** n - Q ** (-n - 6)) == 0


def test_field_op_examples():
    d = RatFunc(Q - qi)
    assert ratfunc_field_ops(RatFunc(1) / d, d, "mul") == RatFunc(1)
    r = ratfunc_field_ops(RatFunc(Q), RatFunc(qi), "add")
    assert r == RatFunc(Q ** 2 + 1, Q)
    # canonical: q^-1 * (q^2 + 1) over 1
    assert r.denom == LaurentPoly.const(1)
    assert r.numer == Q + qi
    with pytest.raises(ValueError):
        ratfunc_field_ops(r, r, "pow")


def test_one_over_one_minus_q_minus_six():
    r = RatFunc(1, 1 - Q ** -6)
    # 1/(1 - q^-6) = q^6 / (q^6 - 1)
    assert r.numer == Q ** 6 and r.denom == Q ** 6 - 1
    assert r * (1 - Q ** -6) == RatFunc(1)


def test_canonical_denominator_shape():
    r = RatFunc(3 * Q ** 2 - 3, 6 * Q ** 5 + 6 * Q ** 4)
    assert r.denom.leading_coeff() == 1 and r.denom.min_exp() == 0
    # (3q^2 - 3) / (6q^4 (q + 1)) = (q - 1) / (2q^4)
    assert r == RatFunc(Q - 1, 2 * Q ** 4)
    assert r.numer == LaurentPoly({-4: Fraction(-1, 2), -3: Fraction(1, 2)})


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        RatFunc(1, 0)
    with pytest.raises(DivisionByZero):
        RatFunc(Q) / RatFunc(0)
    with pytest.raises(DivisionByZero):
        RatFunc(0).inverse()
    with pytest.raises(DivisionByZero):
        RatFunc(1, Q - 1).eval_q1()
    assert isinstance(DivisionByZero(), ZeroDivisionError)


def test_format_parse_roundtrip_example():
    p = -(Q ** 2) - Q ** -2
    assert format_laurent(p) == "{-2:-1, 2:-1}"
    assert parse_laurent("{-2:-1, 2:-1}") == p
    assert parse_laurent("{}") == LaurentPoly()
    assert parse_laurent("{0:1/3}") == LaurentPoly.const(Fraction(1, 3))


@given(laurent())
def test_format_parse_roundtrip(p):
    assert parse_laurent(format_laurent(p)) == p


def _sym(p, q):
    return sum(sympy.Rational(c.numerator, c.denominator) * q ** e for e, c in p.items())


@given(nonzero_laurent(), nonzero_laurent())
def test_gcd_matches_sympy(a, b):
    q = sympy.Symbol("q")
    g = poly_gcd(a, b)
    expect = sympy.Poly(sympy.gcd(sympy.together(_sym(a, q) * q ** 8),
                                  sympy.together(_sym(b, q) * q ** 8)), q)
    # compare up to units of Q[q, q^-1] (scalars and powers of q)
    got = sympy.Poly(sympy.expand(_sym(g, q) * q ** 20), q)
    strip = lambda P: sympy.Poly(sympy.cancel(P.as_expr() / q ** min(m[0] for m in P.monoms())), q).monic()
    assert strip(got) == strip(expect)


@given(ratfunc(), ratfunc(), ratfunc())
def test_field_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == RatFunc(0)
    if not a.is_zero():
        assert a * a.inverse() == RatFunc(1)
        assert (b / a) * a == b


@given(ratfunc())
def test_normalize_idempotent(a):
    n = normalize(a)
    assert n == a and normalize(n).numer == n.numer and normalize(n).denom == n.denom
    assert hash(n) == hash(a)


@given(ratfunc(), ratfunc())
def test_equal_values_equal_forms(a, b):
    # cross-multiplication equality agrees with canonical-form equality
    same = a.numer * b.denom == b.numer * a.denom
    assert same == (a == b)


@given(laurent(), laurent())
def test_eval_q1_homomorphism(a, b):
    assert eval_q1(a * b) == eval_q1(a) * eval_q1(b)
    assert eval_q1(a + b) == eval_q1(a) + eval_q1(b)


@given(ratfunc(), ratfunc())
def test_ratfunc_eval_q1_homomorphism(a, b):
    assume(eval_q1(a.denom) != 0 and eval_q1(b.denom) != 0)
    assert (a * b).eval_q1() == a.eval_q1() * b.eval_q1()
    assert (a + b).eval_q1() == a.eval_q1() + b.eval_q1()


@given(st.integers(0, 30))
def test_sliding_denominators_invert(n):
    d = Q ** n - Q ** (-n - 6)
    assert RatFunc(1, d) * d == RatFunc(1)
