import random

import pytest
from hypothesis import given, strategies as st

from skeincert.handlebody import (
    H2,
    F2Word,
    canonical,
    random_word,
    trace_coordinates,
    trace_poly,
    word_matrix,
    xzy_degree,
)
from skeincert.sl2 import NotSL2, check_sl2, det, mat_inv, mat_mul, random_sl2, trace

x, z, y = H2.gens()

words = st.lists(st.sampled_from("aAbB"), max_size=8).map(lambda l: F2Word(l))


def _pairs(seed, n):
    rng = random.Random(seed)
    return [(random_sl2(rng), random_sl2(rng)) for _ in range(n)]


def test_trace_poly_examples():
    assert trace_poly("a") == x
    assert trace_poly("b") == z
    assert trace_poly("ab") == y
    assert trace_poly("") == H2.const(2)
    assert trace_poly("aB") == x * z - y
    assert trace_poly("aa") == x ** 2 - 2


@pytest.mark.parametrize("w", ["aB", "aa", "abAB", "aabbb", "aBaBB", "abababab"])
def test_examples_against_matrices(w):
    p = trace_poly(w)
    for a, b in _pairs(11, 100):
        assert p.evaluate(trace_coordinates(a, b)) == trace(word_matrix(w, a, b))


def test_commutator_trace():
    # classical Fricke identity tr[a,b] = x^2 + y^2 + z^2 - xyz - 2
    assert trace_poly("abAB") == x ** 2 + y ** 2 + z ** 2 - x * y * z - 2


def test_word_basics():
    w = F2Word.parse(" aab ")
    assert w == F2Word("aab")
    assert w.inverse() == F2Word("BAA")
    assert str(F2Word("")) == "1"
    # concatenation is not freely reduced, but the trace sees the identity
    assert trace_poly(w * w.inverse()) == H2.const(2)


def test_canonical_is_class_invariant():
    assert canonical("abAB") == canonical("BabA") == canonical("baBA")
    assert canonical("aA") == ()


def test_xzy_degree_examples():
    assert xzy_degree(H2.monomial((2, 3, 4))) == 2 + 3 + 8
    assert xzy_degree(H2.const(5)) == 0
    assert xzy_degree(y + x * z) == 2


@given(words)
def test_degree_is_word_length_bound(w):
    p = trace_poly(w)
    if not p.is_zero():
        assert xzy_degree(p) <= len(w)


@given(words, st.integers(0, 2 ** 32))
def test_soundness(w, seed):
    p = trace_poly(w)
    for a, b in _pairs(seed, 5):
        assert p.evaluate(trace_coordinates(a, b)) == trace(word_matrix(w, a, b))


@given(words, words)
def test_conjugation_invariance(w, u):
    assert trace_poly(u * w * u.inverse()) == trace_poly(w)


@given(words)
def test_inversion_invariance(w):
    assert trace_poly(w.inverse()) == trace_poly(w)


@given(words, st.integers(0, 8))
def test_rotation_invariance(w, k):
    if w:
        k %= len(w)
        assert trace_poly(F2Word(tuple(w[k:]) + tuple(w[:k]))) == trace_poly(w)


def test_random_word_is_reduced():
    rng = random.Random(3)
    for _ in range(200):
        w = random_word(rng, 8)
        assert 1 <= len(w) <= 8
        assert all(w[i] != w[i + 1].swapcase() for i in range(len(w) - 1))


def test_sl2_helpers():
    rng = random.Random(5)
    for _ in range(50):
        a = random_sl2(rng)
        assert det(a) == 1
        assert max(abs(v) for r in a for v in r) <= 10
        assert mat_mul(a, mat_inv(a)) == ((1, 0), (0, 1))
    with pytest.raises(NotSL2):
        check_sl2(((2, 0), (0, 1)))
