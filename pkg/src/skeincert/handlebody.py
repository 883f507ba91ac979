"""The genus-2 handlebody: S(H2) = S(Sigma_0^3) is the free ring Q[x, z, y].

Variables are ordered ``(x, z, y)`` so that the (x,z;y)-degree is the
weighted degree for weights ``(1, 1, 2)``.  Free-group words in ``a, b``
map to their SL2 trace polynomials with x = tr(a), z = tr(b), y = tr(ab).
"""

from __future__ import annotations

import random
from functools import lru_cache
from typing import Iterable, List, Sequence, Tuple

from .polyring import Ring, SparsePoly, weighted_degree
from .sl2 import Matrix, mat_inv, mat_mul, trace, IDENTITY

H2 = Ring(("x", "z", "y"))
XZY_WEIGHT = (1, 1, 2)

X, Z, Y = H2.gens()

_INVERSE = {"a": "A", "A": "a", "b": "B", "B": "b"}


class F2Word(tuple):
    """Freely reduced word over ``a, A, b, B`` (uppercase = inverse)."""

    def __new__(cls, letters: Iterable[str] = ()):
        out: List[str] = []
        for ch in letters:
            if ch not in _INVERSE:
                raise ValueError(f"bad letter {ch!r}; use a, A, b, B")
            if out and out[-1] == _INVERSE[ch]:
                out.pop()
            else:
                out.append(ch)
        return super().__new__(cls, out)

    @classmethod
    def parse(cls, text: str) -> "F2Word":
        return cls(text.strip())

    def inverse(self) -> "F2Word":
        return F2Word(_INVERSE[c] for c in reversed(self))

    def __mul__(self, other: "F2Word") -> "F2Word":
        return F2Word(tuple(self) + tuple(other))

    def __str__(self) -> str:
        return "".join(self) or "1"

    def __repr__(self) -> str:
        return f"F2Word({str(self)!r})"


def cyclic_reduce(w: Sequence[str]) -> Tuple[str, ...]:
    w = tuple(w)
    while len(w) >= 2 and w[0] == _INVERSE[w[-1]]:
        w = w[1:-1]
    return w


def canonical(w: Sequence[str]) -> Tuple[str, ...]:
    """Least rotation of w or w^-1; trace is constant on this class."""
    w = cyclic_reduce(F2Word(w))
    if not w:
        return w
    inv = tuple(_INVERSE[c] for c in reversed(w))
    return min(v[i:] + v[:i] for v in (w, inv) for i in range(len(v)))


def trace_poly(w) -> SparsePoly:
    """Trace polynomial of a word in F2 as an element of Q[x, z, y]."""
    if isinstance(w, str):
        w = F2Word.parse(w)
    return _trace(canonical(w))


@lru_cache(maxsize=None)
def _trace(w: Tuple[str, ...]) -> SparsePoly:
    n = len(w)
    if n == 0:
        return H2.const(2)
    if n == 1:
        return X if w[0] in "aA" else Z
    letters = set(w)
    if len(letters) == 1:
        # power of one generator: Chebyshev recursion t_n = t_1 t_{n-1} - t_{n-2}
        g = (w[0],)
        return _trace(g) * _trace(canonical(w[1:])) - _trace(canonical(w[2:]))
    if n == 2:
        # distinct letters from {a,A} x {b,B}
        if w in (("a", "b"), ("A", "B"), ("b", "a"), ("B", "A")):
            return Y
        return X * Z - Y
    # a signed letter occurring twice: w = g U g V (cyclically, w[0] = g)
    for j in range(1, n):
        if w[j] == w[0]:
            gu, gv = w[:j], w[j:]
            u, v = w[1:j], w[j + 1:]
            uv_inv = tuple(u) + tuple(_INVERSE[c] for c in reversed(v))
            return (_trace(canonical(gu)) * _trace(canonical(gv))
                    - _trace(canonical(uv_inv)))
    # every signed letter occurs at most once; cyclically reduced -> commutator type
    # split w = X Y with |X| = 2: tr(XY) = tr X tr Y - tr(X Y^-1)
    x, y = w[:2], w[2:]
    xy_inv = tuple(x) + tuple(_INVERSE[c] for c in reversed(y))
    return (_trace(canonical(x)) * _trace(canonical(y))
            - _trace(canonical(xy_inv)))


def xzy_degree(e: SparsePoly) -> int:
    return weighted_degree(e, XZY_WEIGHT)


def word_matrix(w, a: Matrix, b: Matrix) -> Matrix:
    """Image of ``w`` under a -> A, b -> B."""
    if isinstance(w, str):
        w = F2Word.parse(w)
    images = {"a": a, "A": mat_inv(a), "b": b, "B": mat_inv(b)}
    m = IDENTITY
    for ch in w:
        m = mat_mul(m, images[ch])
    return m


def trace_coordinates(a: Matrix, b: Matrix) -> Tuple[int, int, int]:
    """Values of (x, z, y) at the pair (A, B)."""
    return trace(a), trace(b), trace(mat_mul(a, b))


def random_word(rng: random.Random, max_len: int) -> F2Word:
    letters = []
    target = rng.randint(1, max_len)
    while len(letters) < target:
        ch = rng.choice("aAbB")
        if letters and letters[-1] == _INVERSE[ch]:
            continue
        letters.append(ch)
    return F2Word(letters)
