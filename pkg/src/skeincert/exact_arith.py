"""Exact coefficient arithmetic: Laurent polynomials in q and the field Q(q).

Rationals are plain :class:`fractions.Fraction`.  A :class:`LaurentPoly` is a
sparse map ``exponent -> Fraction`` with no zero entries, and a
:class:`RatFunc` is a normalized quotient of two of them.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Tuple, Union

Number = Union[int, Fraction]


class DivisionByZero(ZeroDivisionError):
    pass


def _frac(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class LaurentPoly:
    """Element of Q[q, q^-1] stored as ``{exponent: coefficient}``."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, Number] | None = None):
        clean: Dict[int, Fraction] = {}
        if terms:
            for e, c in terms.items():
                c = _frac(c)
                if c:
                    clean[int(e)] = c
        self._terms = dict(sorted(clean.items()))
        self._hash = None

    @classmethod
    def const(cls, c: Number) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def monomial(cls, e: int, c: Number = 1) -> "LaurentPoly":
        return cls({e: c})

    @property
    def terms(self) -> Dict[int, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterable[Tuple[int, Fraction]]:
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def min_exp(self) -> int:
        return next(iter(self._terms))

    def max_exp(self) -> int:
        return next(reversed(self._terms))

    def leading_coeff(self) -> Fraction:
        return self._terms[self.max_exp()]

    def coeff(self, e: int) -> Fraction:
        return self._terms.get(e, Fraction(0))

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by q^k."""
        return LaurentPoly({e + k: c for e, c in self._terms.items()})

    def __add__(self, other) -> "LaurentPoly":
        other = _as_laurent(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "LaurentPoly":
        other = _as_laurent(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPoly":
        return (-self) + other

    def __mul__(self, other) -> "LaurentPoly":
        other = _as_laurent(other)
        if other is NotImplemented:
            return other
        out: Dict[int, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials have Laurent inverses")
            (e, c), = self._terms.items()
            return LaurentPoly({e * n: c ** n})
        result = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        other = _as_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def eval_q1(self) -> Fraction:
        return eval_q1(self)

    def __repr__(self) -> str:
        return f"LaurentPoly({format_laurent(self)})"

    def __str__(self) -> str:
        return format_laurent(self)


def _as_laurent(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return LaurentPoly.const(x)
    return NotImplemented


Q = LaurentPoly.monomial(1)


def laurent_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b


def eval_q1(p: LaurentPoly) -> Fraction:
    """Specialize q -> 1: the sum of all coefficients."""
    return sum(p._terms.values(), Fraction(0))


def format_laurent(p: LaurentPoly) -> str:
    """Sparse ``{exp:coeff, ...}`` text form, e.g. ``{-2:-1, 2:-1}``."""
    return "{" + ", ".join(f"{e}:{c}" for e, c in p.items()) + "}"


_PAIR = re.compile(r"\s*(-?\d+)\s*:\s*(-?\d+(?:/\d+)?)\s*")


def parse_laurent(text: str) -> LaurentPoly:
    body = text.strip()
    if not (body.startswith("{") and body.endswith("}")):
        raise ValueError(f"not a Laurent literal: {text!r}")
    body = body[1:-1].strip()
    if not body:
        return LaurentPoly()
    terms: Dict[int, Fraction] = {}
    for chunk in body.split(","):
        m = _PAIR.fullmatch(chunk)
        if not m:
            raise ValueError(f"bad term {chunk!r} in {text!r}")
        e = int(m.group(1))
        terms[e] = terms.get(e, 0) + Fraction(m.group(2))
    return LaurentPoly(terms)


# -- dense helpers on Q[q]; lists are coefficient vectors, index = degree ----

def _trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _to_dense(p: LaurentPoly) -> Tuple[int, list]:
    """Return ``(v, coeffs)`` with p = q^v * sum(coeffs[i] q^i), coeffs[0] != 0."""
    v = p.min_exp()
    dense = [Fraction(0)] * (p.max_exp() - v + 1)
    for e, c in p.items():
        dense[e - v] = c
    return v, dense


def _from_dense(v: int, dense: list) -> LaurentPoly:
    return LaurentPoly({v + i: c for i, c in enumerate(dense) if c})


def _divmod_dense(a: list, b: list) -> Tuple[list, list]:
    a = list(a)
    if len(a) < len(b):
        return [], _trim(a)
    quot = [Fraction(0)] * (len(a) - len(b) + 1)
    lead = b[-1]
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] / lead
        quot[i] = c
        if c:
            for j, bj in enumerate(b):
                a[i + j] -= c * bj
    return _trim(quot), _trim(a[: len(b) - 1])


def _gcd_dense(a: list, b: list) -> list:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        _, r = _divmod_dense(a, b)
        a, b = b, r
    lead = a[-1]
    return [c / lead for c in a]


def poly_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Monic gcd in Q[q] of the q-power-free parts of a and b."""
    if a.is_zero() and b.is_zero():
        return LaurentPoly()
    if a.is_zero():
        a, b = b, a
    if b.is_zero():
        return _from_dense(0, _gcd_dense(_to_dense(a)[1], []))
    return _from_dense(0, _gcd_dense(_to_dense(a)[1], _to_dense(b)[1]))


class RatFunc:
    """Element of Q(q).

    Canonical form: ``numer / denom`` where ``denom`` is a monic polynomial
    with nonzero constant term, ``numer`` is Laurent, and the q-power-free
    parts are coprime in Q[q].  Zero is ``0 / 1``.
    """

    __slots__ = ("numer", "denom")

    def __init__(self, numer, denom=None):
        numer = _as_laurent(numer)
        denom = LaurentPoly.const(1) if denom is None else _as_laurent(denom)
        if numer is NotImplemented or denom is NotImplemented:
            raise TypeError("RatFunc parts must be LaurentPoly or rational")
        if denom.is_zero():
            raise DivisionByZero("zero denominator in Q(q)")
        self.numer, self.denom = _normalize(numer, denom)

    @classmethod
    def coerce(cls, x) -> "RatFunc":
        return x if isinstance(x, RatFunc) else cls(x)

    def is_zero(self) -> bool:
        return self.numer.is_zero()

    def __bool__(self) -> bool:
        return not self.numer.is_zero()

    def __add__(self, other) -> "RatFunc":
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return other
        return RatFunc(self.numer * other.denom + other.numer * self.denom,
                       self.denom * other.denom)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.numer, self.denom)

    def __sub__(self, other) -> "RatFunc":
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "RatFunc":
        return (-self) + other

    def __mul__(self, other) -> "RatFunc":
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return other
        return RatFunc(self.numer * other.numer, self.denom * other.denom)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise DivisionByZero("inverse of the zero rational function")
        return RatFunc(self.denom, self.numer)

    def __truediv__(self, other) -> "RatFunc":
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            raise DivisionByZero("division by the zero rational function")
        return RatFunc(self.numer * other.denom, self.denom * other.numer)

    def __rtruediv__(self, other) -> "RatFunc":
        return _as_ratfunc(other) / self

    def __pow__(self, n: int) -> "RatFunc":
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc(self.numer ** n, self.denom ** n)

    def __eq__(self, other) -> bool:
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        return self.numer == other.numer and self.denom == other.denom

    def __hash__(self) -> int:
        return hash((self.numer, self.denom))

    def eval_q1(self) -> Fraction:
        d = eval_q1(self.denom)
        if d == 0:
            raise DivisionByZero("denominator vanishes at q = 1")
        return eval_q1(self.numer) / d

    def __repr__(self) -> str:
        return f"RatFunc({format_laurent(self.numer)} / {format_laurent(self.denom)})"

    __str__ = __repr__


def _as_ratfunc(x):
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, (int, Fraction, LaurentPoly)):
        return RatFunc(x)
    return NotImplemented


def _normalize(numer: LaurentPoly, denom: LaurentPoly) -> Tuple[LaurentPoly, LaurentPoly]:
    if numer.is_zero():
        return LaurentPoly(), LaurentPoly.const(1)
    vn, n = _to_dense(numer)
    vd, d = _to_dense(denom)
    g = _gcd_dense(n, d)
    if len(g) > 1:
        n, _ = _divmod_dense(n, g)
        d, _ = _divmod_dense(d, g)
    lead = d[-1]
    n = [c / lead for c in n]
    d = [c / lead for c in d]
    return _from_dense(vn - vd, n), _from_dense(0, d)


def normalize(x: RatFunc) -> RatFunc:
    return RatFunc(x.numer, x.denom)


def ratfunc_field_ops(a: RatFunc, b: RatFunc, op: str) -> RatFunc:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown field op {op!r}")
