"""Sparse commutative polynomials, weighted gradings and single-rule rewriting."""

from __future__ import annotations

import heapq
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterable, Iterator, Mapping, Optional, Sequence, Tuple

from .exact_arith import RatFunc

Monomial = Tuple[int, ...]
WeightVector = Tuple[int, ...]


class RingMismatch(ValueError):
    pass


class ZeroPolynomial(ValueError):
    pass


class NonTerminating(RuntimeError):
    pass


_FIELDS = {
    "QQ": Fraction,
    "Q(q)": RatFunc.coerce,
}


@dataclass(frozen=True)
class Ring:
    """Ring descriptor: variable names plus a coefficient field tag."""

    names: Tuple[str, ...]
    field: str = "QQ"

    def __post_init__(self):
        if self.field not in _FIELDS:
            raise ValueError(f"unknown coefficient field {self.field!r}")
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")

    @property
    def arity(self) -> int:
        return len(self.names)

    def coerce(self, c):
        return _FIELDS[self.field](c)

    def zero(self) -> "SparsePoly":
        return SparsePoly(self, {})

    def one(self) -> "SparsePoly":
        return self.const(1)

    def const(self, c) -> "SparsePoly":
        return SparsePoly(self, {(0,) * self.arity: c})

    def gen(self, name: str) -> "SparsePoly":
        i = self.names.index(name)
        return self.monomial(tuple(int(j == i) for j in range(self.arity)))

    def gens(self) -> Tuple["SparsePoly", ...]:
        return tuple(self.gen(n) for n in self.names)

    def monomial(self, exps: Sequence[int], c=1) -> "SparsePoly":
        return SparsePoly(self, {tuple(exps): c})

    def parse(self, text: str) -> "SparsePoly":
        return parse_poly(self, text)


class SparsePoly:
    """Immutable sparse polynomial ``{exponent tuple: coefficient}``."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: Ring, terms: Mapping[Monomial, object]):
        self.ring = ring
        clean = {}
        for m, c in terms.items():
            if len(m) != ring.arity:
                raise ValueError(f"monomial {m} has wrong arity for {ring.names}")
            c = ring.coerce(c)
            if c:
                clean[tuple(m)] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, ring: Ring, terms: Dict[Monomial, object]) -> "SparsePoly":
        # trusted constructor: terms already coerced and nonzero
        p = object.__new__(cls)
        p.ring = ring
        p._terms = terms
        p._hash = None
        return p

    @property
    def terms(self) -> Dict[Monomial, object]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def monomials(self) -> Iterable[Monomial]:
        return self._terms.keys()

    def coeff(self, m: Monomial):
        return self._terms.get(tuple(m), self.ring.coerce(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def _check(self, other: "SparsePoly"):
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")

    def _lift(self, other) -> "SparsePoly":
        if isinstance(other, SparsePoly):
            self._check(other)
            return other
        return self.ring.const(other)

    def __add__(self, other) -> "SparsePoly":
        other = self._lift(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m)
            v = c if v is None else v + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return SparsePoly._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self) -> "SparsePoly":
        return SparsePoly._raw(self.ring, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "SparsePoly":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "SparsePoly":
        return (-self) + other

    def __mul__(self, other) -> "SparsePoly":
        if not isinstance(other, SparsePoly):
            c = self.ring.coerce(other)
            if not c:
                return self.ring.zero()
            return SparsePoly._raw(self.ring, {m: v * c for m, v in self._terms.items()})
        self._check(other)
        out: Dict[Monomial, object] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                v = out.get(m)
                out[m] = c1 * c2 if v is None else v + c1 * c2
        return SparsePoly._raw(self.ring, {m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "SparsePoly":
        if n < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, SparsePoly):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    def evaluate(self, values: Sequence):
        """Substitute ``values`` (one per variable) and sum."""
        total = 0
        for m, c in self._terms.items():
            t = c
            for v, e in zip(values, m):
                if e:
                    t = t * v ** e
            total = total + t
        return total

    def sorted_terms(self, key: Optional[Callable[[Monomial], object]] = None):
        """Terms in descending order of ``key`` (default: total degree, then lex)."""
        key = key or _deglex
        return sorted(self._terms.items(), key=lambda mc: key(mc[0]), reverse=True)

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"SparsePoly({format_poly(self)})"


def _deglex(m: Monomial):
    return (sum(m), m)


def weight_of(m: Monomial, w: WeightVector) -> int:
    return sum(a * b for a, b in zip(m, w))


def poly_mul(a: SparsePoly, b: SparsePoly) -> SparsePoly:
    return a * b


def weighted_degree(p: SparsePoly, w: WeightVector) -> int:
    if len(w) != p.ring.arity:
        raise ValueError("weight vector arity mismatch")
    if p.is_zero():
        raise ZeroPolynomial("degree of the zero polynomial")
    return max(weight_of(m, w) for m in p.monomials())


def graded_component(p: SparsePoly, d: int, w: WeightVector) -> SparsePoly:
    return SparsePoly._raw(p.ring, {m: c for m, c in p.items() if weight_of(m, w) == d})


def top_component(p: SparsePoly, w: WeightVector) -> SparsePoly:
    if p.is_zero():
        return p
    return graded_component(p, weighted_degree(p, w), w)


# -- rewriting ----------------------------------------------------------------

def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


@dataclass(frozen=True)
class RewriteRule:
    """``lhs -> rhs`` with a termination weight.

    Every rhs monomial must be strictly lighter than lhs under ``weight``,
    or equally heavy but not divisible by lhs.
    """

    lhs: Monomial
    rhs: SparsePoly
    weight: WeightVector

    def __post_init__(self):
        lw = weight_of(self.lhs, self.weight)
        for m in self.rhs.monomials():
            mw = weight_of(m, self.weight)
            if mw > lw or (mw == lw and divides(self.lhs, m)):
                raise ValueError(f"rhs monomial {m} does not decrease under {self.weight}")

    @property
    def ring(self) -> Ring:
        return self.rhs.ring

    def applies(self, m: Monomial) -> bool:
        return divides(self.lhs, m)

    def step(self, m: Monomial) -> Iterator[Tuple[Monomial, object]]:
        """Terms of ``m / lhs * rhs``."""
        q = tuple(a - b for a, b in zip(m, self.lhs))
        for r, c in self.rhs.items():
            yield tuple(a + b for a, b in zip(q, r)), c


def normal_form(p: SparsePoly, rule: RewriteRule,
                order: Optional[Callable[[Monomial], object]] = None,
                highest_first: bool = True) -> SparsePoly:
    """Reduce ``p`` until no monomial is divisible by ``rule.lhs``.

    ``order`` picks which reducible monomial is rewritten next (largest key
    first when ``highest_first``).  The default key is
    ``(rule weight, exponents)``.  The result does not depend on the order;
    it only changes the path taken.
    """
    if p.ring != rule.ring:
        raise RingMismatch(f"{p.ring} vs {rule.ring}")
    w = rule.weight
    key = order or (lambda m: (weight_of(m, w), m))
    sign = -1 if highest_first else 1

    done: Dict[Monomial, object] = {}
    pending: Dict[Monomial, object] = {}
    heap: list = []
    queued = set()
    counter = 0

    def add(m, c):
        nonlocal counter
        target = pending if rule.applies(m) else done
        v = target.get(m)
        v = c if v is None else v + c
        if v:
            target[m] = v
        else:
            del target[m]
        if target is pending and m not in queued:
            queued.add(m)
            k = key(m)
            heapq.heappush(heap, (_Neg(k) if sign < 0 else k, counter, m))
            counter += 1

    for m, c in p.items():
        add(m, c)

    while heap:
        _, _, m = heapq.heappop(heap)
        queued.discard(m)
        c = pending.pop(m, None)
        if c is None:
            continue
        mw = weight_of(m, w)
        for n, d in rule.step(m):
            nw = weight_of(n, w)
            if nw > mw or (nw == mw and rule.applies(n)):
                raise NonTerminating(f"rewriting {m} produced {n}, weight {nw} >= {mw}")
            add(n, c * d)

    return SparsePoly._raw(p.ring, done)


class _Neg:
    """Reverses comparison so heapq pops the largest key first."""

    __slots__ = ("k",)

    def __init__(self, k):
        self.k = k

    def __lt__(self, other):
        return self.k > other.k

    def __eq__(self, other):
        return self.k == other.k


# -- text form ------------------------------------------------------------------

def format_monomial(ring: Ring, m: Monomial) -> str:
    parts = []
    for name, e in zip(ring.names, m):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return " ".join(parts)


def format_poly(p: SparsePoly, key: Optional[Callable[[Monomial], object]] = None) -> str:
    """``coeff*s1^a s2^b + ...`` with terms in descending ``key`` order."""
    if p.is_zero():
        return "0"
    out = []
    for m, c in p.sorted_terms(key):
        mono = format_monomial(p.ring, m)
        if isinstance(c, Fraction):
            neg = c < 0
            mag = -c if neg else c
            cs = str(mag)
        else:
            neg, cs = False, f"({c})"
        if not mono:
            body = cs
        elif cs == "1":
            body = mono
        else:
            body = f"{cs}*{mono}"
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append(("- " if neg else "+ ") + body)
    return " ".join(out)


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)(?:\^(?P<exp>\d+))?|(?P<op>[-+*()]))")


def parse_poly(ring: Ring, text: str) -> SparsePoly:
    """Parse sums of products written as ``2*s1^2 s2 - s3 + 1/2``.

    Juxtaposition and ``*`` both multiply; parentheses group.  Coefficients
    are rationals.
    """
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse {text[pos:]!r}")
        tokens.append(m)
        pos = m.end()
    idx = 0

    def peek():
        return tokens[idx] if idx < len(tokens) else None

    def expr():
        nonlocal idx
        total = ring.zero()
        sign = 1
        first = True
        while True:
            t = peek()
            if t is not None and t.group("op") in ("+", "-"):
                sign = -1 if t.group("op") == "-" else 1
                idx += 1
            elif not first:
                return total
            total = total + term() * sign
            sign = 1
            first = False
            t = peek()
            if t is None or t.group("op") not in ("+", "-"):
                return total

    def term():
        nonlocal idx
        value = factor()
        while True:
            t = peek()
            if t is None or t.group("op") in ("+", "-", ")"):
                return value
            if t.group("op") == "*":
                idx += 1
            value = value * factor()

    def factor():
        nonlocal idx
        t = peek()
        if t is None:
            raise ValueError(f"unexpected end of {text!r}")
        idx += 1
        if t.group("num"):
            return ring.const(Fraction(t.group("num")))
        if t.group("name"):
            name = t.group("name")
            if name not in ring.names:
                raise ValueError(f"unknown variable {name!r} for ring {ring.names}")
            e = int(t.group("exp") or 1)
            return ring.gen(name) ** e
        if t.group("op") == "(":
            inner = expr()
            close = peek()
            if close is None or close.group("op") != ")":
                raise ValueError(f"unbalanced parentheses in {text!r}")
            idx += 1
            return inner
        raise ValueError(f"unexpected token {t.group(0)!r} in {text!r}")

    result = expr()
    if idx != len(tokens):
        raise ValueError(f"trailing input in {text!r}")
    return result
