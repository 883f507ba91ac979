"""Graded spanning certificates at q = 1.

Given an ambient graded ring (Q[x,z,y] or the four-holed-sphere ring), a
list of subalgebra generators and a finite module-generator set X, decide
exactly over Q whether the products ``g1^a1 ... gr^ar * x`` (total generator
weight at most a cap) span every basis monomial up to a weight cutoff.

Elimination keeps a leading-term echelon form: each stored row has a
distinct leading monomial under ``(weight, order)`` and remembers the
product combination it came from, so membership of a monomial yields an
explicit witness.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from . import foursphere as fs
from .handlebody import H2, XZY_WEIGHT
from .polyring import (
    Monomial,
    Ring,
    SparsePoly,
    format_monomial,
    format_poly,
    parse_poly,
    weight_of,
    weighted_degree,
)


class CapTooSmall(UserWarning):
    pass


# -- ambient rings and orders ---------------------------------------------------------

def _lex(m: Monomial):
    return tuple(m)


def _s4_triangular(m: Monomial):
    """Lex on (v13*v23, v123, v23, v13, v12, v3, v2, v1)."""
    v1, v2, v3, v12, v13, v23, v123 = m
    return (v13 * v23, v123, v23, v13, v12, v3, v2, v1)


ORDERS: Dict[str, Callable[[Monomial], tuple]] = {
    "lex": _lex,
    "revlex": lambda m: tuple(reversed(m)),
    "s4-triangular": _s4_triangular,
}


@dataclass(frozen=True)
class Ambient:
    name: str
    ring: Ring
    reduce: Callable[[SparsePoly], SparsePoly]
    in_basis: Callable[[Monomial], bool]
    default_weight: Tuple[int, ...]
    default_order: str


AMBIENTS: Dict[str, Ambient] = {
    "H2": Ambient("H2", H2, lambda p: p, lambda m: True, XZY_WEIGHT, "lex"),
    "S4": Ambient("S4", fs.S4, fs.s4_normal_form, fs.in_lambda, fs.SPRIME_WEIGHT, "s4-triangular"),
}


def basis_monomials(amb: Ambient, weight: Sequence[int], max_weight: int,
                    exact: Optional[int] = None) -> List[Monomial]:
    """Basis monomials of weight <= max_weight (or == exact), unsorted."""
    if any(w <= 0 for w in weight):
        raise ValueError("all variable weights must be positive")
    out = []
    n = len(weight)

    def rec(i, acc, budget):
        if i == n:
            m = tuple(acc)
            if amb.in_basis(m) and (exact is None or weight_of(m, weight) == exact):
                out.append(m)
            return
        e = 0
        while e * weight[i] <= budget:
            acc.append(e)
            rec(i + 1, acc, budget - e * weight[i])
            acc.pop()
            e += 1

    rec(0, [], max_weight if exact is None else exact)
    return out


# -- problem, certificate, failure ------------------------------------------------------

@dataclass(frozen=True)
class SpanProblem:
    ring: str
    generators: Tuple[Tuple[str, SparsePoly], ...]
    module_gens: Tuple[SparsePoly, ...]
    cutoff: int
    weight: Optional[Tuple[int, ...]] = None
    cap: Optional[int] = None
    order: Optional[str] = None

    def __post_init__(self):
        amb = AMBIENTS.get(self.ring)
        if amb is None:
            raise ValueError(f"unknown ring {self.ring!r}; expected one of {sorted(AMBIENTS)}")
        object.__setattr__(self, "generators", tuple((n, g) for n, g in self.generators))
        object.__setattr__(self, "module_gens", tuple(self.module_gens))
        if self.weight is None:
            object.__setattr__(self, "weight", amb.default_weight)
        object.__setattr__(self, "weight", tuple(self.weight))
        if self.cap is None:
            object.__setattr__(self, "cap", self.cutoff)
        if self.order is None:
            object.__setattr__(self, "order", amb.default_order)
        if self.order not in ORDERS:
            raise ValueError(f"unknown order {self.order!r}; expected one of {sorted(ORDERS)}")
        if self.cutoff < 0:
            raise ValueError("cutoff must be >= 0")
        if len(self.weight) != amb.ring.arity:
            raise ValueError("weight vector arity mismatch")
        names = [n for n, _ in self.generators]
        if len(set(names)) != len(names):
            raise ValueError("duplicate generator names")
        for name, g in self.generators:
            if g.ring != amb.ring:
                raise ValueError(f"generator {name} is not in ring {self.ring}")
            if g.is_zero():
                raise ValueError(f"generator {name} is zero")
            if amb.reduce(g) != g:
                raise ValueError(f"generator {name} is not reduced")
            if weighted_degree(g, self.weight) == 0:
                raise ValueError(f"generator {name} has weight 0")
        if not self.module_gens:
            raise ValueError("module generator set X is empty")
        for x in self.module_gens:
            if x.ring != amb.ring or x.is_zero() or amb.reduce(x) != x:
                raise ValueError(f"module generator {x} must be a nonzero reduced element")

    @property
    def ambient(self) -> Ambient:
        return AMBIENTS[self.ring]

    def key(self, m: Monomial):
        return (weight_of(m, self.weight), ORDERS[self.order](m))

    def generator_weights(self) -> Tuple[int, ...]:
        return tuple(weighted_degree(g, self.weight) for _, g in self.generators)

    def leading(self, p: SparsePoly) -> Monomial:
        return max(p.monomials(), key=self.key)


@dataclass(frozen=True)
class Witness:
    """``monomial = sum coeff * prod(g_i ^ exps_i) * X[x_index]`` after reduction."""

    monomial: Monomial
    terms: Tuple[Tuple[Fraction, Tuple[int, ...], int], ...]


@dataclass
class DegreeRow:
    degree: int
    required: int
    achieved: int


@dataclass
class SpanCertificate:
    problem: SpanProblem
    covered: Dict[Monomial, Witness]
    frontier: List[DegreeRow]
    products: int

    verdict = "pass"


@dataclass
class SpanFailure:
    problem: SpanProblem
    monomial: Monomial
    degree: int
    achieved: int
    required: int
    refuted: bool
    frontier: List[DegreeRow]
    products: int

    @property
    def verdict(self) -> str:
        return "fail" if self.refuted else "inconclusive"


# -- products -------------------------------------------------------------------------------

@dataclass(frozen=True)
class _Product:
    exps: Tuple[int, ...]
    x_index: int
    weight: int
    label: Monomial
    poly: SparsePoly


def _exponent_vectors(weights: Sequence[int], cap: int) -> List[Tuple[int, ...]]:
    out = []
    n = len(weights)

    def rec(i, acc, budget):
        if i == n:
            out.append(tuple(acc))
            return
        e = 0
        while e * weights[i] <= budget:
            acc.append(e)
            rec(i + 1, acc, budget - e * weights[i])
            acc.pop()
            e += 1

    rec(0, [], cap)
    return out


def _products(p: SpanProblem) -> List[_Product]:
    amb = p.ambient
    gens = [g for _, g in p.generators]
    gw = p.generator_weights()
    labels = [p.leading(g) for g in gens]
    cache: Dict[Tuple[int, ...], SparsePoly] = {(0,) * len(gens): amb.ring.one()}

    def power_product(a: Tuple[int, ...]) -> SparsePoly:
        got = cache.get(a)
        if got is None:
            j = max(i for i, e in enumerate(a) if e)
            prev = a[:j] + (a[j] - 1,) + a[j + 1:]
            got = amb.reduce(power_product(prev) * gens[j])
            cache[a] = got
        return got

    arity = amb.ring.arity
    out = []
    for a in _exponent_vectors(gw, p.cap):
        base = power_product(a)
        gen_label = [0] * arity
        for e, lab in zip(a, labels):
            for i in range(arity):
                gen_label[i] += e * lab[i]
        for xi, x in enumerate(p.module_gens):
            poly = base if _is_one(x) else amb.reduce(base * x)
            xl = p.leading(x)
            label = tuple(u + v for u, v in zip(gen_label, xl))
            w = sum(e * wi for e, wi in zip(a, gw)) + weighted_degree(x, p.weight)
            out.append(_Product(a, xi, w, label, poly))
    out.sort(key=lambda pr: (pr.weight, not amb.in_basis(pr.label), p.key(pr.label), pr.x_index, pr.exps))
    return out


def _is_one(x: SparsePoly) -> bool:
    return x == x.ring.one()


# -- elimination ----------------------------------------------------------------------------

class _Echelon:
    def __init__(self, key):
        self.key = key
        self.rows: Dict[Monomial, Tuple[Dict[Monomial, Fraction], Dict[int, Fraction]]] = {}

    def _lead(self, vec):
        return max(vec, key=self.key)

    def reduce(self, vec: Dict[Monomial, Fraction], combo: Dict[int, Fraction],
               stop_at_new_lead: bool = True):
        """Subtract pivot rows while the leading monomial is a pivot.

        Returns the remaining vector (empty if it reduced to zero).
        """
        while vec:
            lead = self._lead(vec)
            row = self.rows.get(lead)
            if row is None:
                return vec
            c = vec[lead]
            rvec, rcombo = row
            for m, v in rvec.items():
                nv = vec.get(m, 0) - c * v
                if nv:
                    vec[m] = nv
                else:
                    vec.pop(m, None)
            for j, v in rcombo.items():
                nv = combo.get(j, 0) - c * v
                if nv:
                    combo[j] = nv
                else:
                    combo.pop(j, None)
        return vec

    def insert(self, vec: Dict[Monomial, Fraction], index: int) -> Optional[Monomial]:
        combo = {index: Fraction(1)}
        vec = self.reduce(dict(vec), combo)
        if not vec:
            return None
        lead = self._lead(vec)
        c = vec[lead]
        vec = {m: v / c for m, v in vec.items()}
        combo = {j: v / c for j, v in combo.items()}
        self.rows[lead] = (vec, combo)
        return lead


def certify_spanning(p: SpanProblem) -> Union[SpanCertificate, SpanFailure]:
    if p.cap < p.cutoff:
        warnings.warn(f"generator weight cap {p.cap} < cutoff {p.cutoff}; "
                      "a failure will only be inconclusive", CapTooSmall, stacklevel=2)
    products = _products(p)
    ech = _Echelon(p.key)
    for i, pr in enumerate(products):
        ech.insert(dict(pr.poly.items()), i)

    targets = sorted(basis_monomials(p.ambient, p.weight, p.cutoff), key=p.key)
    frontier = _frontier(p, ech, targets)
    covered: Dict[Monomial, Witness] = {}
    for m in targets:
        combo: Dict[int, Fraction] = {}
        rest = ech.reduce({m: Fraction(1)}, combo)
        if rest:
            d = weight_of(m, p.weight)
            row = next(r for r in frontier if r.degree == d)
            refuted = p.cap >= p.cutoff + max(p.generator_weights(), default=0)
            return SpanFailure(p, m, d, row.achieved, row.required, refuted, frontier, len(products))
        # e_m - sum c_j row_j = 0, combo holds -sum c_j combo_j
        terms = tuple(sorted(
            ((-v, products[j].exps, products[j].x_index) for j, v in combo.items()),
            key=lambda t: (products_index_key(products, t), t[0])))
        covered[m] = Witness(m, terms)
    return SpanCertificate(p, covered, frontier, len(products))


def products_index_key(products: List[_Product], term) -> tuple:
    _, exps, xi = term
    return (sum(exps), exps, xi)


def _frontier(p: SpanProblem, ech: _Echelon, targets: List[Monomial]) -> List[DegreeRow]:
    required: Dict[int, int] = {}
    for m in targets:
        d = weight_of(m, p.weight)
        required[d] = required.get(d, 0) + 1
    achieved: Dict[int, int] = {}
    for lead in ech.rows:
        d = weight_of(lead, p.weight)
        if d <= p.cutoff:
            achieved[d] = achieved.get(d, 0) + 1
    return [DegreeRow(d, required.get(d, 0), achieved.get(d, 0)) for d in range(p.cutoff + 1)]


def expand_witness(p: SpanProblem, w: Witness) -> SparsePoly:
    """Recompute a witness from scratch: products are rebuilt, not taken from any cache."""
    amb = p.ambient
    total = amb.ring.zero()
    for c, exps, xi in w.terms:
        term = amb.ring.one()
        for (_, g), e in zip(p.generators, exps):
            if e:
                term = amb.reduce(term * g ** e)
        term = amb.reduce(term * p.module_gens[xi])
        total = total + term * c
    return amb.reduce(total)


def format_witness(p: SpanProblem, w: Witness) -> str:
    names = [n for n, _ in p.generators]
    parts = []
    for c, exps, xi in w.terms:
        factors = []
        for n, e in zip(names, exps):
            if e == 1:
                factors.append(n)
            elif e:
                factors.append(f"{n}^{e}")
        if len(p.module_gens) > 1 or not _is_one(p.module_gens[xi]):
            factors.append(f"X[{xi}]")
        body = "*".join(factors) or "1"
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        if mag == 1:
            parts.append(f"{sign} {body}")
        else:
            parts.append(f"{sign} {mag}" if body == "1" else f"{sign} {mag}*{body}")
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else "-" + text[2:] if text.startswith("- ") else text


def witness_weight(p: SpanProblem, w: Witness) -> int:
    """Largest generator-product weight used by the witness."""
    gw = p.generator_weights()
    return max(sum(e * wi for e, wi in zip(exps, gw)) + weighted_degree(p.module_gens[xi], p.weight)
               for _, exps, xi in w.terms)


# -- leading-term matrices ------------------------------------------------------------------------

@dataclass
class LeadingMatrix:
    degree: int
    order: str
    row_labels: List[Monomial]
    row_products: List[Tuple[Tuple[int, ...], int]]
    col_labels: List[Monomial]
    entries: List[List[Fraction]]
    verdict: str

    @property
    def unitriangular(self) -> bool:
        return self.verdict in ("identity", "lower-unitriangular")


def classify(entries: List[List[Fraction]], absolute: bool = False) -> str:
    """Return identity, lower-unitriangular, permuted-unitriangular or not-triangular."""
    n = len(entries)
    if any(len(r) != n for r in entries):
        return "not-square"

    def unit(v):
        return v == 1 or (absolute and v == -1)

    lower = all(unit(entries[i][i]) and all(entries[i][j] == 0 for j in range(i + 1, n))
                for i in range(n))
    if lower:
        ident = all(entries[i][j] == 0 for i in range(n) for j in range(n) if i != j)
        return "identity" if ident else "lower-unitriangular"
    # peel rows with a single remaining nonzero (a unit) until none are left
    rows = set(range(n))
    cols = set(range(n))
    while rows:
        pick = None
        for i in sorted(rows):
            nz = [j for j in cols if entries[i][j] != 0]
            if len(nz) == 1 and unit(entries[i][nz[0]]):
                pick = (i, nz[0])
                break
        if pick is None:
            return "not-triangular"
        rows.discard(pick[0])
        cols.discard(pick[1])
    return "permuted-unitriangular"


def leading_matrix_report(p: SpanProblem, degree: int, order: Optional[str] = None,
                          absolute: bool = False) -> LeadingMatrix:
    """Top-degree coefficients of products whose label is a basis monomial of ``degree``.

    Rows are products (labelled by the sum of their factors' leading
    monomials), columns are basis monomials of the degree; both are sorted
    ascending in ``order``.
    """
    if degree > p.cutoff:
        raise ValueError("degree exceeds the problem cutoff")
    order = order or p.order
    okey = ORDERS[order]
    amb = p.ambient
    rows = [pr for pr in _products_upto(p, degree)
            if pr.weight == degree and amb.in_basis(pr.label)]
    rows.sort(key=lambda pr: (okey(pr.label), pr.x_index))
    cols = sorted(basis_monomials(amb, p.weight, degree, exact=degree), key=okey)
    entries = [[Fraction(pr.poly.coeff(m)) for m in cols] for pr in rows]
    return LeadingMatrix(degree, order, [pr.label for pr in rows],
                         [(pr.exps, pr.x_index) for pr in rows], cols, entries,
                         classify(entries, absolute))


def _products_upto(p: SpanProblem, degree: int) -> List[_Product]:
    q = SpanProblem(p.ring, p.generators, p.module_gens, degree, p.weight, degree, p.order)
    return _products(q)


# -- stock problems ----------------------------------------------------------------------------------

def case2a_problem(cutoff: int = 9, cap: Optional[int] = None) -> SpanProblem:
    """Genus-3 first family at q=1, X = {1}."""
    return SpanProblem("S4", tuple(fs.case2a_images()), (fs.S4.one(),), cutoff,
                       fs.SPRIME_WEIGHT, cap, "s4-triangular")


def case1c_problem(cutoff: int = 8, c1=0, c2=0, cap: Optional[int] = None) -> SpanProblem:
    """Genus-2 third family with n1 = n2 = 1: alpha_1 = x + c1, alpha_2 = z + c2, alpha_3 = y + xz."""
    x, z, y = H2.gens()
    gens = (("a1", x + c1), ("a2", z + c2), ("a3", y + x * z))
    return SpanProblem("H2", gens, (H2.one(),), cutoff, XZY_WEIGHT, cap, "lex")


def case1a_model(n: int, cutoff: int, gamma: Optional[SparsePoly] = None,
                 cap: Optional[int] = None) -> SpanProblem:
    """Genus-2 symmetric family: generators x, z, gamma; X = {1, y, ..., y^(n-1)}.

    Only the leading term of gamma's image is fixed; ``y^n`` is used unless
    another image is supplied.
    """
    x, z, y = H2.gens()
    gamma = y ** n if gamma is None else gamma
    xs = tuple(y ** j for j in range(n))
    return SpanProblem("H2", (("a1", x), ("a2", z), ("g", gamma)), xs, cutoff, XZY_WEIGHT, cap, "lex")


# -- job files --------------------------------------------------------------------------------------

def parse_job(text: str) -> SpanProblem:
    """Read a ``key: value`` job description.

    Keys: ring, weight, order, cutoff, cap, ``generator NAME`` (repeatable)
    and ``module`` (repeatable; defaults to the single element 1).
    """
    fields: Dict[str, str] = {}
    gens: List[Tuple[str, str]] = []
    mods: List[str] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise ValueError(f"line {lineno}: expected 'key: value'")
        key, value = (s.strip() for s in line.split(":", 1))
        if key.startswith("generator "):
            gens.append((key.split(None, 1)[1], value))
        elif key == "module":
            mods.append(value)
        elif key in ("ring", "weight", "order", "cutoff", "cap"):
            fields[key] = value
        else:
            raise ValueError(f"line {lineno}: unknown key {key!r}")
    if "ring" not in fields:
        raise ValueError("job is missing 'ring'")
    if "cutoff" not in fields:
        raise ValueError("job is missing 'cutoff'")
    amb = AMBIENTS.get(fields["ring"])
    if amb is None:
        raise ValueError(f"unknown ring {fields['ring']!r}")
    weight = tuple(int(v) for v in fields["weight"].split(",")) if "weight" in fields else None
    gen_polys = tuple((n, parse_poly(amb.ring, v)) for n, v in gens)
    mod_polys = tuple(parse_poly(amb.ring, v) for v in (mods or ["1"]))
    return SpanProblem(fields["ring"], gen_polys, mod_polys, int(fields["cutoff"]), weight,
                       int(fields["cap"]) if "cap" in fields else None, fields.get("order"))


def format_job(p: SpanProblem) -> str:
    lines = [f"ring: {p.ring}", f"weight: {','.join(map(str, p.weight))}",
             f"order: {p.order}", f"cutoff: {p.cutoff}", f"cap: {p.cap}"]
    lines += [f"generator {n}: {format_poly(g)}" for n, g in p.generators]
    lines += [f"module: {format_poly(x)}" for x in p.module_gens]
    return "\n".join(lines) + "\n"


def describe_monomial(p: SpanProblem, m: Monomial) -> str:
    return format_monomial(p.ambient.ring, m) or "1"
