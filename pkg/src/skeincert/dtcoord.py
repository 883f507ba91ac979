"""Dehn-Thurston coordinates, m-vectors and the attaching-system checks.

Fixed pants decompositions
--------------------------
Genus 2: curves C1, C2, C3 with C3 the middle (separating) curve; the left
pair of pants is bounded by C1 twice and C3, the right one by C2 twice and C3.

Genus 3: curves C1..C6 dual to the six triangulation edges of the
four-holed sphere; pants {C1,C2,C5}, {C1,C4,C6}, {C2,C3,C6}, {C3,C4,C5}.

Realizability conventions: every pair of pants sees an even total of
intersection numbers, and n_i = 0 forces t_i >= 0 (a zero-intersection
coordinate counts parallel copies of C_i).  Twist signs follow the
crossing pictures of the fixed dual graph and are never computed here.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import Matrix as SympyMatrix
from sympy import ZZ
from sympy.matrices.normalforms import smith_normal_form

from . import linalg
from .foursphere import S_WEIGHT, in_lambda, s_weight
from .polyring import SparsePoly

PANTS: Dict[int, Tuple[Tuple[int, int, int], ...]] = {
    2: ((1, 1, 3), (2, 2, 3)),
    3: ((1, 2, 5), (1, 4, 6), (2, 3, 6), (3, 4, 5)),
}

GENERATOR_ORDER = ("s1", "s2", "s3", "s12", "s13", "s23", "s123")

M_VECTORS: Dict[str, Tuple[int, ...]] = {
    "s1": (1, 1, 0, 0, 0, 1),
    "s2": (0, 1, 1, 0, 1, 0),
    "s3": (0, 0, 1, 1, 0, 1),
    "s12": (1, 0, 1, 0, 1, 1),
    "s13": (1, 1, 1, 1, 0, 0),
    "s23": (0, 1, 0, 1, 1, 1),
    "s123": (1, 0, 0, 1, 1, 0),
}

KERNEL_DIRECTION = (1, 1, 1, -1, -1, -1, 1)


class ParamConstraintViolated(ValueError):
    pass


@dataclass(frozen=True)
class DTCoord:
    genus: int
    n: Tuple[int, ...]
    t: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "n", tuple(self.n))
        object.__setattr__(self, "t", tuple(self.t))

    @classmethod
    def from_flat(cls, genus: int, values: Sequence[int]) -> "DTCoord":
        k = 3 * genus - 3
        if len(values) != 2 * k:
            raise ValueError(f"genus {genus} needs {2 * k} coordinates, got {len(values)}")
        return cls(genus, tuple(values[:k]), tuple(values[k:]))

    @property
    def flat(self) -> Tuple[int, ...]:
        return self.n + self.t

    def __str__(self) -> str:
        return format_dt(self)


def format_dt(c: DTCoord) -> str:
    return f"g={c.genus};n={','.join(map(str, c.n))};t={','.join(map(str, c.t))}"


_DT_RE = re.compile(r"\s*g\s*=\s*(\d+)\s*;\s*n\s*=\s*([-\d,\s]*);\s*t\s*=\s*([-\d,\s]*)\s*")


def parse_dt(text: str) -> DTCoord:
    m = _DT_RE.fullmatch(text)
    if not m:
        raise ValueError(f"bad DT literal {text!r}; expected g=2;n=1,1,2;t=1,1,0")

    def ints(s):
        s = s.strip()
        return tuple(int(x) for x in s.split(",")) if s else ()

    return DTCoord(int(m.group(1)), ints(m.group(2)), ints(m.group(3)))


def dt_violations(c: DTCoord) -> List[str]:
    """Reasons ``c`` is not a valid coordinate; empty when valid."""
    out = []
    k = 3 * c.genus - 3
    if c.genus not in PANTS:
        out.append(f"no fixed pants decomposition for genus {c.genus}")
        return out
    if len(c.n) != k or len(c.t) != k:
        out.append(f"expected {k} n- and t-values, got {len(c.n)} and {len(c.t)}")
        return out
    for i, (ni, ti) in enumerate(zip(c.n, c.t), start=1):
        if ni < 0:
            out.append(f"n{i} = {ni} is negative")
        elif ni == 0 and ti < 0:
            out.append(f"n{i} = 0 requires t{i} >= 0, got {ti}")
    for pants in PANTS[c.genus]:
        total = sum(c.n[i - 1] for i in pants)
        if total % 2:
            label = ",".join(f"C{i}" for i in pants)
            out.append(f"odd intersection total {total} on pants ({label})")
    return out


def validate_dt(c: DTCoord) -> bool:
    return not dt_violations(c)


# -- families of gluing curves ------------------------------------------------------

def _require(cond: bool, clause: str):
    if not cond:
        raise ParamConstraintViolated(clause)


def family_curve(case: str, **p) -> DTCoord:
    """DT coordinate of a gluing curve from one of the five families.

    1a: n, t1, t2            (n, n, 2n, t1, t1, t2)
    1b: n, m, t, mirror      (n+m, n, 2n, t, 0, 0) or (n, n+m, 2n, t, 0, 0)
    1c: n1, n2, e1, e2       (n1, n2, 2, e1, e2, 0), e_i = +-1
    2a: n, m, sign           (1, n, n+m, m+1, n+1, m, 0, 0, 0, sign, sign, 0)
    2b: n, m, t              (n+m, m, 0, n, n, m+2n, t, 0, 0, 0, 0, 0)
    """
    if case == "1a":
        n, t1, t2 = p["n"], p["t1"], p["t2"]
        _require(n >= 1, "n >= 1")
        _require(t1 * t2 >= 0, "t1*t2 >= 0")
        _require(n == abs(2 * t2 + t1), f"n = |2*t2 + t1| (= {abs(2 * t2 + t1)})")
        c = DTCoord(2, (n, n, 2 * n), (t1, t1, t2))
    elif case == "1b":
        n, m, t = p["n"], p.get("m", 0), p["t"]
        _require(n >= 1, "n >= 1")
        _require(m >= 0, "m >= 0")
        _require(t in (n, -n), "t in {n, -n}")
        ns = (n, n + m, 2 * n) if p.get("mirror") else (n + m, n, 2 * n)
        c = DTCoord(2, ns, (t, 0, 0))
    elif case == "1c":
        n1, n2 = p["n1"], p["n2"]
        e1, e2 = p.get("e1", 1), p.get("e2", 1)
        _require(n1 >= 0 and n2 >= 0, "n1, n2 >= 0")
        _require(e1 in (1, -1) and e2 in (1, -1), "e1, e2 in {1, -1}")
        c = DTCoord(2, (n1, n2, 2), (e1, e2, 0))
    elif case == "2a":
        n, m, sign = p["n"], p["m"], p.get("sign", 1)
        _require(n >= 1 and m >= 1, "n, m >= 1")
        _require(sign in (1, -1), "sign in {1, -1}")
        c = DTCoord(3, (1, n, n + m, m + 1, n + 1, m), (0, 0, 0, sign, sign, 0))
    elif case == "2b":
        n, m, t = p["n"], p["m"], p.get("t", 0)
        _require(n >= 1 and m >= 1, "n, m >= 1")
        c = DTCoord(3, (n + m, m, 0, n, n, m + 2 * n), (t, 0, 0, 0, 0, 0))
    else:
        raise ValueError(f"unknown family {case!r}; expected 1a, 1b, 1c, 2a or 2b")
    problems = dt_violations(c)
    _require(not problems, "; ".join(problems))
    return c


# -- m-vectors ------------------------------------------------------------------------

def monomial_mvector(k: Sequence[int]) -> Tuple[int, ...]:
    out = [0] * 6
    for e, name in zip(k, GENERATOR_ORDER):
        if e:
            for i, v in enumerate(M_VECTORS[name]):
                out[i] += e * v
    return tuple(out)


def mvector_matrix() -> List[List[int]]:
    """6 x 7 matrix whose columns are the seven m-vectors."""
    return linalg.transpose([M_VECTORS[n] for n in GENERATOR_ORDER])


@dataclass
class InjectivityReport:
    bound: int
    rank: int
    kernel: List[Tuple[int, ...]]
    ranks_without: Dict[str, int]
    identity_holds: bool
    tuples_checked: int
    collisions: List[Tuple[Tuple[int, ...], Tuple[int, ...]]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (self.rank == 6 and self.kernel == [KERNEL_DIRECTION]
                and all(r == 6 for r in self.ranks_without.values())
                and self.identity_holds and not self.collisions)


def verify_lemma_inde(bound: int) -> InjectivityReport:
    """Rank/kernel of the m-vectors plus brute-force injectivity on Lambda."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    cols = mvector_matrix()
    kernel = [linalg.primitive(v) for v in linalg.nullspace(cols)]
    ranks_without = {}
    for drop in ("s12", "s13", "s23"):
        kept = [M_VECTORS[n] for n in GENERATOR_ORDER if n != drop]
        ranks_without[drop] = linalg.rank(kept)
    identity = monomial_mvector((1, 1, 1, 0, 0, 0, 1)) == monomial_mvector((0, 0, 0, 1, 1, 1, 0))

    seen: Dict[Tuple[int, ...], Tuple[int, ...]] = {}
    collisions = []
    checked = 0
    for k in itertools.product(range(bound + 1), repeat=7):
        if not in_lambda(k):
            continue
        checked += 1
        v = monomial_mvector(k)
        prev = seen.setdefault(v, k)
        if prev != k:
            collisions.append((prev, k))
    return InjectivityReport(bound, linalg.rank(cols), kernel, ranks_without,
                             identity, checked, collisions)


def mvector_certificate_holds(e: SparsePoly, certificate: Sequence[int]) -> bool:
    """Every basis monomial of the reduced ``e`` has s <= sum(certificate)."""
    return all(s_weight(m) <= sum(certificate) for m in e.monomials())


# -- attaching systems ------------------------------------------------------------------

@dataclass(frozen=True)
class CurveDesc:
    homology: Tuple[int, ...]
    separating: bool = False
    trivial: bool = False
    isotopy_id: str = ""


@dataclass(frozen=True)
class AttachingSystemDesc:
    genus: int
    curves: Tuple[CurveDesc, ...]
    boundary_genus: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "curves", tuple(self.curves))
        for c in self.curves:
            if len(c.homology) != self.genus:
                raise ValueError(f"homology class {c.homology} is not in Z^{self.genus}")
            if (c.separating or c.trivial) and any(c.homology):
                raise ValueError(f"separating/trivial curve {c.isotopy_id!r} must have class 0")

    @property
    def declared_boundary_genus(self) -> int:
        return self.genus if self.boundary_genus is None else self.boundary_genus


def essential_count(a: AttachingSystemDesc) -> int:
    """n(C): pairwise non-isotopic, non-trivial, non-separating curves."""
    ids = {c.isotopy_id or repr(c.homology) for c in a.curves
           if not (c.trivial or c.separating)}
    return len(ids)


def homology_invariants(a: AttachingSystemDesc) -> Tuple[int, ...]:
    """Smith invariant factors of the class matrix (g rows, one column per curve)."""
    if not a.curves:
        return (0,) * a.genus
    m = SympyMatrix([list(c.homology) for c in a.curves]).T
    snf = smith_normal_form(m, domain=ZZ)
    return tuple(abs(int(snf[i, i])) for i in range(min(snf.shape)))


def generates_homology(a: AttachingSystemDesc) -> bool:
    inv = homology_invariants(a)
    return len(inv) == a.genus and all(d == 1 for d in inv)


def check_cor26(a: AttachingSystemDesc) -> bool:
    return essential_count(a) == a.declared_boundary_genus and generates_homology(a)
