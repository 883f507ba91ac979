"""Command-line driver: one verifier per subcommand, one report per run."""

from __future__ import annotations

import argparse
import random
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

from . import dtcoord, foursphere as fs, handlebody as hb, sliding, spanning
from .exact_arith import format_laurent
from .polyring import format_monomial, format_poly
from .report import Report, digest
from .sl2 import trace


class SchemaError(ValueError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


def _int(v):
    if isinstance(v, bool):
        raise ValueError("expected an integer")
    return int(v)


def _int_list(v):
    if isinstance(v, str):
        return tuple(int(x) for x in v.split(",") if x.strip())
    return tuple(int(x) for x in v)


def _bool(v):
    if isinstance(v, bool):
        return v
    if str(v).lower() in ("1", "true", "yes"):
        return True
    if str(v).lower() in ("0", "false", "no"):
        return False
    raise ValueError("expected a boolean")


# command -> {param: (converter, default)}; default None means required
_REQUIRED = object()
SCHEMAS: Dict[str, Dict[str, tuple]] = {
    "verify-inde": {"bound": (_int, 4)},
    "verify-degree-bounds": {"max_exp": (_int, 3), "pairs": (_int, 200), "keylem_exp": (_int, 1)},
    "verify-oracle": {"triples": (_int, 1000), "elements": (_int, 200), "words": (_int, 50),
                      "pairs_per_word": (_int, 100), "max_len": (_int, 8)},
    "certify": {"job": (str, _REQUIRED), "cutoff": (_int, None), "cap": (_int, None),
                "matrices": (_bool, True)},
    "validate-dt": {"dt": (str, None), "g": (_int, None), "n": (_int_list, None), "t": (_int_list, None)},
    "family": {"case": (str, _REQUIRED), "n": (_int, None), "m": (_int, None), "t": (_int, None),
               "t1": (_int, None), "t2": (_int, None), "n1": (_int, None), "n2": (_int, None),
               "e1": (_int, None), "e2": (_int, None), "sign": (_int, None), "mirror": (_bool, None)},
    "sliding": {"n": (_int, _REQUIRED), "n_max": (_int, 20)},
}


@dataclass
class JobSpec:
    command: str
    parameters: Dict[str, Any] = field(default_factory=dict)
    seed: int = 0

    def validated(self) -> "JobSpec":
        schema = SCHEMAS.get(self.command)
        if schema is None:
            raise SchemaError("command", f"unknown command {self.command!r}")
        if not (0 <= int(self.seed) < 2 ** 64):
            raise SchemaError("seed", "must be a 64-bit unsigned integer")
        out = {}
        for k in self.parameters:
            if k not in schema:
                raise SchemaError(f"parameters.{k}", "unknown parameter")
        for k, (conv, default) in schema.items():
            v = self.parameters.get(k)
            if v is None:
                if default is _REQUIRED:
                    raise SchemaError(f"parameters.{k}", "required")
                if default is not None:
                    out[k] = default
                continue
            try:
                out[k] = conv(v)
            except (TypeError, ValueError) as exc:
                raise SchemaError(f"parameters.{k}", str(exc)) from None
        return JobSpec(self.command, out, int(self.seed))


def run_job(job: JobSpec, timing: bool = False) -> Report:
    job = job.validated()
    payload = {"command": job.command, "parameters": job.parameters, "seed": job.seed}
    if job.command == "certify":
        payload["job_text"] = _read_job(job.parameters["job"])
    params = dict(job.parameters)
    params["seed"] = job.seed
    report = Report(job.command, params, digest(payload))
    start = time.perf_counter()
    HANDLERS[job.command](job, report)
    if timing:
        report.timing = time.perf_counter() - start
    return report


def _read_job(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise SchemaError("parameters.job", f"cannot read job file: {exc}") from None


def _fmt_k(k) -> str:
    return "(" + ",".join(map(str, k)) + ")"


# -- handlers -------------------------------------------------------------------------------

def _verify_inde(job: JobSpec, rep: Report):
    r = dtcoord.verify_lemma_inde(job.parameters["bound"])
    s = rep.section("m-vectors")
    for name in dtcoord.GENERATOR_ORDER:
        s.add(f"m({name})", _fmt_k(dtcoord.M_VECTORS[name]))
    s = rep.section("linear algebra")
    s.add("rank", r.rank)
    s.add("kernel basis", "; ".join(_fmt_k(v) for v in r.kernel))
    for k, v in r.ranks_without.items():
        s.add(f"rank without m({k})", v)
    s.add("m(s1)+m(s2)+m(s3)-m(s12)-m(s13)-m(s23)+m(s123) = 0", r.identity_holds)
    s = rep.section("injectivity on Lambda")
    s.add("entry bound", r.bound)
    s.add("tuples checked", r.tuples_checked)
    s.add("collisions", len(r.collisions))
    s.lines += [f"collision: {_fmt_k(a)} ~ {_fmt_k(b)}" for a, b in r.collisions[:20]]
    rep.verdict = "pass" if r.passed else "fail"


def _verify_degree_bounds(job: JobSpec, rep: Report):
    p = job.parameters
    r = fs.verify_product_degree_bounds(p["max_exp"])
    s = rep.section("s12^a s13^b s23^c reductions")
    s.header = ("a,b,c", "terms", "bound 2a+3(b+c)", "max s'", "top terms", "max top u13*u23", "ok")
    s.rows = [(",".join(map(str, row.k)), row.terms, row.bound, row.max_sprime, row.top_terms,
               row.max_top_u13u23, "yes" if row.ok else "NO") for row in r.rows]
    s.lines += [f"violation: {v}" for v in r.violations]
    rng = random.Random(job.seed)
    sub = fs.check_product_subadditivity(rng, p["pairs"])
    s = rep.section("product subadditivity of s'")
    s.add("random reduced pairs", p["pairs"])
    s.add("violations", len(sub))
    s.lines += [f"violation: {v}" for v in sub[:20]]
    key = fs.verify_keylem_shadow(p["keylem_exp"])
    s = rep.section("alpha-product bound s' <= s'(k)")
    s.add("exponent range", f"0..{p['keylem_exp']} per coordinate")
    s.add("violations", len(key))
    s.lines += [f"violation: {v}" for v in key[:20]]
    cert_bad = []
    for row in r.rows:
        a, b, c = row.k
        nf = fs.reduced_sss(a, b, c)
        cert = dtcoord.monomial_mvector((0, 0, 0, a, b, c, 0))
        if not dtcoord.mvector_certificate_holds(nf, cert):
            cert_bad.append(row.k)
    s = rep.section("m-vector certificate bound s(u) <= sum m")
    s.add("instances", len(r.rows))
    s.add("violations", len(cert_bad))
    rep.verdict = "pass" if (r.passed and not sub and not key and not cert_bad) else "fail"


def _verify_oracle(job: JobSpec, rep: Report):
    p = job.parameters
    rng = random.Random(job.seed)
    diff = fs.RELATION_RHS - fs.S4.monomial(fs.RELATION_LHS)
    rel_bad = sum(1 for _ in range(p["triples"]) if fs.sl2_oracle_eval(diff, fs.random_triple(rng)) != 0)
    s = rep.section("relation oracle")
    s.add("triples", p["triples"])
    s.add("nonzero evaluations", rel_bad)

    nf_bad = 0
    for _ in range(p["elements"]):
        e = fs.random_element(rng)
        nf = fs.s4_normal_form(e)
        for _ in range(3):
            t = fs.random_triple(rng)
            if fs.sl2_oracle_eval(e, t) != fs.sl2_oracle_eval(nf, t):
                nf_bad += 1
    s = rep.section("normal form preserves oracle value")
    s.add("elements", p["elements"])
    s.add("mismatches", nf_bad)

    sound_bad = conj_bad = inv_bad = 0
    words = [hb.random_word(rng, p["max_len"]) for _ in range(p["words"])]
    for w in words:
        poly = hb.trace_poly(w)
        for _ in range(p["pairs_per_word"]):
            a, b = fs.random_sl2(rng), fs.random_sl2(rng)
            if poly.evaluate(hb.trace_coordinates(a, b)) != trace(hb.word_matrix(w, a, b)):
                sound_bad += 1
        u = hb.random_word(rng, 4)
        if hb.trace_poly(u * w * u.inverse()) != poly:
            conj_bad += 1
        if hb.trace_poly(w.inverse()) != poly:
            inv_bad += 1
    s = rep.section("free-group trace oracle")
    s.add("words", len(words))
    s.add("pairs per word", p["pairs_per_word"])
    s.add("soundness mismatches", sound_bad)
    s.add("conjugation mismatches", conj_bad)
    s.add("inversion mismatches", inv_bad)
    s.header = ("word", "trace polynomial")
    s.rows = [(str(w), format_poly(hb.trace_poly(w))) for w in words[:10]]
    rep.verdict = "pass" if not (rel_bad or nf_bad or sound_bad or conj_bad or inv_bad) else "fail"


def _certify(job: JobSpec, rep: Report):
    p = job.parameters
    try:
        prob = spanning.parse_job(_read_job(p["job"]))
    except ValueError as exc:
        raise SchemaError("parameters.job", str(exc)) from None
    if "cutoff" in p or "cap" in p:
        cutoff = p.get("cutoff", prob.cutoff)
        cap = p.get("cap", max(prob.cap, cutoff) if "cutoff" in p else prob.cap)
        prob = spanning.SpanProblem(prob.ring, prob.generators, prob.module_gens, cutoff,
                                    prob.weight, cap, prob.order)
    s = rep.section("problem")
    for line in spanning.format_job(prob).splitlines():
        k, v = line.split(":", 1)
        s.add(k, v.strip())
    result = spanning.certify_spanning(prob)
    s = rep.section("per-degree dimensions")
    s.header = ("degree", "required", "achieved")
    s.rows = [(r.degree, r.required, r.achieved) for r in result.frontier]
    s.add("products", result.products)
    if isinstance(result, spanning.SpanFailure):
        s = rep.section("failure")
        s.add("least uncovered monomial", spanning.describe_monomial(prob, result.monomial))
        s.add("degree", result.degree)
        s.add("achieved/required", f"{result.achieved}/{result.required}")
        s.add("refutation", "yes" if result.refuted else "no (cap too small to refute)")
        rep.verdict = result.verdict
        return
    s = rep.section("witnesses")
    bad = 0
    s.header = ("monomial", "degree", "witness")
    for m, w in result.covered.items():
        if spanning.expand_witness(prob, w) != prob.ambient.ring.monomial(m):
            bad += 1
        s.rows.append((spanning.describe_monomial(prob, m), sum(a * b for a, b in zip(m, prob.weight)),
                       spanning.format_witness(prob, w)))
    s.add("replay failures", bad)
    ok = not bad
    if p.get("matrices", True):
        s = rep.section("leading-term matrices")
        s.header = ("degree", "size", "order", "verdict")
        for d in range(prob.cutoff + 1):
            lm = spanning.leading_matrix_report(prob, d)
            s.rows.append((d, f"{len(lm.row_labels)}x{len(lm.col_labels)}", lm.order, lm.verdict))
    rep.verdict = "pass" if ok else "fail"


def _validate_dt(job: JobSpec, rep: Report):
    p = job.parameters
    if "dt" in p:
        try:
            c = dtcoord.parse_dt(p["dt"])
        except ValueError as exc:
            raise SchemaError("parameters.dt", str(exc)) from None
    else:
        for k in ("g", "n", "t"):
            if k not in p:
                raise SchemaError(f"parameters.{k}", "required when dt is absent")
        c = dtcoord.DTCoord(p["g"], p["n"], p["t"])
    problems = dtcoord.dt_violations(c)
    s = rep.section("coordinate")
    s.add("dt", dtcoord.format_dt(c))
    s.add("valid", not problems)
    s.lines += [f"violation: {v}" for v in problems]
    rep.verdict = "fail" if problems else "pass"


def _family(job: JobSpec, rep: Report):
    p = dict(job.parameters)
    case = p.pop("case")
    try:
        c = dtcoord.family_curve(case, **p)
    except dtcoord.ParamConstraintViolated as exc:
        s = rep.section("family")
        s.add("case", case)
        s.add("constraint violated", exc)
        rep.verdict = "fail"
        return
    except (KeyError, TypeError) as exc:
        raise SchemaError("parameters", f"missing parameter for case {case}: {exc}") from None
    except ValueError as exc:
        raise SchemaError("parameters.case", str(exc)) from None
    s = rep.section("family")
    s.add("case", case)
    s.add("dt", dtcoord.format_dt(c))
    s.add("valid", dtcoord.validate_dt(c))
    rep.verdict = "pass"


def _sliding(job: JobSpec, rep: Report):
    p = job.parameters
    s = rep.section("coefficient")
    try:
        coeff = sliding.degree_reduction_coeff(p["n"])
    except (sliding.OddDegree, sliding.NegativeDegree) as exc:
        s.add("n", p["n"])
        s.add("rejected", f"{type(exc).__name__}: {exc}")
        rep.verdict = "fail"
        return
    s.add("n", coeff.n)
    s.add("value", f"1 / {format_laurent(sliding.slide_denominator(coeff.n))}")
    s.add("canonical", f"{format_laurent(coeff.value.numer)} / {format_laurent(coeff.value.denom)}")
    s.add("kink", format_laurent(sliding.kink_coeff()))
    s.add("rebuilt denominator matches", sliding.derived_denominator(coeff.n) == sliding.slide_denominator(coeff.n))
    s = rep.section("non-vanishing")
    s.add("n_max", p["n_max"])
    s.add("all denominators nonzero in Q(q)", sliding.check_nonvanishing(p["n_max"]))
    s.add("denominators at q=1", sliding.q1_denominator_values(p["n_max"]))
    chain = [st.degree for st in sliding.reduction_chain(coeff.n)] + [0]
    s.add("reduction chain", " -> ".join(map(str, chain)))
    rep.verdict = "pass"


HANDLERS: Dict[str, Callable[[JobSpec, Report], None]] = {
    "verify-inde": _verify_inde,
    "verify-degree-bounds": _verify_degree_bounds,
    "verify-oracle": _verify_oracle,
    "certify": _certify,
    "validate-dt": _validate_dt,
    "family": _family,
    "sliding": _sliding,
}


# -- argparse front end -----------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise SchemaError("argv", message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", default=None)
    common.add_argument("--timing", action="store_true")

    parser = _Parser(prog="skeincert", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("verify-inde", parents=[common])
    p.add_argument("--bound", type=int)

    p = sub.add_parser("verify-degree-bounds", parents=[common])
    p.add_argument("--max-exp", type=int, dest="max_exp")
    p.add_argument("--pairs", type=int)
    p.add_argument("--keylem-exp", type=int, dest="keylem_exp")

    p = sub.add_parser("verify-oracle", parents=[common])
    p.add_argument("--triples", type=int)
    p.add_argument("--elements", type=int)
    p.add_argument("--words", type=int)
    p.add_argument("--pairs-per-word", type=int, dest="pairs_per_word")
    p.add_argument("--max-len", type=int, dest="max_len")

    p = sub.add_parser("certify", parents=[common])
    p.add_argument("--job", required=True)
    p.add_argument("--cutoff", type=int)
    p.add_argument("--cap", type=int)
    p.add_argument("--no-matrices", dest="matrices", action="store_false", default=None)

    p = sub.add_parser("validate-dt", parents=[common])
    p.add_argument("dt", nargs="?", help="e.g. 'g=2;n=1,1,2;t=1,1,0'")
    p.add_argument("--g", type=int)
    p.add_argument("--n")
    p.add_argument("--t")

    p = sub.add_parser("family", parents=[common])
    p.add_argument("--case", required=True, choices=("1a", "1b", "1c", "2a", "2b"))
    for name in ("n", "m", "t", "t1", "t2", "n1", "n2", "e1", "e2", "sign"):
        p.add_argument(f"--{name}", type=int)
    p.add_argument("--mirror", action="store_true", default=None)

    p = sub.add_parser("sliding", parents=[common])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--n-max", type=int, dest="n_max")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        ns = vars(args)
        command = ns.pop("command")
        seed, out, timing = ns.pop("seed"), ns.pop("out"), ns.pop("timing")
        params = {k: v for k, v in ns.items() if v is not None}
        report = run_job(JobSpec(command, params, seed), timing=timing)
    except SchemaError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 3
    text = report.render()
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
