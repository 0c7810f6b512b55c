"""Golden cases: every worked example of the nullarity construction, recomputed.

Each case recomputes a value and compares it with the expected term up to
alpha-equivalence and renaming of free variables.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable

from .au import AUP, GenWitness, check_generalization, less_general, match_bounded
from .au import pattern_lgg, pattern_match
from .kernel import (Signature, alpha_eq, apply_subst, beta_eta_normalize, canonical_key,
                     free_vars, parse_position, parse_term, parse_type, projection,
                     show, show_position, show_type, subterm_at)
from .nullarity import (check_head_shape, chain_step, core, is_representative,
                        is_tight, lift, maximal_positions, pseudo_pattern_lambda,
                        pseudo_pattern_sp, refute_chain_step, tighten)
from .superpattern import is_superpattern

SIG = Signature.default()
S = r"\x:a.\y:a. f(x)"
T = r"\x:a.\y:a. f(y)"
PI1 = r"\b1:a.\b2:a. b1"
PI2 = r"\b1:a.\b2:a. b2"


def problem() -> AUP:
    return AUP(parse_term(S, SIG), parse_term(T, SIG))


def term(text: str, sig: Signature = SIG, **kw):
    return parse_term(text, sig, **kw)


def witness(g: str, s1: dict, s2: dict, free_ctx=None) -> GenWitness:
    gt = term(g, free_ctx=free_ctx)
    fv = free_vars(gt)
    return GenWitness(gt, {k: term(v, expected=fv[k]) for k, v in s1.items()},
                      {k: term(v, expected=fv[k]) for k, v in s2.items()})


def same(a, b) -> bool:
    """Equal up to alpha-equivalence and a renaming of free variables."""
    return a.ty == b.ty and canonical_key(a, rename_free=True) == canonical_key(b, rename_free=True)


@dataclass
class CaseResult:
    name: str
    ok: bool
    detail: str
    seconds: float


@dataclass
class Case:
    name: str
    run: Callable[[], tuple[bool, str]]


def _expect(actual, expected_text: str, **kw) -> tuple[bool, str]:
    expected = term(expected_text, **kw)
    return same(actual, expected), f"got {show(actual)}, expected {show(expected)}"


# ---------------------------------------------------------------- cases

def _lgg():
    w = pattern_lgg(problem())
    ok, d = _expect(w.g, r"\x:a.\y:a. f(Z(x,y))")
    (z,) = free_vars(w.g)
    pi = [alpha_eq(w.sigma1[z], term(PI1)), alpha_eq(w.sigma2[z], term(PI2))]
    return ok and all(pi) and w.grounded, d + f"; projection witnesses {pi}"


def _lgg_witness():
    w = witness(r"\x:a.\y:a. f(Z(x,y))", {"Z": PI1}, {"Z": PI2})
    return check_generalization(w, problem()), str(w)


def _deeper_generalization():
    w = witness(r"\x:a.\y:a. f(W(W(x,y),W(x,y)))", {"W": PI1}, {"W": PI2})
    return check_generalization(w, problem()), str(w)


def _match_into_deeper():
    m = pattern_match(term(r"\x:a.\y:a. f(Z(x,y))"), term(r"\x:a.\y:a. f(W(W(x,y),W(x,y)))"))
    want = term(r"\a:a.\b:a. W(W(a,b),W(a,b))", free_ctx={"W": parse_type("a->a->a")})
    return m.is_proven and alpha_eq(m.subst["Z"], want), m.outcome


def _top_maximal():
    sig = Signature.parse("f : a->a\nf' : a->a\nh : a->a\n")
    p = AUP(term(r"\x:a. f(f'(x))", sig), term(r"\x:a. f(h(x))", sig))
    w = pattern_lgg(p)
    ok, d = _expect(w.g, r"\x:a. f(Y(x))", sig=sig)
    return ok and check_generalization(w, p), d


def _eta_long():
    sig = Signature.parse("f : (a->a)->a\n")
    out = show(beta_eta_normalize(term(r"\x:a->a. f x", sig)))
    return out == r"\x:a->a. f(\y:a. x(y))", out


def _superpattern(text: str, member: bool, reasons=()):
    def run():
        r = is_superpattern(term(text))
        got = tuple(sorted({c for _, c in r.violations}))
        return r.is_member == member and got == tuple(sorted(reasons)), str(r.to_json())
    return run


SUPERPATTERN_CASES = [
    (r"\x:a.\y:a. Z", True, ()),
    (r"\x:a.\y:a. Z(x,y)", True, ()),
    (r"\x:a.\y:a. Z(R(x,y),K(x),K(P(x)),W,y)", True, ()),
    (r"\x:a.\y:a. Z(x,x)", False, ("DuplicateBoundArg",)),
    (r"\x:a.\y:a. Z(\w:a->a. w(x),\w:a->a. w(y))", False, ("BadArgHead",)),
    (r"\x:a.\y:a. Z(R(x,y),y,K(x),y,K(P(x)),y,W)", False, ("DuplicateBoundArg",)),
    (r"\x:a.\y:(a->a)->a. Z(y(\u:a. u))", False, ("BadArgHead",)),
]

TIGHT_G = r"\x:a.\y:a. f(Z(W(x,Z(f(a),a)),W(Z(a,f(a)),y)))"


def _tight_witness():
    return witness(TIGHT_G, {"Z": PI1, "W": PI1}, {"Z": PI2, "W": PI2})


def _tight(text: str, s1: dict, s2: dict):
    def run():
        r = is_tight(witness(text, s1, s2), problem())
        return r.status == "Tight", r.status
    return run


# The four displayed projections of the tight example.  The second one is
# recomputed: {Z ↦ π2} keeps the W-application, giving f(W(f(a),y)).
TIGHT_PROJECTIONS = [
    ("Z", PI1, r"\x:a.\y:a. f(W(x,f(a)))"),
    ("Z", PI2, r"\x:a.\y:a. f(W(f(a),y))"),
    ("W", PI1, r"\x:a.\y:a. f(Z(x,Z(a,f(a))))"),
    ("W", PI2, r"\x:a.\y:a. f(Z(Z(f(a),a),y))"),
]


def _tight_projection(var: str, proj: str, expected: str):
    def run():
        g = term(TIGHT_G)
        out = apply_subst(g, {var: term(proj)})
        ok, d = _expect(out, expected, free_ctx={k: v for k, v in free_vars(g).items()})
        p = problem()
        gen = less_general(out, p.left).is_proven and less_general(out, p.right).is_proven
        return ok and not gen, d + f"; generalizes: {gen}"
    return run


def _not_tight_r():
    w = witness(r"\x:a.\y:a. f(Z(R(x),R(y)))", {"Z": PI1, "R": r"\b:a. b"},
                {"Z": PI2, "R": r"\b:a. b"})
    r = is_tight(w, problem())
    g = apply_subst(w.g, {"R": term(r"\b:a. b")})
    ok, d = _expect(g, r"\x:a.\y:a. f(Z(x,y))")
    return r.status == "NotTight" and ok, d + f"; verdict {r.status}"


def _not_tight_y():
    w = witness(r"\x:a.\y:a. f(Z(Z(x,y),Y(x,y)))", {"Z": PI1, "Y": PI1}, {"Z": PI2, "Y": PI2})
    p = problem()
    r = is_tight(w, p)
    g = apply_subst(w.g, {"Y": term(PI2)})
    gen = less_general(g, p.left).is_proven and less_general(g, p.right).is_proven
    return r.status == "NotTight" and gen, f"{show(g)} generalizes: {gen}; verdict {r.status}"


def _tighten():
    w = witness(r"\x:a.\y:a. f(Z(R(x),R(y)))", {"Z": PI1, "R": r"\b:a. b"},
                {"Z": PI2, "R": r"\b:a. b"})
    r = tighten(w, problem())
    ok, d = _expect(r.witness.g, r"\x:a.\y:a. f(Z(x,y))")
    return ok and r.status == "Tight", d


def _head_shape():
    cases = [(r"\x:a.\y:a. f(Z(x,y))", ("Z", 2)), (r"\x:a.\y:a. f(x)", None),
             (r"\x:a.\y:a. f(f(Z(x,y)))", None)]
    got = [check_head_shape(term(t)) for t, _ in cases]
    return got == [e for _, e in cases], str(got)


MAX_R = r"\x:a.\y:a. f(Z(\w:a->a. x, x, \w1:a->a.\w2:a->a. y, f))"
H1_TY = "a->a->(a->a)->a"
H2_TY = "a->a->(a->a)->(a->a)->a"
H3_TY = "a->a->(a->a)"


def _maximal():
    r = term(MAX_R)
    got = [show_position(q) for q in maximal_positions(r, SIG)]
    rep = {q: is_representative(subterm_at(r, parse_position(q)))
           for q in ("1.1.1.1", "1.1.1.3", "1.1.1.3.1", "1.1.1.4", "1.1.1.2", "1.1.1")}
    want_rep = {"1.1.1.1": True, "1.1.1.3": True, "1.1.1.3.1": True, "1.1.1.4": True,
                "1.1.1.2": False, "1.1.1": False}
    return got == ["1.1.1.1", "1.1.1.3", "1.1.1.4"] and rep == want_rep, f"{got}; {rep}"


def _lift():
    r = term(MAX_R)
    out = lift(r, SIG)
    ctx = {"Z": free_vars(r)["Z"], "H1": parse_type(H1_TY), "H2": parse_type(H2_TY),
           "H3": parse_type(H3_TY)}
    ok, d = _expect(out, r"\x:a.\y:a. f(Z(H1(x,y),x,H2(x,y),H3(x,y)))", free_ctx=ctx)
    h2 = free_vars(out).get("H2")
    ok2 = h2 == parse_type(H2_TY)
    return ok and ok2, d + f"; H2 : {show_type(h2) if h2 else None}"


def _pseudo_lambda_arrow():
    w = witness(r"\x:a.\y:a. f(Z(\w:a->a. x,\w:a->a. y))",
                {"Z": r"\w1:(a->a)->a.\w2:(a->a)->a. w1 f"},
                {"Z": r"\w1:(a->a)->a.\w2:(a->a)->a. w2 f"})
    out = pseudo_pattern_lambda(w, problem())
    return _expect(out.g, r"\x:a.\y:a. f(Y(x,y))")


def _pseudo_lambda_nested():
    out = pseudo_pattern_lambda(_tight_witness(), problem(), delayed=True)
    return _expect(out.g, r"\x:a.\y:a. f(Y(W(x,f(a)),W(f(a),y)))")


def _pseudo_sp():
    p = problem()
    out = pseudo_pattern_sp(_tight_witness(), p, SIG, delayed=True)
    ok, d = _expect(out.g, r"\x:a.\y:a. f(Y(W(x,H1(x,y)),W(H2(x,y),y)))")
    fa = term(r"\x:a.\y:a. f(a)")
    hs = [n for n in free_vars(out.g) if n.startswith("H")]
    ok2 = len(hs) == 2 and all(alpha_eq(s[h], fa) for s in (out.sigma1, out.sigma2) for h in hs)
    return ok and ok2 and check_generalization(out, p), d


def _core():
    g = term(r"\x:a.\y:a. f(Y(W(x,f(a)),W(f(a),y)))")
    out = core(g, SIG)
    ctx = {"H1": parse_type("a->a->a"), "H2": parse_type("a->a->a"),
           "W": parse_type("a->a->a"), "Y": parse_type("a->a->a")}
    expected = term(r"\x:a.\y:a. f(Y(W(x,H1(x,y)),W(H2(x,y),y)))", free_ctx=ctx)
    return same(out, subterm_at(expected, (1, 1, 1))), show(out)


def _strict_order():
    small = term(r"\x:a.\y:a. f(R(x,y))")
    big = term(r"\x:a.\y:a. f(R(R(x,y),R(x,y)))")
    fwd = match_bounded(small, big, 6)
    rev = match_bounded(big, small, 6)
    projs = sorted(show(apply_subst(big, {"R": projection(free_vars(big)["R"], i)}))
                   for i in (1, 2))
    ok = fwd.is_proven and not rev.is_proven and projs == [r"\x:a.\y:a. f(x)", r"\x:a.\y:a. f(y)"]
    return ok, f"forward {fwd.outcome}, reverse {rev.outcome}, projections {projs}"


def _chain_step():
    w = witness(r"\x:a.\y:a. f(Y(x,y))", {"Y": PI1}, {"Y": PI2})
    out, _ = chain_step(w, problem())
    ev = refute_chain_step(out.g, w.g)
    ok, d = _expect(out.g, r"\x:a.\y:a. f(Y(Y(x,y),Y(x,y)))")
    return ok and ev.details["n_next"] == 3 and ev.details["n_prev"] == 1, d


def cases() -> list[Case]:
    out = [
        Case("pattern lgg of s and t", _lgg),
        Case("projection witnesses verify", _lgg_witness),
        Case("f(W(W(x,y),W(x,y))) generalizes s and t", _deeper_generalization),
        Case("pattern lgg matches into f(W(W(x,y),W(x,y)))", _match_into_deeper),
        Case("top-maximal pattern generalization", _top_maximal),
        Case("eta-long form of \\x. f x", _eta_long),
    ]
    for text, member, reasons in SUPERPATTERN_CASES:
        verdict = "superpattern" if member else "not a superpattern"
        out.append(Case(f"{text} is {verdict}", _superpattern(text, member, reasons)))
    out += [
        Case("head shape of pattern-derived generalizations", _head_shape),
        Case("f(Z(x,y)) is tight", _tight(r"\x:a.\y:a. f(Z(x,y))", {"Z": PI1}, {"Z": PI2})),
        Case("f(Z(Z(x,y),Z(x,y))) is tight",
             _tight(r"\x:a.\y:a. f(Z(Z(x,y),Z(x,y)))", {"Z": PI1}, {"Z": PI2})),
        Case("f(Z(W(x,Z(f(a),a)),W(Z(a,f(a)),y))) is tight",
             _tight(TIGHT_G, {"Z": PI1, "W": PI1}, {"Z": PI2, "W": PI2})),
    ]
    for var, proj, expected in TIGHT_PROJECTIONS:
        which = "π1" if proj == PI1 else "π2"
        out.append(Case(f"tight example under {var} ↦ {which}",
                        _tight_projection(var, proj, expected)))
    out += [
        Case("f(Z(R(x),R(y))) is not tight", _not_tight_r),
        Case("f(Z(Z(x,y),Y(x,y))) is not tight", _not_tight_y),
        Case("tightening f(Z(R(x),R(y)))", _tighten),
        Case("maximal positions", _maximal),
        Case("lifting and the type of H2", _lift),
        Case("pseudo-pattern with arrow-typed arguments", _pseudo_lambda_arrow),
        Case("pseudo-pattern of the nested tight example", _pseudo_lambda_nested),
        Case("superpattern pseudo-pattern of the nested tight example", _pseudo_sp),
        Case("core of the nested pseudo-pattern", _core),
        Case("f(R(x,y)) is strictly below f(R(R(x,y),R(x,y)))", _strict_order),
        Case("one μ step from f(Y(x,y))", _chain_step),
    ]
    return out


def run_all() -> list[CaseResult]:
    results = []
    for case in cases():
        t0 = time.perf_counter()
        try:
            ok, detail = case.run()
        except Exception as e:  # a crash is a failed case, not a crashed report
            ok, detail = False, f"{type(e).__name__}: {e}"
        results.append(CaseResult(case.name, bool(ok), detail, time.perf_counter() - t0))
    return results
