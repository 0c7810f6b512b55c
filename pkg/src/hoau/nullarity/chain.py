"""The strictly ascending chain ``G < Gμ < Gμμ < ...`` and its certificate."""
from __future__ import annotations

from dataclasses import dataclass, field

from ..au.generalize import (AUP, GenWitness, WitnessError, check_generalization,
                             find_witness, ground_witnesses)
from ..au.matching import DEFAULT_FUEL, match_bounded
from ..kernel.signature import Signature
from ..kernel.syntax import show, subst_to_json
from ..kernel.terms import (FREE, Abs, App, Head, KernelError, Subst, Term,
                            abstract, alpha_eq, apply_subst, free_vars, occ,
                            projections, var_term)
from ..kernel.types import split_type
from ..superpattern import is_superpattern
from .pseudo import pseudo_pattern_lambda, pseudo_pattern_sp
from .tight import TIGHT, Fragment, ShapeError, is_pattern_derived, split_top, tighten

PROJECTION_CASE = "ProjectionCase"
CONSTANT_HEAD_CASE = "ConstantHeadCase"
FREE_HEAD_OCCURRENCE_CASE = "FreeHeadOccurrenceCase"


class NotPatternDerived(KernelError, ValueError):
    pass


class RefutationFailed(KernelError):
    pass


class ChainTooLarge(KernelError):
    pass


# μ maps a term with n occurrences of Y to one with n(n+2); refuse to build
# elements beyond this many occurrences.
MAX_OCCURRENCES = 10_000


def _top_var(g: Term) -> Head:
    _, _, r = split_top(g)
    if isinstance(r, Abs) or r.head.kind != FREE:
        raise ShapeError(f"{show(g)} is not of the shape λx̄. f(Y(...))")
    return r.head


def mu(y: Head) -> Subst:
    """``{Y ↦ λw1.λw2. Y(Y(w1,w2), Y(w1,w2))}``."""
    args, _ = split_type(y.ty)
    if len(args) != 2 or args[0] != args[1]:
        raise ShapeError(f"{y.name} must take two arguments of one type")
    ws = [("w1", args[0]), ("w2", args[1])]
    inner = App(y, tuple(var_term(n, t) for n, t in ws))
    return {y.name: abstract(ws, App(y, (inner, inner)))}


def chain_step(w: GenWitness, p: AUP) -> tuple[GenWitness, Subst]:
    """Apply ``μ`` once (single pass).  The projection witnesses for ``Y``
    stay valid because a projection collapses the nested copies."""
    y = _top_var(w.g)
    for sigma, i in ((w.sigma1, 1), (w.sigma2, 2)):
        img = sigma.get(y.name)
        if img is None or not alpha_eq(img, dict(projections(y.ty))[i]):
            raise ShapeError(f"witness {i} must send {y.name} to projection {i}")
    n = occ(y.name, w.g)
    if n * (n + 2) > MAX_OCCURRENCES:
        raise ChainTooLarge(f"the next element would have {n * (n + 2)} occurrences of {y.name}")
    m = mu(y)
    out = GenWitness(apply_subst(w.g, m), w.sigma1, w.sigma2)
    if not check_generalization(out, p):
        raise WitnessError(f"{show(out.g)} does not generalize the problem")
    return out, m


@dataclass(frozen=True)
class RefutationEvidence:
    case_tag: str
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"case": self.case_tag, **self.details}


def max_free_occurrences(t: Term) -> int:
    return max((occ(n, t) for n in free_vars(t)), default=0)


def refute_chain_step(g_next: Term, g_prev: Term, fuel: int | None = None) -> RefutationEvidence:
    """Evidence that no ``σ`` gives ``g_next σ = g_prev``.

    Follows the three-way split on the image of the top variable of
    ``g_next``: projections are computed and compared, constant-headed images
    clash with the free head of ``g_prev`` below the top constant, and
    free-headed images are ruled out by counting occurrences.  The argument is
    only meant for chain-shaped terms; with ``fuel`` the reverse matching
    problem is also run through the bounded matcher as a cross-check.
    """
    y = _top_var(g_next)
    prev_head = _top_var(g_prev)
    projected = []
    for i, proj in projections(y.ty):
        img = apply_subst(g_next, {y.name: proj})
        if alpha_eq(img, g_prev):
            raise RefutationFailed(f"projection {i} maps {show(g_next)} onto {show(g_prev)}")
        projected.append({"projection": i, "result": show(img)})
    n_next = occ(y.name, g_next)
    n_prev = max_free_occurrences(g_prev)
    details = {
        "projections": projected,
        "constant_head": {"position": "1.1", "prev_head": prev_head.name,
                          "prev_head_kind": prev_head.kind},
        "n_next": n_next,
        "n_prev": n_prev,
    }
    if n_next <= n_prev:
        raise RefutationFailed(f"occurrence counts {n_next} <= {n_prev} do not separate the terms")
    if fuel is not None:
        rev = match_bounded(g_next, g_prev, fuel)
        if rev.is_proven:
            raise RefutationFailed(f"bounded matching proves {show(g_next)} <= {show(g_prev)}")
        details["reverse_match"] = rev.outcome
    return RefutationEvidence(FREE_HEAD_OCCURRENCE_CASE, details)


@dataclass
class ChainCertificate:
    problem: AUP
    fragment: Fragment
    start: GenWitness
    tight: GenWitness
    elements: list = field(default_factory=list)
    step_evidence: list = field(default_factory=list)

    def occurrences(self) -> list[int]:
        return [occ(_top_var(w.g).name, w.g) for w in self.elements]

    def to_json(self) -> dict:
        return {
            "problem": self.problem.to_json(),
            "fragment": self.fragment.value,
            "start": self.start.to_json(),
            "tight": self.tight.to_json(),
            "elements": [{**w.to_json(), "occ": n}
                         for w, n in zip(self.elements, self.occurrences())],
            "steps": [{"forward": subst_to_json(s), "refutation": e.to_json()}
                      for s, e in self.step_evidence],
        }


def verify_element(w: GenWitness, p: AUP, frag: Fragment):
    if not check_generalization(w, p):
        raise WitnessError(f"{show(w.g)} does not generalize the problem")
    if frag == Fragment.LAMBDA_SP and not is_superpattern(w.g).is_member:
        raise ShapeError(f"{show(w.g)} is not a superpattern")


def generate_chain(p: AUP, start: GenWitness | Term, frag: Fragment = Fragment.LAMBDA_ALL,
                   n: int = 1, sig: Signature | None = None, fuel: int = DEFAULT_FUEL,
                   reverse_fuel: int | None = None, delayed: bool = False,
                   on_step=None) -> ChainCertificate:
    """Ground, tighten, build the pseudo-pattern for the fragment, then apply
    ``μ`` ``n`` times, verifying every element and every step.

    ``on_step(i, witness)`` is called after each element is verified, which
    lets callers inspect or stop a long chain.
    """
    sig = sig or Signature.default()
    if isinstance(start, (Abs, App)):
        found, status = find_witness(start, p, fuel)
        if found is None:
            raise WitnessError(f"{show(start)} is not a verified generalization ({status})")
        start = found
    if not check_generalization(start, p):
        raise WitnessError(f"{show(start.g)} does not generalize the problem")
    w = ground_witnesses(start, sig)
    if not is_pattern_derived(w.g, p):
        raise NotPatternDerived(f"{show(w.g)} is not pattern-derived")
    tr = tighten(w, p, frag, fuel, sig)
    if tr.status != TIGHT:
        raise KernelError(f"tightening ended {tr.status} at {show(tr.witness.g)}")
    if frag == Fragment.LAMBDA_SP:
        g0 = pseudo_pattern_sp(tr.witness, p, sig, delayed)
    else:
        g0 = pseudo_pattern_lambda(tr.witness, p, delayed)
    cert = ChainCertificate(p, frag, start, tr.witness)
    verify_element(g0, p, frag)
    cert.elements.append(g0)
    if on_step:
        on_step(0, g0)
    cur = g0
    for i in range(1, n + 1):
        nxt, m = chain_step(cur, p)
        if not alpha_eq(apply_subst(cur.g, m), nxt.g):
            raise KernelError("forward substitution does not reproduce the next element")
        verify_element(nxt, p, frag)
        evidence = refute_chain_step(nxt.g, cur.g, reverse_fuel)
        cert.elements.append(nxt)
        cert.step_evidence.append((m, evidence))
        if on_step:
            on_step(i, nxt)
        cur = nxt
    return cert
