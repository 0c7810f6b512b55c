"""Pattern-derived generalizations and tightening."""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from ..au.generalize import AUP, GenWitness, find_witness, ground_witnesses, pattern_lgg
from ..au.matching import DEFAULT_FUEL, pattern_match
from ..kernel.signature import Signature
from ..kernel.syntax import show, subst_to_json
from ..kernel.terms import (CONST, FREE, Abs, KernelError, Subst, Term, alpha_eq,
                            apply_subst, first_occurrence_order, free_vars,
                            projections, strip_binders)
from ..superpattern import is_superpattern


class Fragment(str, Enum):
    LAMBDA_ALL = "LambdaAll"
    LAMBDA_SP = "LambdaSp"

    @classmethod
    def parse(cls, text: str) -> "Fragment":
        key = text.strip().lower()
        if key in ("lambda", "lambdaall", "all"):
            return cls.LAMBDA_ALL
        if key in ("sp", "lambdasp", "superpattern"):
            return cls.LAMBDA_SP
        raise ValueError(f"unknown fragment {text!r}; use 'lambda' or 'sp'")


class ShapeError(KernelError, ValueError):
    pass


def is_pattern_derived(g: Term, p: AUP) -> bool:
    lgg = pattern_lgg(p).g
    if lgg.ty != g.ty:
        return False
    return pattern_match(lgg, g).is_proven


def split_top(g: Term):
    """Split ``λw̄. c(r)`` into ``(binders, c, r)``."""
    binders, body = strip_binders(g)
    if isinstance(body, Abs) or body.head.kind != CONST or len(body.args) != 1:
        raise ShapeError(f"expected a term of the shape λx̄. f(r), got {show(g)}")
    return binders, body.head, body.args[0]


def check_head_shape(g: Term):
    """``(Z, m)`` when the argument of the top constant has a free head ``Z``
    applied to ``m > 0`` arguments, else None."""
    _, _, r = split_top(g)
    if isinstance(r, Abs) or r.head.kind != FREE or not r.args:
        return None
    return r.head.name, len(r.args)


# ---------------------------------------------------------------- tightness

TIGHT, NOT_TIGHT, UNKNOWN = "Tight", "NotTight", "Unknown"


@dataclass(frozen=True)
class TightResult:
    status: str
    theta: Subst | None = None
    witness: GenWitness | None = None
    reason: str = ""

    def to_json(self) -> dict:
        out = {"status": self.status}
        if self.theta is not None:
            out["theta"] = subst_to_json(self.theta)
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        if self.reason:
            out["reason"] = self.reason
        return out


def tightness_candidates(w: GenWitness):
    """Every single-variable substitution the tightness conditions forbid:
    type-correct projections, then the images under each witness."""
    for name in first_occurrence_order(w.g):
        ty = free_vars(w.g)[name]
        for i, proj in projections(ty):
            yield f"{name} ↦ π{i}", {name: proj}
        for label, sigma in (("σ1", w.sigma1), ("σ2", w.sigma2)):
            if name in sigma:
                yield f"{name} ↦ {name}{label}", {name: sigma[name]}


def is_tight(w: GenWitness, p: AUP, frag: Fragment = Fragment.LAMBDA_ALL,
             fuel: int = DEFAULT_FUEL, sig: Signature | None = None) -> TightResult:
    sig = sig or Signature.default()
    seen = [w.g]
    unknown = []
    for label, theta in tightness_candidates(w):
        g2 = apply_subst(w.g, theta)
        if any(alpha_eq(g2, h) for h in seen):
            continue
        seen.append(g2)
        if frag == Fragment.LAMBDA_SP and not is_superpattern(g2).is_member:
            continue
        found, status = find_witness(g2, p, fuel)
        if status == "proven":
            return TightResult(NOT_TIGHT, theta, ground_witnesses(found, sig), label)
        if status == "unknown":
            unknown.append(label)
    if unknown:
        return TightResult(UNKNOWN, reason="undecided at fuel %d: %s" % (fuel, ", ".join(unknown)))
    return TightResult(TIGHT)


@dataclass
class TightenResult:
    witness: GenWitness
    status: str
    steps: list = field(default_factory=list)
    bound: int = 0

    def to_json(self) -> dict:
        return {"status": self.status, "witness": self.witness.to_json(),
                "steps": [subst_to_json(t) for t in self.steps], "bound": self.bound}


def rewrite_bound(w: GenWitness, pairs: int = 1) -> int:
    return len(free_vars(w.g)) * (1 + pairs)


def tighten(w: GenWitness, p: AUP, frag: Fragment = Fragment.LAMBDA_ALL,
            fuel: int = DEFAULT_FUEL, sig: Signature | None = None) -> TightenResult:
    """Apply forbidden substitutions until none keeps a generalization.

    Each rewrite removes at least one free variable (projections eliminate
    the variable, witness images are ground), so the loop is bounded by the
    number of free variables.
    """
    sig = sig or Signature.default()
    w = ground_witnesses(w, sig)
    bound = rewrite_bound(w)
    steps = []
    while True:
        r = is_tight(w, p, frag, fuel, sig)
        if r.status != NOT_TIGHT:
            return TightenResult(w, r.status, steps, bound)
        if len(free_vars(r.witness.g)) >= len(free_vars(w.g)):
            raise KernelError("tightening step did not remove a variable")
        steps.append(r.theta)
        w = r.witness
        if len(steps) > bound:
            raise KernelError("tightening exceeded its rewrite bound")
