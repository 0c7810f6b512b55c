"""Matching for the instantiation order: find ``σ`` with ``query σ = target``.

Pattern queries are matched deterministically.  Everything else goes through a
fuel-bounded imitate/project search that answers proven, refuted or unknown.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import count
from typing import Mapping

from ..kernel.syntax import show, subst_to_json
from ..kernel.terms import (BOUND, CONST, FREE, Abs, App, Head, KernelError,
                            Subst, Term, abstract, alpha_eq, apply_subst,
                            clean_subst, eta_reduce, fresh_bound,
                            fresh_free_var, free_vars, rename_bound, saturate,
                            var_term)
from ..kernel.types import arrow, split_type

DEFAULT_FUEL = 8
DEFAULT_WORK = 500_000

PROVEN, REFUTED, UNKNOWN = "proven", "refuted", "unknown"


class NotAPattern(KernelError, ValueError):
    pass


class MatchVerificationError(KernelError, AssertionError):
    pass


@dataclass(frozen=True)
class MatchOutcome:
    outcome: str
    subst: Subst | None = None
    reason: str = ""

    @classmethod
    def proven(cls, query: Term, target: Term, sigma: Mapping[str, Term]) -> "MatchOutcome":
        sigma = clean_subst(sigma, free_vars(query))
        if not alpha_eq(apply_subst(query, sigma), target):
            raise MatchVerificationError(
                f"matcher does not map {show(query)} to {show(target)}")
        return cls(PROVEN, sigma)

    @classmethod
    def refuted(cls, reason: str) -> "MatchOutcome":
        return cls(REFUTED, None, reason)

    @classmethod
    def unknown(cls, reason: str = "fuel exhausted") -> "MatchOutcome":
        return cls(UNKNOWN, None, reason)

    @property
    def is_proven(self) -> bool:
        return self.outcome == PROVEN

    @property
    def is_refuted(self) -> bool:
        return self.outcome == REFUTED

    def to_json(self) -> dict:
        out = {"outcome": self.outcome}
        if self.subst is not None:
            out["subst"] = subst_to_json(self.subst)
        if self.reason:
            out["reason"] = self.reason
        return out


# ---------------------------------------------------------------- patterns

def pattern_args(t: App) -> list[str] | None:
    """Names of the bound variables ``t``'s arguments eta-reduce to, or None."""
    names = []
    for a in t.args:
        r = eta_reduce(a)
        if not (isinstance(r, App) and not r.args and r.head.kind == BOUND):
            return None
        names.append(r.head.name)
    if len(set(names)) != len(names):
        return None
    return names


def is_pattern(t: Term) -> bool:
    """Every free variable is applied to distinct bound variables only."""
    if isinstance(t, Abs):
        return is_pattern(t.body)
    if t.head.kind == FREE and pattern_args(t) is None:
        return False
    return all(is_pattern(a) for a in t.args)


class _Fail(Exception):
    pass


class _OutOfWork(Exception):
    pass


def _align(p: Abs, t: Abs, extra=frozenset()) -> tuple[str, Term, Term]:
    """Rename both binders to one name fresh for both bodies."""
    name = p.var
    if name in t.body.loose and name != t.var or name in extra:
        name = fresh_bound(p.body.names | t.body.names | extra)
    pb = p.body if name == p.var else rename_bound(p.body, p.var, name, p.var_ty)
    tb = t.body if name == t.var else rename_bound(t.body, t.var, name, t.var_ty)
    return name, pb, tb


def pattern_match(pat: Term, target: Term) -> MatchOutcome:
    """Decide ``∃σ. pat σ = target`` for a higher-order pattern ``pat``."""
    if not is_pattern(pat):
        raise NotAPattern(f"not a pattern: {show(pat)}")
    if pat.ty != target.ty:
        return MatchOutcome.refuted("type mismatch")
    sigma: dict[str, Term] = {}

    def go(p, t, ctx):
        if isinstance(p, Abs):
            if not isinstance(t, Abs) or p.var_ty != t.var_ty:
                raise _Fail("binder mismatch")
            name, pb, tb = _align(p, t, ctx)
            go(pb, tb, ctx | {name})
            return
        if not isinstance(t, App):
            raise _Fail("abstraction against spine")
        h = p.head
        if h.kind == FREE:
            names = pattern_args(p)
            if not t.loose <= set(names):
                raise _Fail(f"{h.name} cannot capture {sorted(t.loose - set(names))}")
            binders = [(n, a.ty) for n, a in zip(names, p.args)]
            cand = abstract(binders, t)
            old = sigma.get(h.name)
            if old is None:
                sigma[h.name] = cand
            elif not alpha_eq(old, cand):
                raise _Fail(f"inconsistent bindings for {h.name}")
            return
        th = t.head
        if (h.kind, h.name, h.ty) != (th.kind, th.name, th.ty) or len(p.args) != len(t.args):
            raise _Fail(f"head clash {h.name} / {th.name}")
        for a, b in zip(p.args, t.args):
            go(a, b, ctx)

    try:
        go(pat, target, frozenset())
    except _Fail as e:
        return MatchOutcome.refuted(str(e))
    return MatchOutcome.proven(pat, target, sigma)


# ---------------------------------------------------------------- bounded search

class _Search:
    """Depth-first imitate/project search.  Every search variable carries a
    level; binding a variable of level ``k`` introduces variables of level
    ``k - 1`` and level-0 variables cannot be bound (the fuel cut)."""

    def __init__(self, avoid: set[str], work: list):
        self.avoid = set(avoid)
        self.work = work
        self.cut = False
        self.names = count(1)
        self.bvars = count(1)

    def fresh_var(self) -> str:
        while True:
            name = f"V{next(self.names)}"
            if name not in self.avoid:
                self.avoid.add(name)
                return name

    def fresh_bvar(self, avoid) -> str:
        while True:
            name = f"_m{next(self.bvars)}"
            if name not in avoid:
                return name

    def solve(self, eqs: list, sigma: dict, levels: dict):
        eqs = list(eqs)
        while eqs:
            q, t = eqs.pop(0)
            if isinstance(q, Abs):
                if not isinstance(t, Abs) or q.var_ty != t.var_ty:
                    return None
                name = self.fresh_bvar(q.body.names | t.body.names)
                eqs.insert(0, (rename_bound(q.body, q.var, name, q.var_ty),
                               rename_bound(t.body, t.var, name, t.var_ty)))
                continue
            if not isinstance(t, App):
                return None
            h = q.head
            if h.kind == FREE and h.name in levels:
                return self.branch(q, t, eqs, sigma, levels)
            th = t.head
            if (h.kind, h.name, h.ty) != (th.kind, th.name, th.ty) or len(q.args) != len(t.args):
                return None
            eqs[0:0] = list(zip(q.args, t.args))
        return sigma

    def bindings(self, q: App, t: App):
        """Imitation first, then projections left to right."""
        arg_tys, _ = split_type(q.head.ty)
        ws = [(f"w{i}", ty) for i, ty in enumerate(arg_tys, 1)]

        def build(head: Head):
            sub_tys, _ = split_type(head.ty)
            new = []
            inner = []
            for ty in sub_tys:
                name = self.fresh_var()
                new.append(name)
                hty = arrow(*[wty for _, wty in ws], ty)
                inner.append(saturate(Head(FREE, name, hty),
                                      [var_term(n, wt) for n, wt in ws]))
            body = saturate(head, inner)
            return abstract(ws, body), new

        if t.head.kind in (CONST, FREE) and t.ty == q.ty:
            yield build(t.head)
        for i, (name, ty) in enumerate(ws):
            if split_type(ty)[1] == q.ty:
                yield build(Head(BOUND, name, ty))

    def branch(self, q, t, eqs, sigma, levels):
        x = q.head.name
        level = levels[x]
        if level <= 0:
            self.cut = True
            return None
        for binding, new in self.bindings(q, t):
            theta = {x: binding}
            sigma2 = {k: apply_subst(v, theta) for k, v in sigma.items()}
            sigma2[x] = binding
            levels2 = {k: v for k, v in levels.items() if k != x}
            for n in new:
                levels2[n] = level - 1
            eqs2 = [(apply_subst(q, theta), t)] + [(apply_subst(a, theta), b) for a, b in eqs]
            self.work[0] -= sum(a.size for a, _ in eqs2)
            if self.work[0] < 0:
                raise _OutOfWork
            result = self.solve(eqs2, sigma2, levels2)
            if result is not None:
                return result
        return None


def match_bounded(query: Term, target: Term, fuel: int = DEFAULT_FUEL,
                  work: int = DEFAULT_WORK) -> MatchOutcome:
    """Semi-decide ``∃σ. query σ = target``.

    Iterative deepening over the fuel levels makes the answer monotone: the
    substitution proven at fuel ``k`` is the one returned at every larger fuel.
    ``work`` caps the total size of the equations the search builds; running
    out answers unknown.
    """
    if query.ty != target.ty:
        return MatchOutcome.refuted("type mismatch")
    if alpha_eq(query, target):
        return MatchOutcome.proven(query, target, {})
    qvars = free_vars(query)
    avoid = set(qvars) | set(free_vars(target)) | query.names | target.names
    renaming = {}
    for name, ty in qvars.items():
        new = fresh_free_var(name + "_q", avoid)
        avoid.add(new)
        renaming[name] = saturate(Head(FREE, new, ty))
    q = apply_subst(query, renaming)
    back = {_head_name(v): n for n, v in renaming.items()}
    remaining = [work]
    for budget in range(fuel + 1):
        search = _Search(avoid, remaining)
        levels = {_head_name(v): budget for v in renaming.values()}
        try:
            sigma = search.solve([(q, target)], {}, levels)
        except _OutOfWork:
            return MatchOutcome.unknown(f"work budget {work} exhausted at fuel level {budget}")
        if sigma is not None:
            out = {}
            for new_name, old_name in back.items():
                if new_name in sigma:
                    out[old_name] = sigma[new_name]
            return MatchOutcome.proven(query, target, out)
        if not search.cut:
            return MatchOutcome.refuted("search space exhausted")
    return MatchOutcome.unknown(f"fuel {fuel} exhausted")


def _head_name(t: Term) -> str:
    while isinstance(t, Abs):
        t = t.body
    return t.head.name


def less_general(g1: Term, g2: Term, fuel: int = DEFAULT_FUEL) -> MatchOutcome:
    """Is ``g1 ≤ g2``, i.e. does some ``σ`` give ``g1 σ = g2``?"""
    if is_pattern(g1):
        return pattern_match(g1, g2)
    return match_bounded(g1, g2, fuel)
