"""Generalizations of anti-unification problems between closed terms."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator

from ..kernel.signature import Signature
from ..kernel.syntax import show, subst_to_json, to_json
from ..kernel.terms import (BOUND, CONST, FREE, Abs, App, Head, KernelError,
                            Subst, Term, TypeCheckError, abstract, alpha_eq,
                            apply_subst, canonical_key, const_term, free_vars,
                            free_term, fresh_bound, fresh_free_var, is_closed,
                            rename_bound, var_term)
from ..kernel.types import Type, arrow, show_type, split_type
from .matching import DEFAULT_FUEL, less_general


class WitnessError(KernelError):
    pass


@dataclass(frozen=True)
class AUP:
    left: Term
    right: Term

    def __post_init__(self):
        if not (is_closed(self.left) and is_closed(self.right)):
            raise ValueError("anti-unification problems are between closed terms")
        if self.left.ty != self.right.ty:
            raise TypeCheckError(
                f"sides have types {show_type(self.left.ty)} and {show_type(self.right.ty)}")

    @property
    def ty(self) -> Type:
        return self.left.ty

    def to_json(self) -> dict:
        return {"left": {"text": show(self.left), "ast": to_json(self.left)},
                "right": {"text": show(self.right), "ast": to_json(self.right)},
                "type": show_type(self.ty)}


@dataclass(frozen=True)
class GenWitness:
    g: Term
    sigma1: Subst = field(default_factory=dict)
    sigma2: Subst = field(default_factory=dict)

    @property
    def grounded(self) -> bool:
        return not any(r.free_names for r in (*self.sigma1.values(), *self.sigma2.values()))

    def instances(self) -> tuple[Term, Term]:
        return apply_subst(self.g, self.sigma1), apply_subst(self.g, self.sigma2)

    def to_json(self) -> dict:
        return {"g": {"text": show(self.g), "ast": to_json(self.g)},
                "sigma1": subst_to_json(self.sigma1),
                "sigma2": subst_to_json(self.sigma2),
                "grounded": self.grounded}

    def __str__(self) -> str:
        from ..kernel.syntax import show_subst
        return f"{show(self.g)}  σ1={show_subst(self.sigma1)}  σ2={show_subst(self.sigma2)}"


def check_generalization(w: GenWitness, p: AUP) -> bool:
    if w.g.ty != p.ty:
        raise TypeCheckError(f"generalization has type {show_type(w.g.ty)}, "
                             f"problem has type {show_type(p.ty)}")
    left, right = w.instances()
    return alpha_eq(left, p.left) and alpha_eq(right, p.right)


def find_witness(g: Term, p: AUP, fuel: int = DEFAULT_FUEL):
    """Match ``g`` against both sides.  Returns ``(witness | None, status)``
    where status is "proven", "refuted" or "unknown"."""
    m1 = less_general(g, p.left, fuel)
    if m1.is_refuted:
        return None, "refuted"
    m2 = less_general(g, p.right, fuel)
    if m2.is_refuted:
        return None, "refuted"
    if m1.is_proven and m2.is_proven:
        return GenWitness(g, m1.subst, m2.subst), "proven"
    return None, "unknown"


# ---------------------------------------------------------------- pattern lgg

def pattern_lgg(p: AUP) -> GenWitness:
    """Least general pattern generalization with its (ground) witnesses.

    Same heads are decomposed under aligned binders; a disagreement becomes a
    fresh variable applied to the bound variables that occur in either side,
    and disagreements equal up to a permutation of those variables share one
    variable.
    """
    store: list[tuple[str, list[tuple[str, Type]], Term, Term]] = []
    used: set[str] = set()

    def solve(s, t, ctx):
        rel = [(n, ty) for n, ty in ctx if n in s.loose or n in t.loose]
        for name, vars_, s0, t0 in store:
            if len(vars_) != len(rel):
                continue
            for perm in itertools.permutations(rel):
                if [ty for _, ty in perm] != [ty for _, ty in vars_]:
                    continue
                if alpha_eq(abstract(perm, s), abstract(vars_, s0)) and \
                        alpha_eq(abstract(perm, t), abstract(vars_, t0)):
                    zty = arrow(*[ty for _, ty in vars_], s.ty)
                    return App(Head(FREE, name, zty), tuple(var_term(n, ty) for n, ty in perm))
        name = fresh_free_var("Z", used)
        used.add(name)
        store.append((name, rel, s, t))
        zty = arrow(*[ty for _, ty in rel], s.ty)
        return App(Head(FREE, name, zty), tuple(var_term(n, ty) for n, ty in rel))

    def gen(s, t, ctx):
        if isinstance(s, Abs):
            names = {n for n, _ in ctx}
            var = s.var
            if var in names or (var in t.body.loose and var != t.var):
                var = fresh_bound(names | s.body.names | t.body.names)
            sb = s.body if var == s.var else rename_bound(s.body, s.var, var, s.var_ty)
            tb = t.body if var == t.var else rename_bound(t.body, t.var, var, t.var_ty)
            return Abs(var, s.var_ty, gen(sb, tb, ctx + [(var, s.var_ty)]))
        hs, ht = s.head, t.head
        if (hs.kind, hs.name, hs.ty) == (ht.kind, ht.name, ht.ty) and len(s.args) == len(t.args):
            return App(hs, tuple(gen(a, b, ctx) for a, b in zip(s.args, t.args)))
        return solve(s, t, ctx)

    g = gen(p.left, p.right, [])
    sigma1 = {name: abstract(vars_, s) for name, vars_, s, _ in store}
    sigma2 = {name: abstract(vars_, t) for name, vars_, _, t in store}
    w = GenWitness(g, sigma1, sigma2)
    if not check_generalization(w, p):
        raise WitnessError(f"pattern lgg witness failed for {show(g)}")
    return w


# ---------------------------------------------------------------- grounding

def ground_term(t: Term, sig: Signature) -> Term:
    """Replace every free variable of ``t`` by the canonical constant of its type."""
    fv = free_vars(t)
    if not fv:
        return t
    return apply_subst(t, {n: const_term(sig.canonical(ty), ty) for n, ty in fv.items()})


def ground_witnesses(w: GenWitness, sig: Signature) -> GenWitness:
    """Make every range ground without changing the two instances of ``w.g``.

    Variables of ``g`` that a substitution leaves unbound (they only occur in
    discarded arguments) are bound to canonical constants as well, so that
    every variable has a ground image under both substitutions.
    """
    fv = free_vars(w.g)

    def complete(sigma):
        out = {k: ground_term(v, sig) for k, v in sigma.items()}
        for name, ty in fv.items():
            if name not in out:
                out[name] = ground_term(free_term(name, ty), sig)
        return out

    if w.grounded and all(n in w.sigma1 and n in w.sigma2 for n in fv):
        return w
    before = w.instances()
    out = GenWitness(w.g, complete(w.sigma1), complete(w.sigma2))
    after = out.instances()
    if not (alpha_eq(before[0], after[0]) and alpha_eq(before[1], after[1])):
        raise WitnessError("grounding changed an instance; the witness was not "
                           "a witness for closed terms")
    return out


# ---------------------------------------------------------------- enumeration

def enumerate_generalizations(p: AUP, size_bound: int, var_budget: int,
                              sig: Signature | None = None, max_arity: int = 2,
                              fuel: int = DEFAULT_FUEL) -> list[GenWitness]:
    """Every generalization of ``p`` up to the given size, by brute force.

    Size counts spine nodes plus binders, not counting the binders that the
    problem's type forces at the top.  Free variables take at most
    ``max_arity`` arguments, with argument types drawn from the base types and
    the types of bound variables in scope.  Results are deduplicated up to
    alpha-equivalence and free-variable renaming and sorted by
    ``(size, printed form)``.
    """
    sig = sig or Signature.default()
    seen = set()
    out = []
    for g, size in generate_terms(p.ty, size_bound, var_budget, sig, max_arity):
        key = canonical_key(g, rename_free=True)
        if key in seen:
            continue
        seen.add(key)
        w, status = find_witness(g, p, fuel)
        if status == "proven":
            out.append((size, show(g), w))
    out.sort(key=lambda item: (item[0], item[1]))
    return [w for _, _, w in out]


def generate_terms(ty: Type, size_bound: int, var_budget: int, sig: Signature,
                   max_arity: int = 2) -> Iterator[tuple[Term, int]]:
    """Eta-long terms of type ``ty`` with at most ``size_bound`` nodes (top
    binders excluded) and at most ``var_budget`` free variables, whose names
    are Z, Z1, ... in order of first occurrence."""
    if size_bound <= 0:
        return
    arg_tys, base = split_type(ty)
    top = []
    used = set()
    for aty in arg_tys:
        name = fresh_bound(used)
        used.add(name)
        top.append((name, aty))
    consts = sorted(sig.constants.items())
    bases = sorted(set(sig.base_types()) | {base}, key=show_type)
    for body, size, _ in _gen(base, top, size_bound, {}, var_budget, consts, bases, max_arity):
        yield abstract(top, body), size


def _gen(ty, ctx, budget, fvs, var_budget, consts, bases, max_arity):
    """Yield ``(term, size, fvs')`` for eta-long terms of type ``ty``."""
    if budget <= 0:
        return
    arg_tys, base = split_type(ty)
    if arg_tys:
        names = {n for n, _ in ctx}
        binders = []
        for aty in arg_tys:
            name = fresh_bound(names)
            names.add(name)
            binders.append((name, aty))
        for body, size, fvs2 in _gen(base, ctx + binders, budget - len(binders), fvs,
                                     var_budget, consts, bases, max_arity):
            yield abstract(binders, body), size + len(binders), fvs2
        return
    heads = []
    for name, bty in ctx:
        if split_type(bty)[1] == ty:
            heads.append((Head(BOUND, name, bty), fvs))
    for name, cty in consts:
        if split_type(cty)[1] == ty:
            heads.append((Head(CONST, name, cty), fvs))
    for name, fty in fvs.items():
        if split_type(fty)[1] == ty:
            heads.append((Head(FREE, name, fty), fvs))
    if len(fvs) < var_budget:
        name = fresh_free_var("Z", fvs)
        cands = sorted({b for b in bases} | {t for _, t in ctx}, key=show_type)
        for k in range(max_arity + 1):
            for args in itertools.product(cands, repeat=k):
                fty = arrow(*args, ty)
                heads.append((Head(FREE, name, fty), {**fvs, name: fty}))
    for head, fvs1 in heads:
        sub_tys, _ = split_type(head.ty)
        for args, size, fvs2 in _gen_args(sub_tys, ctx, budget - 1, fvs1, var_budget,
                                          consts, bases, max_arity):
            yield App(head, tuple(args)), size + 1, fvs2


def _gen_args(tys, ctx, budget, fvs, var_budget, consts, bases, max_arity):
    if not tys:
        yield [], 0, fvs
        return
    first, rest = tys[0], tys[1:]
    for a, sa, fvs1 in _gen(first, ctx, budget - len(rest), fvs, var_budget, consts,
                            bases, max_arity):
        for more, sm, fvs2 in _gen_args(rest, ctx, budget - sa, fvs1, var_budget,
                                        consts, bases, max_arity):
            yield [a] + more, sa + sm, fvs2
