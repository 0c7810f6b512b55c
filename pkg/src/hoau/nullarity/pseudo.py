"""Pseudo-patterns: generalizations of the shape ``λx̄. f(Y(r1, r2))`` whose two
witnesses send ``Y`` to the left and right projection."""
from __future__ import annotations

from ..au.generalize import AUP, GenWitness, WitnessError, check_generalization
from ..kernel.signature import Signature
from ..kernel.syntax import show
from ..kernel.terms import (FREE, Abs, App, Head, Term, abstract, apply_normal,
                            apply_subst, clean_subst, free_vars, fresh_free_var,
                            projection, strip_binders, var_term)
from ..kernel.types import arrow, split_type
from ..superpattern import is_superpattern
from .lifting import lift_with_bindings
from .tight import ShapeError, check_head_shape, split_top


def _binders_for(ty):
    args, _ = split_type(ty)
    return [(f"b{i}", a) for i, a in enumerate(args, 1)]


def pseudo_pattern_lambda(w: GenWitness, p: AUP, delayed: bool = False,
                          name: str = "Y") -> GenWitness:
    """The pseudo-pattern of a tight ``λx̄. f(Z(s̄))``.

    By default ``Z`` is replaced everywhere by ``λb̄. Y(r1(b̄), r2(b̄))`` where
    ``ri`` is the image of ``Z`` under the i-th witness.  With ``delayed`` the
    argument of ``f`` becomes ``Y(u1, u2)`` with ``ui`` that argument under
    ``{Z ↦ ri}`` alone, which is the form used in the worked example for
    nested occurrences of ``Z``.
    """
    shape = check_head_shape(w.g)
    if shape is None:
        raise ShapeError(f"{show(w.g)} is not of the shape λx̄. f(Z(s̄)) with m > 0")
    z, _ = shape
    if z not in w.sigma1 or z not in w.sigma2:
        raise WitnessError(f"the witness pair does not bind {z}")
    r1, r2 = w.sigma1[z], w.sigma2[z]
    zty = free_vars(w.g)[z]
    _, alpha = split_type(zty)
    y = fresh_free_var(name, w.g.names | set(w.sigma1) | set(w.sigma2))
    yty = arrow(alpha, alpha, alpha)
    yhead = Head(FREE, y, yty)
    ws, top, arg = split_top(w.g)
    if delayed:
        u1 = apply_subst(arg, {z: r1})
        u2 = apply_subst(arg, {z: r2})
        g2 = abstract(ws, App(top, (App(yhead, (u1, u2)),)))
    else:
        bs = _binders_for(zty)
        bvars = [var_term(n, t) for n, t in bs]
        theta = {z: abstract(bs, App(yhead, (apply_normal(r1, bvars),
                                              apply_normal(r2, bvars))))}
        g2 = apply_subst(w.g, theta)
    fv = free_vars(g2)
    s1 = {k: v for k, v in w.sigma1.items() if k != z}
    s2 = {k: v for k, v in w.sigma2.items() if k != z}
    s1[y] = projection(yty, 1)
    s2[y] = projection(yty, 2)
    out = GenWitness(g2, clean_subst(s1, fv), clean_subst(s2, fv))
    if not check_generalization(out, p):
        raise WitnessError(f"pseudo-pattern {show(g2)} does not generalize the problem")
    if not is_pseudo_pattern_shape(out.g):
        raise ShapeError(f"pseudo-pattern {show(g2)} lost the λx̄. f(Y(r1,r2)) shape")
    return out


def is_pseudo_pattern_shape(g: Term) -> bool:
    try:
        _, _, r = split_top(g)
    except ShapeError:
        return False
    if isinstance(r, Abs) or r.head.kind != FREE or len(r.args) != 2:
        return False
    a, b = r.args
    return not isinstance(a, Abs) and not isinstance(b, Abs) and a.ty == b.ty == r.ty


def pseudo_pattern_sp(w: GenWitness, p: AUP, sig: Signature | None = None,
                      delayed: bool = False, name: str = "Y") -> GenWitness:
    """Lift the Λ pseudo-pattern so every constant and abstraction below the
    top constant becomes ``H_k(x̄)``; the witnesses send ``H_k`` to the
    subterm it replaced, instantiated by the Λ witnesses."""
    base = pseudo_pattern_lambda(w, p, delayed, name)
    lifted, hs = lift_with_bindings(base.g, sig)
    ws, _ = strip_binders(lifted)
    _, top, core = split_top(lifted)
    rname = fresh_free_var("R", lifted.names)
    rty = arrow(*[t for _, t in ws], core.ty)
    template = abstract(ws, App(top, (App(Head(FREE, rname, rty),
                                           tuple(var_term(n, t) for n, t in ws)),)))
    g2 = apply_subst(template, {rname: abstract(ws, core)})
    fv = free_vars(g2)
    s1 = dict(base.sigma1)
    s2 = dict(base.sigma2)
    for h, rng in hs.items():
        s1[h] = apply_subst(rng, base.sigma1)
        s2[h] = apply_subst(rng, base.sigma2)
    out = GenWitness(g2, clean_subst(s1, fv), clean_subst(s2, fv))
    if not check_generalization(out, p):
        raise WitnessError(f"lifted pseudo-pattern {show(g2)} does not generalize the problem")
    report = is_superpattern(g2)
    if not report.is_member:
        raise ShapeError(f"lifted pseudo-pattern {show(g2)} is not a superpattern: "
                         f"{report.violations}")
    return out
