"""Maximal positions, lifting and the core of a pseudo-pattern."""
from __future__ import annotations

from ..kernel.signature import Signature
from ..kernel.terms import (CONST, FREE, Abs, App, Head, Position, Term, abstract,
                            eta_reduce, fresh_bound, rename_bound, saturate, strip_binders,
                            subterm_at, var_term)
from ..kernel.types import arrow
from .tight import ShapeError, split_top


def is_representative(t: Term) -> bool:
    """The eta-reduced head is a constant or an abstraction."""
    r = eta_reduce(t)
    return isinstance(r, Abs) or r.head.kind == CONST


def _maximal_in(t: Term, pos: Position, out: list):
    if is_representative(t):
        out.append(pos)
        return
    if isinstance(t, Abs):
        _maximal_in(t.body, pos + (1,), out)
        return
    for i, a in enumerate(t.args, 1):
        _maximal_in(a, pos + (i,), out)


def maximal_positions(r: Term, sig: Signature | None = None, binders=None) -> list[Position]:
    """Outermost positions inside the arguments of the top constant of
    ``λw̄. c(r̄)`` whose subterm is representative, in lexicographic order.

    Positions are absolute in ``r``.  ``binders`` defaults to the leading
    binders of ``r``.
    """
    ws, body = strip_binders(r)
    if binders is not None and [n for n, _ in ws] != list(binders):
        raise ShapeError("binder list does not match the term's leading binders")
    if isinstance(body, Abs) or body.head.kind != CONST:
        raise ShapeError("maximal positions are taken below a top constant")
    prefix = (1,) * len(ws)
    out: list[Position] = []
    for i, a in enumerate(body.args, 1):
        _maximal_in(a, prefix + (i,), out)
    return sorted(out)


def lift_with_bindings(t: Term, sig: Signature | None = None, prefix: str = "H"):
    """Lift ``t`` and return ``(lifted, {H_k: λw̄. replaced subterm})``."""
    ws, body = strip_binders(t)
    if isinstance(body, Abs) or body.head.kind != CONST:
        raise ShapeError("lifting needs a term of the shape λw̄. c(r̄)")
    targets = set(maximal_positions(t, sig))
    wnames = {n for n, _ in ws}
    used = set(t.names)
    counter = [0]
    bindings: dict[str, Term] = {}

    def fresh():
        while True:
            counter[0] += 1
            name = f"{prefix}{counter[0]}"
            if name not in used:
                used.add(name)
                return name

    def walk(u: Term, pos: Position) -> Term:
        if pos in targets:
            name = fresh()
            hty = arrow(*[ty for _, ty in ws], u.ty)
            bindings[name] = abstract(ws, u)
            return saturate(Head(FREE, name, hty), [var_term(n, ty) for n, ty in ws])
        if isinstance(u, Abs):
            var, inner = u.var, u.body
            if var in wnames:
                # an inner binder shadowing w̄ would capture H(w̄)
                new = fresh_bound(wnames | used | inner.names)
                inner = rename_bound(inner, var, new, u.var_ty)
                var = new
            return Abs(var, u.var_ty, walk(inner, pos + (1,)))
        return App(u.head, tuple(walk(a, pos + (i,)) for i, a in enumerate(u.args, 1)))

    prefix_pos = (1,) * len(ws)
    new_body = App(body.head, tuple(walk(a, prefix_pos + (i,))
                                    for i, a in enumerate(body.args, 1)))
    return abstract(ws, new_body), bindings


def lift(t: Term, sig: Signature | None = None) -> Term:
    return lift_with_bindings(t, sig)[0]


def core(g: Term, sig: Signature | None = None) -> Term:
    """The lifted argument of the top constant of a pseudo-pattern."""
    split_top(g)
    ws, _ = strip_binders(g)
    return subterm_at(lift(g, sig), (1,) * len(ws) + (1,))
