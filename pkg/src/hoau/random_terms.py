"""Seeded generators of well-typed eta-long beta-normal terms."""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .au.generalize import AUP
from .kernel.signature import Signature
from .kernel.terms import (BOUND, CONST, FREE, Abs, App, Head, Term, abstract,
                           fresh_bound, iter_positions, replace_at, subterm_at)
from .kernel.types import Type, parse_type, split_type

FIVE_CONSTANTS = Signature.parse("""
f : a->a
g : a->a->a
h : (a->a)->a
a : a
b : a
""")

TYPES = [parse_type(t) for t in ("a", "a->a", "a->a->a")]


@dataclass
class TermGen:
    sig: Signature = field(default_factory=lambda: FIVE_CONSTANTS)
    rng: random.Random = field(default_factory=random.Random)
    free: dict = field(default_factory=dict)

    def term(self, ty: Type, depth: int, ctx=()) -> Term:
        args, base = split_type(ty)
        if args:
            names = {n for n, _ in ctx}
            binders = []
            for aty in args:
                name = fresh_bound(names)
                names.add(name)
                binders.append((name, aty))
            return abstract(binders, self.term(base, depth, tuple(ctx) + tuple(binders)))
        heads = [Head(BOUND, n, t) for n, t in ctx if split_type(t)[1] == ty]
        heads += [Head(CONST, n, t) for n, t in self.sig.constants.items()
                  if split_type(t)[1] == ty]
        heads += [Head(FREE, n, t) for n, t in self.free.items() if split_type(t)[1] == ty]
        if depth <= 0:
            leaves = [h for h in heads if not split_type(h.ty)[0]]
            heads = leaves or heads
        head = self.rng.choice(heads)
        sub = split_type(head.ty)[0]
        return App(head, tuple(self.term(t, depth - 1, ctx) for t in sub))

    def mutate(self, t: Term, depth: int) -> Term:
        """Replace one random subterm of base type by a fresh random term,
        keeping the binders in scope at that position."""
        positions = [q for q in iter_positions(t) if not isinstance(subterm_at(t, q), Abs)]
        # deeper positions are preferred so that the two sides share structure
        pos = self.rng.choices(positions, weights=[len(q) + 1 for q in positions])[0]
        sub = subterm_at(t, pos)
        return replace_at(t, pos, self.term(sub.ty, max(depth - len(pos) // 2, 0), _scope(t, pos)))

    def aup(self, depth: int = 4) -> AUP:
        ty = self.rng.choice(TYPES)
        left = self.term(ty, depth)
        right = self.term(ty, depth) if self.rng.random() < 0.3 else left
        for _ in range(self.rng.randint(1, 3)):
            right = self.mutate(right, depth)
        return AUP(left, right)


def _scope(t: Term, pos) -> tuple:
    out = []
    for step in pos:
        if isinstance(t, Abs):
            out.append((t.var, t.var_ty))
            t = t.body
        else:
            t = t.args[step - 1]
    return tuple(out)


def random_aups(n: int, seed: int, depth: int = 4) -> list[AUP]:
    gen = TermGen(rng=random.Random(seed))
    return [gen.aup(depth) for _ in range(n)]


def random_open_terms(n: int, seed: int, depth: int = 4) -> list[Term]:
    free = {"X": parse_type("a"), "Y": parse_type("a->a"), "Z": parse_type("a->a->a"),
            "F": parse_type("(a->a)->a")}
    gen = TermGen(rng=random.Random(seed), free=free)
    return [gen.term(gen.rng.choice(TYPES), depth) for _ in range(n)]


def decorate(rng: random.Random, depth: int = 2, max_decorators: int = 3):
    """A random generalization of ``λx.λy.f(x) ≜ λx.λy.f(y)`` built from
    ``λx.λy.f(Z(x,y))`` by wrapping the arguments of ``Z`` in removable
    decorators, together with explicit witnesses.

    A decorator is either ``R(v)`` with ``R ↦ λb.b`` or ``D(v,e)`` / ``D(e,v)``
    with ``D`` bound to the projection that keeps ``v``; ``e`` is drawn from
    ``a, f(a), x, y``.  Decorator names are reused at random, always with the
    same role, so one variable may wrap several arguments.  At least one
    decorator is always injected.
    """
    from .au.generalize import GenWitness
    from .kernel.terms import const_term, projection, var_term

    a = parse_type("a")
    sig = Signature.default()
    f = Head(CONST, "f", sig.constants["f"])
    xs = [var_term("x", a), var_term("y", a)]
    extras = [const_term("a", a), App(f, (const_term("a", a),)), *xs]
    ident = abstract([("b", a)], var_term("b", a))
    ty2 = parse_type("a->a->a")
    roles: dict[str, tuple[str, int]] = {}
    sigma: dict[str, Term] = {}

    def pick():
        if roles and (len(roles) >= max_decorators or rng.random() < 0.4):
            return rng.choice(sorted(roles))
        kind = rng.choice(["R", "D1", "D2"])
        name = f"{kind[0]}{len(roles) + 1}"
        roles[name] = (kind[0], 1 if kind != "D2" else 2)
        sigma[name] = ident if kind == "R" else projection(ty2, roles[name][1])
        return name

    def wrap(t, d):
        if d <= 0 or rng.random() < 0.3:
            return t
        name = pick()
        kind, keep = roles[name]
        inner = wrap(t, d - 1)
        if kind == "R":
            return App(Head(FREE, name, parse_type("a->a")), (inner,))
        e = wrap(rng.choice(extras), d - 1)
        args = (inner, e) if keep == 1 else (e, inner)
        return App(Head(FREE, name, ty2), args)

    zhead = Head(FREE, "Z", ty2)
    args = ()
    while not roles:  # at least one removable variable
        args = tuple(wrap(v, depth) for v in xs)
    body = App(f, (App(zhead, args),))
    g = abstract([("x", a), ("y", a)], body)
    s1 = {**sigma, "Z": projection(ty2, 1)}
    s2 = {**sigma, "Z": projection(ty2, 2)}
    used = {n for n in s1 if n == "Z" or n in roles}
    return GenWitness(g, {k: v for k, v in s1.items() if k in used},
                      {k: v for k, v in s2.items() if k in used})


def decorated_generalizations(n: int, seed: int, depth: int = 2):
    rng = random.Random(seed)
    return [decorate(rng, depth) for _ in range(n)]
