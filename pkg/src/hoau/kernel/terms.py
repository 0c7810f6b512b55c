"""Lambda terms in spine form.

A term is either an abstraction ``Abs`` or a spine ``App(head, args)`` whose
head is a bound variable, a free variable or a constant.  Beta-redexes are not
representable, so every ``Term`` is beta-normal by construction; the kernel
keeps terms eta-long as well (``App`` nodes of base type), except for the
output of :func:`eta_reduce`.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Union

from .types import Arrow, Type, split_type, show_type

BOUND, FREE, CONST = "bound", "free", "const"

Position = tuple[int, ...]
Subst = dict  # free-variable name -> Term


class KernelError(Exception):
    pass


class TypeCheckError(KernelError, TypeError):
    pass


class PositionError(KernelError, KeyError):
    pass


@dataclass(frozen=True)
class Head:
    kind: str
    name: str
    ty: Type

    def __post_init__(self):
        if self.kind not in (BOUND, FREE, CONST):
            raise ValueError(f"bad head kind {self.kind!r}")

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Abs:
    var: str
    var_ty: Type
    body: "Term"

    @cached_property
    def ty(self) -> Type:
        return Arrow(self.var_ty, self.body.ty)

    @cached_property
    def loose(self) -> frozenset:
        return self.body.loose - {self.var}

    @cached_property
    def free_names(self) -> frozenset:
        return self.body.free_names

    @cached_property
    def names(self) -> frozenset:
        return self.body.names | {self.var}

    @cached_property
    def size(self) -> int:
        return 1 + self.body.size

    def __str__(self) -> str:
        from .syntax import show
        return show(self)


@dataclass(frozen=True)
class App:
    head: Head
    args: tuple = ()

    def __post_init__(self):
        ty = self.head.ty
        for i, arg in enumerate(self.args):
            if not isinstance(ty, Arrow):
                raise TypeCheckError(
                    f"{self.head.name} applied to {len(self.args)} arguments "
                    f"but has type {show_type(self.head.ty)}")
            if arg.ty != ty.dom:
                raise TypeCheckError(
                    f"argument {i + 1} of {self.head.name} has type "
                    f"{show_type(arg.ty)}, expected {show_type(ty.dom)}")
            ty = ty.cod

    @cached_property
    def ty(self) -> Type:
        ty = self.head.ty
        for _ in self.args:
            ty = ty.cod
        return ty

    @cached_property
    def loose(self) -> frozenset:
        out = frozenset([self.head.name]) if self.head.kind == BOUND else frozenset()
        for a in self.args:
            out |= a.loose
        return out

    @cached_property
    def free_names(self) -> frozenset:
        out = frozenset([self.head.name]) if self.head.kind == FREE else frozenset()
        for a in self.args:
            out |= a.free_names
        return out

    @cached_property
    def names(self) -> frozenset:
        out = frozenset([self.head.name])
        for a in self.args:
            out |= a.names
        return out

    @cached_property
    def size(self) -> int:
        return 1 + sum(a.size for a in self.args)

    def __str__(self) -> str:
        from .syntax import show
        return show(self)


Term = Union[Abs, App]

LAMBDA = "lambda"  # head_of marker for abstractions


# ---------------------------------------------------------------- names

_BOUND_POOL = ("x", "y", "z", "w", "u", "v")


def fresh_bound(avoid: Iterable[str], hint: str | None = None) -> str:
    avoid = set(avoid)
    if hint is not None and hint not in avoid:
        return hint
    for name in _BOUND_POOL:
        if name not in avoid:
            return name
    i = 1
    while True:
        for base in _BOUND_POOL:
            name = f"{base}{i}"
            if name not in avoid:
                return name
        i += 1


def fresh_free_var(hint: str, avoid: Iterable[str], ty: Type | None = None) -> str:
    """``hint`` if unused, else ``hint1``, ``hint2``, ... (first one not in avoid)."""
    avoid = set(avoid)
    if hint not in avoid:
        return hint
    i = 1
    while f"{hint}{i}" in avoid:
        i += 1
    return f"{hint}{i}"


# ---------------------------------------------------------------- construction

def saturate(head: Head, args: Iterable[Term] = (), avoid: Iterable[str] = ()) -> Term:
    """``head(args)`` eta-expanded until it has base type."""
    args = tuple(args)
    ty = head.ty
    for _ in args:
        ty = ty.cod
    extra, _ = split_type(ty)
    if not extra:
        return App(head, args)
    used = set(avoid) | {head.name}
    for a in args:
        used |= a.names
    binders = []
    for bty in extra:
        name = fresh_bound(used)
        used.add(name)
        binders.append((name, bty))
    body = App(head, args + tuple(var_term(n, t) for n, t in binders))
    return abstract(binders, body)


def var_term(name: str, ty: Type) -> Term:
    """The eta-long form of a bound variable."""
    return saturate(Head(BOUND, name, ty), (), avoid=(name,))


def free_term(name: str, ty: Type) -> Term:
    return saturate(Head(FREE, name, ty))


def const_term(name: str, ty: Type) -> Term:
    return saturate(Head(CONST, name, ty))


def abstract(binders: Iterable[tuple[str, Type]], body: Term) -> Term:
    for name, ty in reversed(list(binders)):
        body = Abs(name, ty, body)
    return body


def strip_binders(t: Term) -> tuple[list[tuple[str, Type]], Term]:
    binders = []
    while isinstance(t, Abs):
        binders.append((t.var, t.var_ty))
        t = t.body
    return binders, t


# ---------------------------------------------------------------- hereditary substitution

def hsub(t: Term, x: str, s: Term) -> Term:
    """Replace the loose bound variable ``x`` in ``t`` by the normal term ``s``,
    contracting every redex this creates."""
    if x not in t.loose:
        return t
    if isinstance(t, Abs):
        if _is_eta_var(t, x):
            # an eta-expanded occurrence of x: keep s and its binder names
            return s
        var, body = t.var, t.body
        if var in s.loose:
            new = fresh_bound(s.loose | body.names | {x})
            body = hsub(body, var, var_term(new, t.var_ty))
            var = new
        return Abs(var, t.var_ty, hsub(body, x, s))
    args = tuple(hsub(a, x, s) for a in t.args)
    if t.head.kind == BOUND and t.head.name == x:
        return apply_normal(s, args)
    return App(t.head, args)


def _is_eta_var(t: Term, x: str) -> bool:
    binders = []
    while isinstance(t, Abs):
        binders.append(t.var)
        t = t.body
    if t.head.kind != BOUND or t.head.name != x or len(t.args) != len(binders):
        return False
    if x in binders or len(set(binders)) != len(binders):
        return False
    return all(_is_eta_var(a, b) and a.loose == {b} for a, b in zip(t.args, binders))


def apply_normal(fn: Term, args: Iterable[Term]) -> Term:
    """Normal form of ``fn`` applied to ``args``."""
    for a in args:
        if isinstance(fn, Abs):
            fn = hsub(fn.body, fn.var, a)
        else:
            # eta-short function value (only reachable from eta_reduce output)
            fn = App(fn.head, fn.args + (a,))
    return fn


def rename_bound(t: Term, old: str, new: str, ty: Type) -> Term:
    return hsub(t, old, var_term(new, ty))


# ---------------------------------------------------------------- normal forms

def beta_eta_normalize(t: Term) -> Term:
    """Eta-long beta-normal form.  Idempotent and type preserving."""
    if isinstance(t, Abs):
        return Abs(t.var, t.var_ty, beta_eta_normalize(t.body))
    args = tuple(beta_eta_normalize(a) for a in t.args)
    return saturate(t.head, args, avoid=t.names)


def is_eta_long(t: Term) -> bool:
    if isinstance(t, Abs):
        return is_eta_long(t.body)
    return not isinstance(t.ty, Arrow) and all(is_eta_long(a) for a in t.args)


def eta_reduce(t: Term) -> Term:
    if isinstance(t, App):
        return App(t.head, tuple(eta_reduce(a) for a in t.args))
    body = eta_reduce(t.body)
    if isinstance(body, App) and body.args:
        last = body.args[-1]
        if (isinstance(last, App) and not last.args and last.head.kind == BOUND
                and last.head.name == t.var):
            rest = App(body.head, body.args[:-1])
            if t.var not in rest.loose:
                return rest
    return Abs(t.var, t.var_ty, body)


# ---------------------------------------------------------------- equality

def alpha_eq(t1: Term, t2: Term) -> bool:
    return _alpha(t1, t2, {}, {}, 0)


def _alpha(a, b, m1, m2, depth):
    if isinstance(a, Abs):
        if not isinstance(b, Abs) or a.var_ty != b.var_ty:
            return False
        return _alpha(a.body, b.body, {**m1, a.var: depth}, {**m2, b.var: depth}, depth + 1)
    if not isinstance(b, App):
        return False
    ha, hb = a.head, b.head
    if ha.kind != hb.kind or ha.ty != hb.ty or len(a.args) != len(b.args):
        return False
    if ha.kind == BOUND:
        if m1.get(ha.name, ha.name) != m2.get(hb.name, hb.name):
            return False
        if (ha.name in m1) != (hb.name in m2):
            return False
    elif ha.name != hb.name:
        return False
    return all(_alpha(x, y, m1, m2, depth) for x, y in zip(a.args, b.args))


def canonical_key(t: Term, rename_free: bool = False) -> tuple:
    """Hashable key equal for alpha-equivalent terms (and, with
    ``rename_free``, for terms equal up to a renaming of free variables)."""
    free_map: dict[str, int] = {}

    def go(t, env):
        if isinstance(t, Abs):
            return ("L", t.var_ty, go(t.body, {**env, t.var: len(env)}))
        h = t.head
        if h.kind == BOUND:
            hk = ("b", env[h.name]) if h.name in env else ("b?", h.name)
        elif h.kind == FREE and rename_free:
            hk = ("f", free_map.setdefault(h.name, len(free_map)))
        else:
            hk = (h.kind, h.name)
        return (hk, h.ty, tuple(go(a, env) for a in t.args))

    return go(t, {})


# ---------------------------------------------------------------- positions

def positions(t: Term) -> set[Position]:
    return set(iter_positions(t))


def iter_positions(t: Term, prefix: Position = ()) -> Iterator[Position]:
    """Pre-order, left to right."""
    yield prefix
    if isinstance(t, Abs):
        yield from iter_positions(t.body, prefix + (1,))
    else:
        for i, a in enumerate(t.args, 1):
            yield from iter_positions(a, prefix + (i,))


def subterm_at(t: Term, p: Position) -> Term:
    for i in p:
        if isinstance(t, Abs) and i == 1:
            t = t.body
        elif isinstance(t, App) and 1 <= i <= len(t.args):
            t = t.args[i - 1]
        else:
            raise PositionError(f"invalid position {show_position(p)}")
    return t


def replace_at(t: Term, p: Position, new: Term) -> Term:
    if not p:
        if new.ty != t.ty:
            raise TypeCheckError("replacement changes the type")
        return new
    i, rest = p[0], p[1:]
    if isinstance(t, Abs) and i == 1:
        return Abs(t.var, t.var_ty, replace_at(t.body, rest, new))
    if isinstance(t, App) and 1 <= i <= len(t.args):
        args = list(t.args)
        args[i - 1] = replace_at(args[i - 1], rest, new)
        return App(t.head, tuple(args))
    raise PositionError(f"invalid position {show_position(p)}")


def show_position(p: Position) -> str:
    return ".".join(map(str, p)) if p else "ε"


def parse_position(text: str) -> Position:
    text = text.strip()
    if text in ("", "ε", "e", "eps"):
        return ()
    return tuple(int(part) for part in text.split("."))


def is_prefix(p: Position, q: Position) -> bool:
    """``p < q`` in the position ordering (strict prefix)."""
    return len(p) < len(q) and q[:len(p)] == p


# ---------------------------------------------------------------- inspection

def head_of(t: Term):
    return LAMBDA if isinstance(t, Abs) else t.head


def _head_matches(h, head: Head | str) -> bool:
    if isinstance(head, str):
        return h.name == head
    return h.kind == head.kind and h.name == head.name


def occ(head: Head | str, t: Term) -> int:
    """Occurrences of ``head`` (a Head, or a bare name) as a spine head in ``t``."""
    if isinstance(t, Abs):
        return occ(head, t.body)
    return int(_head_matches(t.head, head)) + sum(occ(head, a) for a in t.args)


def free_vars(t: Term) -> dict[str, Type]:
    out: dict[str, Type] = {}
    for _, h in iter_heads(t):
        if h.kind == FREE:
            out.setdefault(h.name, h.ty)
    return out


def bound_vars(t: Term) -> dict[str, Type]:
    out: dict[str, Type] = {}

    def go(t):
        if isinstance(t, Abs):
            out.setdefault(t.var, t.var_ty)
            go(t.body)
        else:
            for a in t.args:
                go(a)

    go(t)
    return out


def iter_heads(t: Term, prefix: Position = ()) -> Iterator[tuple[Position, Head]]:
    if isinstance(t, Abs):
        yield from iter_heads(t.body, prefix + (1,))
        return
    yield prefix, t.head
    for i, a in enumerate(t.args, 1):
        yield from iter_heads(a, prefix + (i,))


def first_occurrence_order(t: Term) -> list[str]:
    """Free variable names in order of first (pre-order) occurrence."""
    seen: dict[str, None] = {}
    for _, h in iter_heads(t):
        if h.kind == FREE:
            seen.setdefault(h.name)
    return list(seen)


def is_closed(t: Term) -> bool:
    return not t.free_names and not t.loose


# ---------------------------------------------------------------- substitution

def apply_subst(t: Term, sigma: Mapping[str, Term]) -> Term:
    """Simultaneous, capture-avoiding application of ``sigma``; ranges are not
    re-substituted."""
    if not sigma:
        return t
    for name, rng in sigma.items():
        if rng.loose:
            raise KernelError(f"range of {name} has unabstracted bound variables")
    return _subst(t, sigma, {})


def _subst(t, sigma, checked):
    if not (t.free_names & sigma.keys()):
        return t
    if isinstance(t, Abs):
        return Abs(t.var, t.var_ty, _subst(t.body, sigma, checked))
    args = tuple(_subst(a, sigma, checked) for a in t.args)
    h = t.head
    if h.kind == FREE and h.name in sigma:
        rng = sigma[h.name]
        if rng.ty != h.ty:
            raise TypeCheckError(
                f"substitution for {h.name} has type {show_type(rng.ty)}, "
                f"expected {show_type(h.ty)}")
        return apply_normal(rng, args)
    return App(h, args)


def clean_subst(sigma: Mapping[str, Term], types: Mapping[str, Type] | None = None) -> Subst:
    """Drop identity bindings ``X -> X``."""
    out = {}
    for name, rng in sigma.items():
        ty = (types or {}).get(name, rng.ty)
        if alpha_eq(rng, free_term(name, ty)):
            continue
        out[name] = rng
    return out


def compose(first: Mapping[str, Term], then: Mapping[str, Term]) -> Subst:
    """The substitution equal to applying ``first`` and then ``then``."""
    out = {name: apply_subst(rng, then) for name, rng in first.items()}
    for name, rng in then.items():
        out.setdefault(name, rng)
    return out


def projection(ty: Type, i: int) -> Term:
    """``λb1..bk. bi`` at type ``ty`` (1-based ``i``); requires the i-th
    argument type to equal the result type."""
    args, res = split_type(ty)
    if not 1 <= i <= len(args) or args[i - 1] != res:
        raise TypeCheckError(f"no projection {i} at type {show_type(ty)}")
    names = [f"b{j}" for j in range(1, len(args) + 1)]
    return abstract(zip(names, args), var_term(names[i - 1], args[i - 1]))


def projections(ty: Type) -> list[tuple[int, Term]]:
    args, res = split_type(ty)
    return [(i, projection(ty, i)) for i, a in enumerate(args, 1) if a == res]
