"""Concrete syntax: parser, printer and the JSON AST.

Grammar (``λ`` may replace ``\\``, ``→`` may replace ``->``)::

    term  := "\\" IDENT ":" type "." term | app
    app   := atom {atom}                 -- juxtaposition, left associative
    atom  := IDENT ["(" term {"," term} ")"] | "(" term ")"
    type  := IDENT | type "->" type | "(" type ")"

Identifiers bound by an enclosing binder are bound variables, declared
constants are constants, any other identifier starting with an uppercase
letter is a free variable.  Free variable types are inferred.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Any, Mapping

from .signature import Signature
from .terms import (BOUND, CONST, FREE, Abs, KernelError, Term,
                    TypeCheckError, apply_normal, const_term, free_term,
                    fresh_bound, rename_bound, var_term)
from .types import Arrow, Base, Type, parse_type, show_type


class ParseError(KernelError, ValueError):
    def __init__(self, message: str, pos: int | None = None):
        self.pos = pos
        super().__init__(f"{message} (at offset {pos})" if pos is not None else message)


class UnknownIdentifier(ParseError):
    pass


# ---------------------------------------------------------------- lexer

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<lam>\\|λ)
  | (?P<arrow>->|→)
  | (?P<punct>[:.,()])
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
""", re.VERBOSE)


@dataclass
class _Tok:
    kind: str
    text: str
    pos: int


def _lex(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        end = m.end()
        if kind == "ident" and m.group().endswith("_") and text.startswith("(", end):
            # type-indexed constant names such as c_(a->a)
            depth, j = 0, end
            while j < len(text):
                depth += {"(": 1, ")": -1}.get(text[j], 0)
                j += 1
                if depth == 0:
                    break
            if depth:
                raise ParseError("unbalanced parentheses in identifier", pos)
            end = j
        if kind != "ws":
            toks.append(_Tok(kind, text[pos:end], pos))
        pos = end
    toks.append(_Tok("eof", "", len(text)))
    return toks


# ---------------------------------------------------------------- parser

class _Parser:
    def __init__(self, text: str):
        self.toks = _lex(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def take(self, kind: str, text: str | None = None) -> _Tok:
        tok = self.tok
        if tok.kind != kind or (text is not None and tok.text != text):
            want = text or kind
            got = tok.text or "end of input"
            raise ParseError(f"expected {want!r}, got {got!r}", tok.pos)
        self.i += 1
        return tok

    def at(self, kind: str, text: str | None = None) -> bool:
        return self.tok.kind == kind and (text is None or self.tok.text == text)

    def term(self):
        if self.at("lam"):
            pos = self.take("lam").pos
            name = self.take("ident").text
            self.take("punct", ":")
            ty = self.type()
            self.take("punct", ".")
            return ("lam", name, ty, self.term(), pos)
        pos = self.tok.pos
        fn = self.atom()
        args = []
        while self.at("ident") or self.at("punct", "(") or self.at("lam"):
            if self.at("lam"):
                args.append(self.term())
                break
            args.append(self.atom())
        return ("app", fn, args, pos) if args else fn

    def atom(self):
        if self.at("punct", "("):
            self.take("punct", "(")
            t = self.term()
            self.take("punct", ")")
            return t
        tok = self.take("ident")
        var = ("var", tok.text, tok.pos, None)
        # call syntax needs the parenthesis directly after the name
        if self.at("punct", "(") and self.tok.pos == tok.pos + len(tok.text):
            self.take("punct", "(")
            args = [self.term()]
            while self.at("punct", ","):
                self.take("punct", ",")
                args.append(self.term())
            self.take("punct", ")")
            return ("app", var, args, tok.pos)
        return var

    def type(self) -> Type:
        left = self.type_atom()
        if self.at("arrow"):
            self.take("arrow")
            return Arrow(left, self.type())
        return left

    def type_atom(self) -> Type:
        if self.at("punct", "("):
            self.take("punct", "(")
            ty = self.type()
            self.take("punct", ")")
            return ty
        return Base(self.take("ident").text)


def _parse_raw(text: str):
    p = _Parser(text)
    raw = p.term()
    if not p.at("eof"):
        raise ParseError(f"unexpected {p.tok.text!r}", p.tok.pos)
    return raw


# ---------------------------------------------------------------- elaboration

class _Meta:
    __slots__ = ("id",)

    def __init__(self, i):
        self.id = i

    def __repr__(self):
        return f"?{self.id}"


class _Elaborator:
    def __init__(self, sig: Signature, free_ctx: Mapping[str, Type] | None):
        self.sig = sig
        self.free: dict[str, Any] = dict(free_ctx or {})
        self.links: dict[int, Any] = {}
        self.n = 0

    def meta(self):
        self.n += 1
        return _Meta(self.n)

    def find(self, ty):
        while isinstance(ty, _Meta) and ty.id in self.links:
            ty = self.links[ty.id]
        return ty

    def occurs(self, m, ty) -> bool:
        ty = self.find(ty)
        if isinstance(ty, _Meta):
            return ty.id == m.id
        if isinstance(ty, Arrow):
            return self.occurs(m, ty.dom) or self.occurs(m, ty.cod)
        return False

    def unify(self, a, b, pos):
        a, b = self.find(a), self.find(b)
        if isinstance(a, _Meta):
            if isinstance(b, _Meta) and a.id == b.id:
                return
            if self.occurs(a, b):
                raise TypeCheckError(f"infinite type at offset {pos}")
            self.links[a.id] = b
        elif isinstance(b, _Meta):
            self.unify(b, a, pos)
        elif isinstance(a, Arrow) and isinstance(b, Arrow):
            self.unify(a.dom, b.dom, pos)
            self.unify(a.cod, b.cod, pos)
        elif a != b:
            raise TypeCheckError(
                f"type mismatch at offset {pos}: {self.show(a)} vs {self.show(b)}")

    def show(self, ty) -> str:
        ty = self.find(ty)
        if isinstance(ty, Arrow):
            dom = self.show(ty.dom)
            if isinstance(self.find(ty.dom), Arrow):
                dom = f"({dom})"
            return f"{dom}->{self.show(ty.cod)}"
        return str(ty)

    def classify(self, name, kind, env):
        if kind is None:
            if name in env:
                return BOUND
            if name in self.sig:
                return CONST
            if name[:1].isupper():
                return FREE
            return None
        return kind

    def infer(self, raw, env):
        tag = raw[0]
        if tag == "var":
            _, name, pos, kind = raw
            kind = self.classify(name, kind, env)
            if kind == BOUND:
                if name not in env:
                    raise UnknownIdentifier(f"unbound variable {name!r}", pos)
                return env[name]
            if kind == CONST:
                ty = self.sig.type_of(name)
                if ty is None:
                    raise UnknownIdentifier(f"undeclared constant {name!r}", pos)
                return ty
            if kind == FREE:
                if name not in self.free:
                    self.free[name] = self.meta()
                return self.free[name]
            raise UnknownIdentifier(f"unknown identifier {name!r}", pos)
        if tag == "lam":
            _, name, ty, body, _ = raw
            return Arrow(ty, self.infer(body, {**env, name: ty}))
        _, fn, args, pos = raw
        fty = self.infer(fn, env)
        for arg in args:
            aty = self.infer(arg, env)
            res = self.meta()
            fty_r = self.find(fty)
            if isinstance(fty_r, Base):
                raise TypeCheckError(f"too many arguments at offset {pos}")
            self.unify(fty, Arrow(aty, res), pos)
            fty = res
        return fty

    def resolve(self, ty, default: Base) -> Type:
        ty = self.find(ty)
        if isinstance(ty, _Meta):
            self.links[ty.id] = default
            return default
        if isinstance(ty, Arrow):
            return Arrow(self.resolve(ty.dom, default), self.resolve(ty.cod, default))
        return ty

    def evaluate(self, raw, env, scope) -> Term:
        tag = raw[0]
        if tag == "var":
            _, name, _, kind = raw
            kind = self.classify(name, kind, env)
            if kind == BOUND:
                return env[name]
            if kind == CONST:
                return const_term(name, self.sig.type_of(name))
            return free_term(name, self.free_types[name])
        if tag == "lam":
            _, name, ty, body, _ = raw
            var = fresh_bound(scope, hint=name)
            inner = self.evaluate(body, {**env, name: var_term(var, ty)}, scope | {var})
            return Abs(var, ty, inner)
        _, fn, args, _ = raw
        return apply_normal(self.evaluate(fn, env, scope),
                            [self.evaluate(a, env, scope) for a in args])

    def run(self, raw, expected: Type | None) -> Term:
        ty = self.infer(raw, {})
        if expected is not None:
            self.unify(ty, expected, 0)
        default = self.sig.default_base()
        self.free_types = {n: self.resolve(t, default) for n, t in self.free.items()}
        return self.evaluate(raw, {}, frozenset())


def parse_term(text: str, sig: Signature | None = None, expected: Type | None = None,
               free_ctx: Mapping[str, Type] | None = None) -> Term:
    """Parse, type-check and normalise ``text`` to eta-long beta-normal form.

    Free variables whose type is not determined by their use default to the
    signature's first base type.
    """
    sig = sig or Signature.default()
    return _Elaborator(sig, free_ctx).run(_parse_raw(text), expected)


def parse_type_text(text: str) -> Type:
    return parse_type(text)


def infer_type(t: Term, bound_ctx: Mapping[str, Type] | None = None,
               free_ctx: Mapping[str, Type] | None = None,
               sig: Signature | None = None) -> Type:
    """Check every leaf of ``t`` against the given contexts and return its type."""
    bound_ctx = dict(bound_ctx or {})
    free_ctx = dict(free_ctx or {})
    sig = sig or Signature.default()

    def check(t, env):
        if isinstance(t, Abs):
            check(t.body, {**env, t.var: t.var_ty})
            return
        h = t.head
        if h.kind == BOUND:
            want = env.get(h.name)
            if want is None:
                raise TypeCheckError(f"unbound variable {h.name}")
        elif h.kind == CONST:
            want = sig.type_of(h.name)
            if want is None:
                raise TypeCheckError(f"undeclared constant {h.name}")
        else:
            want = free_ctx.setdefault(h.name, h.ty)
        if want != h.ty:
            raise TypeCheckError(
                f"{h.name} used at type {show_type(h.ty)}, declared {show_type(want)}")
        for a in t.args:
            check(a, env)

    check(t, bound_ctx)
    return t.ty


# ---------------------------------------------------------------- printer

def show(t: Term) -> str:
    heads = _global_names(t)
    return _show(t, heads, frozenset())


def _global_names(t: Term) -> frozenset:
    if isinstance(t, Abs):
        return _global_names(t.body)
    out = frozenset() if t.head.kind == BOUND else frozenset([t.head.name])
    for a in t.args:
        out |= _global_names(a)
    return out


def _show(t: Term, heads: frozenset, scope: frozenset) -> str:
    if isinstance(t, Abs):
        parts = []
        while isinstance(t, Abs):
            var, body = t.var, t.body
            if var in heads or var in scope:
                new = fresh_bound(heads | scope | body.names)
                body = rename_bound(body, var, new, t.var_ty)
                var = new
            scope = scope | {var}
            parts.append(f"\\{var}:{show_type(t.var_ty)}.")
            t = body
        return "".join(parts) + " " + _show(t, heads, scope)
    if not t.args:
        return t.head.name
    return t.head.name + "(" + ",".join(_show(a, heads, scope) for a in t.args) + ")"


def show_subst(sigma: Mapping[str, Term]) -> str:
    return "{" + ", ".join(f"{k} ↦ {show(v)}" for k, v in sorted(sigma.items())) + "}"


# ---------------------------------------------------------------- JSON

def to_json(t: Term) -> dict:
    if isinstance(t, Abs):
        return {"abs": {"var": t.var, "ty": show_type(t.var_ty), "body": to_json(t.body)}}
    head = {"kind": t.head.kind, "name": t.head.name, "ty": show_type(t.head.ty)}
    return {"app": {"head": head, "args": [to_json(a) for a in t.args]}}


def from_json(obj: Mapping, sig: Signature | None = None) -> Term:
    sig = sig or Signature.default()
    free_ctx: dict[str, Type] = {}

    def raw(o):
        if "abs" in o:
            a = o["abs"]
            return ("lam", a["var"], parse_type(a["ty"]), raw(a["body"]), None)
        if "app" not in o:
            raise ParseError(f"not a term object: {sorted(o)}")
        a = o["app"]
        h = a["head"]
        kind = h["kind"]
        if kind not in (BOUND, FREE, CONST):
            raise ParseError(f"bad head kind {kind!r}")
        if kind == FREE and "ty" in h:
            ty = parse_type(h["ty"])
            if free_ctx.setdefault(h["name"], ty) != ty:
                raise TypeCheckError(f"free variable {h['name']} used at two types")
        head = ("var", h["name"], None, kind)
        args = [raw(x) for x in a.get("args", [])]
        return ("app", head, args, None) if args else head

    return _Elaborator(sig, free_ctx).run(raw(obj), None)


def subst_to_json(sigma: Mapping[str, Term]) -> dict:
    return {k: {"text": show(v), "ast": to_json(v)} for k, v in sorted(sigma.items())}
