"""Simple types over named base types."""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union


@dataclass(frozen=True)
class Base:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Arrow:
    dom: "Type"
    cod: "Type"

    def __str__(self) -> str:
        return show_type(self)


Type = Union[Base, Arrow]


def arrow(*tys: Type) -> Type:
    """Right-nested arrow: ``arrow(a, b, c)`` is ``a -> b -> c``."""
    if not tys:
        raise ValueError("arrow() needs at least one type")
    result = tys[-1]
    for ty in reversed(tys[:-1]):
        result = Arrow(ty, result)
    return result


def split_type(ty: Type) -> tuple[list[Type], Base]:
    """View ``g1 -> ... -> gm -> a`` as ``([g1, ..., gm], a)``."""
    args = []
    while isinstance(ty, Arrow):
        args.append(ty.dom)
        ty = ty.cod
    return args, ty


def arity(ty: Type) -> int:
    return len(split_type(ty)[0])


def target(ty: Type) -> Base:
    return split_type(ty)[1]


def show_type(ty: Type) -> str:
    if isinstance(ty, Base):
        return ty.name
    dom = show_type(ty.dom)
    if isinstance(ty.dom, Arrow):
        dom = "(" + dom + ")"
    return dom + "->" + show_type(ty.cod)


_TYPE_TOKEN = re.compile(r"\s*(->|→|\(|\)|[A-Za-z_][A-Za-z0-9_']*)")


def parse_type(text: str) -> Type:
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TYPE_TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"bad type syntax at offset {pos}: {text!r}")
        tok = m.group(1)
        tokens.append("->" if tok == "→" else tok)
        pos = m.end()

    def parse(i):
        left, i = atom(i)
        if i < len(tokens) and tokens[i] == "->":
            right, i = parse(i + 1)
            return Arrow(left, right), i
        return left, i

    def atom(i):
        if i >= len(tokens):
            raise ValueError(f"unexpected end of type: {text!r}")
        tok = tokens[i]
        if tok == "(":
            ty, i = parse(i + 1)
            if i >= len(tokens) or tokens[i] != ")":
                raise ValueError(f"unbalanced parentheses in type: {text!r}")
            return ty, i + 1
        if tok in ("->", ")"):
            raise ValueError(f"unexpected {tok!r} in type: {text!r}")
        return Base(tok), i + 1

    ty, i = parse(0)
    if i != len(tokens):
        raise ValueError(f"trailing input in type: {text!r}")
    return ty
