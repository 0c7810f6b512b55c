from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from .types import Base, Type, parse_type, show_type

_CANONICAL = re.compile(r"^c_(?:\((.*)\)|([A-Za-z][A-Za-z0-9_']*))$")


@dataclass
class Signature:
    """Declared constants plus one canonical constant for every type.

    The canonical constant of a base type ``a`` is ``c_a``; of an arrow type
    it is ``c_(<printed type>)``, e.g. ``c_(a->a)``.  Those names need not be
    declared: :meth:`type_of` recognises them.
    """

    constants: dict[str, Type] = field(default_factory=dict)

    @classmethod
    def default(cls) -> "Signature":
        a = Base("a")
        return cls({"f": parse_type("a->a"), "a": a})

    @classmethod
    def parse(cls, text: str) -> "Signature":
        constants = {}
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            name, sep, ty = line.partition(":")
            name = name.strip()
            if not sep or not name:
                raise ValueError(f"signature line {lineno}: expected 'name : type'")
            if name[0].isupper():
                raise ValueError(f"signature line {lineno}: constant {name!r} must not be uppercase")
            constants[name] = parse_type(ty)
        return cls(constants)

    @classmethod
    def load(cls, path: str | Path) -> "Signature":
        return cls.parse(Path(path).read_text(encoding="utf-8"))

    def type_of(self, name: str) -> Type | None:
        if name in self.constants:
            return self.constants[name]
        m = _CANONICAL.match(name)
        if m:
            try:
                return parse_type(m.group(1) or m.group(2))
            except ValueError:
                return None
        return None

    def __contains__(self, name: str) -> bool:
        return self.type_of(name) is not None

    def canonical(self, ty: Type) -> str:
        """The constant standing for ``ty`` during grounding."""
        if isinstance(ty, Base):
            return f"c_{ty.name}"
        return f"c_({show_type(ty)})"

    def base_types(self) -> list[Base]:
        seen: dict[Base, None] = {}

        def walk(ty):
            if isinstance(ty, Base):
                seen.setdefault(ty)
            else:
                walk(ty.dom)
                walk(ty.cod)

        for ty in self.constants.values():
            walk(ty)
        return list(seen)

    def default_base(self) -> Base:
        bases = self.base_types()
        return bases[0] if bases else Base("a")

    def dumps(self) -> str:
        return "".join(f"{n} : {show_type(t)}\n" for n, t in self.constants.items())
