"""Membership in the superpattern fragment.

A term is a superpattern when every free variable is applied to arguments that
eta-reduce either to a bound variable or to a term with a free-variable head,
and the bound-variable arguments of any one application are pairwise distinct.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .kernel.terms import BOUND, FREE, Abs, Position, Term, eta_reduce, show_position

BAD_ARG_HEAD = "BadArgHead"
DUPLICATE_BOUND_ARG = "DuplicateBoundArg"


@dataclass(frozen=True)
class SuperpatternReport:
    violations: tuple[tuple[Position, str], ...] = field(default_factory=tuple)

    @property
    def is_member(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"is_member": self.is_member,
                "violations": [{"position": show_position(p), "reason": r}
                               for p, r in self.violations]}


def _classify(arg: Term) -> tuple[str, str | None]:
    r = eta_reduce(arg)
    if isinstance(r, Abs):
        return "bad", None
    if r.head.kind == BOUND and not r.args:
        return "bound", r.head.name
    if r.head.kind == FREE:
        return "free", None
    return "bad", None


def is_superpattern(t: Term) -> SuperpatternReport:
    violations: list[tuple[Position, str]] = []

    def walk(u: Term, pos: Position):
        if isinstance(u, Abs):
            walk(u.body, pos + (1,))
            return
        if u.head.kind == FREE:
            seen = set()
            for i, a in enumerate(u.args, 1):
                kind, name = _classify(a)
                if kind == "bad":
                    violations.append((pos + (i,), BAD_ARG_HEAD))
                elif kind == "bound":
                    if name in seen:
                        violations.append((pos + (i,), DUPLICATE_BOUND_ARG))
                    seen.add(name)
        for i, a in enumerate(u.args, 1):
            walk(a, pos + (i,))

    walk(t, ())
    violations.sort()
    return SuperpatternReport(tuple(violations))
