"""Command-line front end.

Exit codes: 0 ok, 1 refuted (for example, not a generalization), 2 input
error, 3 undecided within the fuel bound.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

from . import golden
from .au import AUP, GenWitness, check_generalization, find_witness, ground_witnesses
from .au import pattern_lgg
from .au.matching import DEFAULT_FUEL
from .kernel import (KernelError, Signature, beta_eta_normalize, free_vars, parse_term,
                     show, show_position, show_subst, show_type, to_json)
from .nullarity import (Fragment, generate_chain, is_tight,
                        lift_with_bindings, pseudo_pattern_lambda, pseudo_pattern_sp, tighten)
from .random_terms import FIVE_CONSTANTS, random_aups
from .superpattern import is_superpattern

OK, REFUTED, INPUT_ERROR, UNKNOWN = 0, 1, 2, 3


class CliError(Exception):
    pass


def _text(arg: str) -> str:
    """A term argument: literal text, ``-`` for stdin, ``@path`` for a file."""
    if arg == "-":
        return sys.stdin.read().strip()
    if arg.startswith("@"):
        with open(arg[1:], encoding="utf-8") as fh:
            return fh.read().strip()
    return arg


class Ctx:
    def __init__(self, args):
        self.args = args
        self.sig = Signature.load(args.sig) if args.sig else Signature.default()
        self.fuel = args.fuel
        if self.fuel < 0:
            raise CliError("--fuel must be non-negative")

    def term(self, arg: str, **kw):
        return parse_term(_text(arg), self.sig, **kw)

    def problem(self) -> AUP:
        s = self.args.s if getattr(self.args, "s", None) else golden.S
        t = self.args.t if getattr(self.args, "t", None) else golden.T
        return AUP(self.term(s), self.term(t))

    def witness(self, g_text: str, p: AUP) -> GenWitness:
        g = self.term(g_text)
        s1 = self.subst(getattr(self.args, "sigma1", None), g)
        s2 = self.subst(getattr(self.args, "sigma2", None), g)
        if s1 is not None and s2 is not None:
            return GenWitness(g, s1, s2)
        found, status = find_witness(g, p, self.fuel)
        if found is None:
            raise _Verdict(REFUTED if status == "refuted" else UNKNOWN,
                           f"{show(g)} is not a verified generalization ({status})")
        return found

    def subst(self, items, g):
        if not items:
            return None
        fv = free_vars(g)
        out = {}
        for item in items:
            name, sep, rng = item.partition("=")
            name = name.strip()
            if not sep or name not in fv:
                raise CliError(f"bad binding {item!r}: expected NAME=TERM with NAME free in g")
            out[name] = self.term(rng, expected=fv[name])
        return out


class _Verdict(Exception):
    def __init__(self, code: int, message: str, payload: dict | None = None):
        super().__init__(message)
        self.code = code
        self.payload = payload or {}


def emit(args, text: str, payload: dict):
    if args.json:
        print(json.dumps(payload, indent=2, ensure_ascii=False))
    else:
        print(text)


# ---------------------------------------------------------------- commands

def cmd_normalize(ctx: Ctx):
    t = beta_eta_normalize(ctx.term(ctx.args.term))
    emit(ctx.args, show(t), {"term": show(t), "type": show_type(t.ty), "ast": to_json(t)})
    return OK


def cmd_lgg(ctx: Ctx):
    p = ctx.problem()
    w = pattern_lgg(p)
    emit(ctx.args, f"{show(w.g)}\nσ1 = {show_subst(w.sigma1)}\nσ2 = {show_subst(w.sigma2)}",
         w.to_json())
    return OK


def cmd_check_gen(ctx: Ctx):
    p = ctx.problem()
    try:
        w = ctx.witness(ctx.args.g, p)
    except _Verdict as v:
        emit(ctx.args, str(v), {"generalization": False, "reason": str(v)})
        return v.code
    ok = check_generalization(w, p)
    emit(ctx.args, f"{'generalization' if ok else 'not a generalization'}: {w}",
         {"generalization": ok, "witness": w.to_json()})
    return OK if ok else REFUTED


def cmd_superpattern(ctx: Ctx):
    r = is_superpattern(ctx.term(ctx.args.term))
    lines = ["superpattern" if r.is_member else "not a superpattern"]
    lines += [f"  {show_position(pos)}: {code}" for pos, code in r.violations]
    emit(ctx.args, "\n".join(lines), r.to_json())
    return OK if r.is_member else REFUTED


def cmd_tighten(ctx: Ctx):
    p = ctx.problem()
    w = ground_witnesses(ctx.witness(ctx.args.g, p), ctx.sig)
    frag = Fragment.parse(ctx.args.fragment)
    r = tighten(w, p, frag, ctx.fuel, ctx.sig)
    emit(ctx.args, f"{show(r.witness.g)}  [{r.status}, {len(r.steps)} step(s)]", r.to_json())
    return OK if r.status == "Tight" else UNKNOWN


def cmd_lift(ctx: Ctx):
    t = ctx.term(ctx.args.term)
    out, hs = lift_with_bindings(t, ctx.sig)
    fv = free_vars(out)
    lines = [show(out)] + [f"  {h} : {show_type(fv[h])}" for h in hs]
    emit(ctx.args, "\n".join(lines),
         {"term": show(out), "ast": to_json(out),
          "fresh": {h: {"type": show_type(fv[h]), "replaces": show(r)} for h, r in hs.items()}})
    return OK


def cmd_pseudo(ctx: Ctx):
    p = ctx.problem()
    w = ground_witnesses(ctx.witness(ctx.args.g, p), ctx.sig)
    frag = Fragment.parse(ctx.args.fragment)
    r = is_tight(w, p, frag, ctx.fuel, ctx.sig)
    if r.status != "Tight":
        emit(ctx.args, f"{show(w.g)} is not tight ({r.status}); run tighten first",
             {"error": "not tight", "tightness": r.to_json()})
        return REFUTED if r.status == "NotTight" else UNKNOWN
    if frag == Fragment.LAMBDA_SP:
        out = pseudo_pattern_sp(w, p, ctx.sig, ctx.args.delayed)
    else:
        out = pseudo_pattern_lambda(w, p, ctx.args.delayed)
    emit(ctx.args, str(out), out.to_json())
    return OK


def cmd_chain(ctx: Ctx):
    p = ctx.problem()
    frag = Fragment.parse(ctx.args.fragment)
    start = ctx.witness(ctx.args.start, p) if ctx.args.start else pattern_lgg(p)
    if ctx.args.n < 0:
        raise CliError("--n must be non-negative")
    cert = generate_chain(p, start, frag, ctx.args.n, ctx.sig, ctx.fuel,
                          reverse_fuel=ctx.args.reverse_fuel, delayed=ctx.args.delayed)
    occs = cert.occurrences()
    lines = [f"tight: {show(cert.tight.g)}"]
    for i, (w, n) in enumerate(zip(cert.elements, occs)):
        lines.append(f"g{i} (occ {n}): {show(w.g) if w.g.size < 400 else '<' + str(w.g.size) + ' nodes>'}")
    emit(ctx.args, "\n".join(lines), cert.to_json())
    return OK


def cmd_paper_examples(ctx: Ctx):
    t0 = time.perf_counter()
    results = golden.run_all()
    elapsed = time.perf_counter() - t0
    passed = sum(r.ok for r in results)
    lines = [f"{'PASS' if r.ok else 'FAIL'}  {r.name}" + ("" if r.ok else f"\n      {r.detail}")
             for r in results]
    lines.append(f"{passed}/{len(results)} passed in {elapsed:.2f}s")
    emit(ctx.args, "\n".join(lines),
         {"passed": passed, "total": len(results), "seconds": elapsed,
          "cases": [{"name": r.name, "ok": r.ok, "detail": r.detail} for r in results]})
    return OK if passed == len(results) else REFUTED


def cmd_corpus(ctx: Ctx):
    aups = random_aups(ctx.args.count, ctx.args.seed, ctx.args.depth)
    rows = []
    for p in aups:
        w = pattern_lgg(p)
        rows.append({"left": show(p.left), "right": show(p.right), "lgg": show(w.g)})
    emit(ctx.args, "\n".join(f"{r['left']}  ≜  {r['right']}  ⇒  {r['lgg']}" for r in rows),
         {"seed": ctx.args.seed, "signature": FIVE_CONSTANTS.dumps(), "problems": rows})
    return OK


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--sig", default=argparse.SUPPRESS,
                        help="signature file with 'name : type' lines (default f : a->a, a : a)")
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="emit JSON")
    common.add_argument("--fuel", type=int, default=argparse.SUPPRESS,
                        help=f"matching fuel (default {DEFAULT_FUEL})")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                        help="seed for generated corpora (default 0)")

    parser = argparse.ArgumentParser(
        prog="hoau", parents=[common],
        description="Higher-order anti-unification: pattern lgg, superpatterns, "
                    "tightening, lifting and the ascending chain witnessing nullarity.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        sp = sub.add_parser(name, parents=[common], help=help_text, description=help_text)
        sp.set_defaults(func=fn)
        return sp

    def problem_args(sp):
        sp.add_argument("s", nargs="?", help="left term (default \\x:a.\\y:a. f(x))")
        sp.add_argument("t", nargs="?", help="right term (default \\x:a.\\y:a. f(y))")

    def witness_args(sp):
        sp.add_argument("--sigma1", action="append", metavar="NAME=TERM",
                        help="binding of the left witness (repeatable)")
        sp.add_argument("--sigma2", action="append", metavar="NAME=TERM",
                        help="binding of the right witness (repeatable)")

    def fragment_arg(sp):
        sp.add_argument("--fragment", default="lambda", choices=["lambda", "sp"])

    sp = add("normalize", cmd_normalize, "print the eta-long beta-normal form")
    sp.add_argument("term")

    sp = add("lgg", cmd_lgg, "least general pattern generalization with witnesses")
    sp.add_argument("s")
    sp.add_argument("t")

    sp = add("check-gen", cmd_check_gen, "check that g generalizes s and t")
    sp.add_argument("g")
    problem_args(sp)
    witness_args(sp)

    sp = add("superpattern", cmd_superpattern, "superpattern membership report")
    sp.add_argument("term")

    sp = add("tighten", cmd_tighten, "tighten a pattern-derived generalization")
    sp.add_argument("g")
    problem_args(sp)
    witness_args(sp)
    fragment_arg(sp)

    sp = add("lift", cmd_lift, "lift maximal positions below the top constant")
    sp.add_argument("term")

    sp = add("pseudo", cmd_pseudo, "pseudo-pattern of a tight generalization")
    sp.add_argument("g")
    problem_args(sp)
    witness_args(sp)
    fragment_arg(sp)
    sp.add_argument("--delayed", action="store_true",
                    help="replace nested occurrences of Z by the witness images")

    sp = add("chain", cmd_chain, "certified ascending chain of generalizations")
    sp.add_argument("--n", type=int, default=3, help="number of μ steps (default 3)")
    sp.add_argument("--start", help="starting generalization (default: the pattern lgg)")
    sp.add_argument("--reverse-fuel", type=int, default=None,
                    help="also run bounded matching on each reversed step")
    sp.add_argument("--delayed", action="store_true")
    fragment_arg(sp)
    problem_args(sp)

    add("paper-examples", cmd_paper_examples, "recompute every worked example")

    sp = add("corpus", cmd_corpus, "random anti-unification problems and their lggs")
    sp.add_argument("--count", type=int, default=10)
    sp.add_argument("--depth", type=int, default=4)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for name, default in (("sig", None), ("json", False), ("fuel", DEFAULT_FUEL), ("seed", 0)):
        if not hasattr(args, name):
            setattr(args, name, default)
    try:
        ctx = Ctx(args)
        return args.func(ctx)
    except _Verdict as v:
        emit(args, str(v), {"error": str(v), **v.payload})
        return v.code
    except (KernelError, CliError, ValueError, OSError) as e:
        payload = {"error": str(e), "kind": type(e).__name__}
        if getattr(e, "pos", None) is not None:
            payload["position"] = e.pos
        if args.json:
            print(json.dumps(payload, indent=2, ensure_ascii=False))
        else:
            print(f"error: {e}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
