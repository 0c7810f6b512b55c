import random

import pytest
from hypothesis import given, settings, strategies as st

from hoau.au.matching import (UNKNOWN, NotAPattern, is_pattern, less_general, match_bounded,
                              pattern_match)
from hoau.kernel import Signature, alpha_eq, apply_subst, free_vars, parse_term
from hoau.random_terms import FIVE_CONSTANTS, TermGen
from strategies import terms

SIG = Signature.parse("f : a->a\ng : a->a->a\nh : (a->a)->a\na : a\nb : a")


def P(text):
    return parse_term(text, SIG)


def test_is_pattern():
    assert is_pattern(P(r"\x:a.\y:a. f(Z(y,x))"))
    assert not is_pattern(P(r"\x:a. Z(x,x)"))
    assert not is_pattern(P(r"\x:a. Z(f(x))"))
    assert is_pattern(P(r"\x:a->a. h(\y:a. Z(x,y))"))


def test_pattern_match_solves_and_verifies():
    r = pattern_match(P(r"\x:a.\y:a. f(Z(y,x))"), P(r"\x:a.\y:a. f(g(x,a))"))
    assert r.is_proven
    assert alpha_eq(r.subst["Z"], P(r"\u:a.\v:a. g(v,a)"))


def test_pattern_match_refutes_escaping_variables():
    assert pattern_match(P(r"\x:a.\y:a. Z(x)"), P(r"\x:a.\y:a. f(y)")).is_refuted
    assert pattern_match(P(r"\x:a. f(Z(x))"), P(r"\x:a. g(x,x)")).is_refuted


def test_pattern_match_rejects_non_patterns():
    with pytest.raises(NotAPattern):
        pattern_match(P(r"\x:a. Z(x,x)"), P(r"\x:a. a"))


def test_bounded_matching_non_pattern_query():
    q = P(r"\x:a.\y:a. f(Y(Y(x,y),Y(x,y)))")
    t = P(r"\x:a.\y:a. f(Y(x,y))")
    assert match_bounded(q, t).is_refuted or not match_bounded(q, t).is_proven
    fwd = match_bounded(t, q)
    assert fwd.is_proven
    assert alpha_eq(apply_subst(t, fwd.subst), q)


def test_bounded_matching_needs_imitation_and_projection():
    q = P(r"\x:a. Z(f(x), x)")
    t = P(r"\x:a. g(f(x), f(f(x)))")
    r = match_bounded(q, t)
    assert r.is_proven
    assert alpha_eq(apply_subst(q, r.subst), t)


def test_type_mismatch_is_refuted():
    assert match_bounded(P("X"), P(r"\x:a. x")).is_refuted


def test_work_budget_gives_unknown():
    q = P(r"\x:a.\y:a. f(Z(Z(x,y),Z(y,x)))")
    t = P(r"\x:a.\y:a. f(g(g(g(x,y),g(y,x)),g(g(y,x),g(x,y))))")
    r = match_bounded(q, t, fuel=8, work=5)
    assert r.outcome == UNKNOWN and "work" in r.reason


def test_less_general_dispatches():
    assert less_general(P(r"\x:a. Z(x)"), P(r"\x:a. f(x)")).is_proven
    assert less_general(P(r"\x:a. Z(x,x)"), P(r"\x:a. g(x,x)")).is_proven


def _random_instance(seed):
    """An open term and a random closed instance of it."""
    rng = random.Random(seed)
    free = {"X": parse_term("X", SIG).ty, "Y": P(r"\x:a. Y(x)").ty, "Z": P(r"\x:a.\y:a. Z(x,y)").ty}
    gen = TermGen(FIVE_CONSTANTS, rng, free)
    q = gen.term(rng.choice([free["X"], free["Y"]]), 3)
    closed = TermGen(FIVE_CONSTANTS, rng)
    sigma = {n: closed.term(ty, 2) for n, ty in free_vars(q).items()}
    return q, apply_subst(q, sigma)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_instances_are_never_refuted(seed):
    q, t = _random_instance(seed)
    r = match_bounded(q, t, fuel=4, work=50_000)
    assert not r.is_refuted
    if r.is_proven:
        assert alpha_eq(apply_subst(q, r.subst), t)
    if is_pattern(q):
        assert pattern_match(q, t).is_proven


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_fuel_is_monotone(seed):
    q, t = _random_instance(seed)
    results = [match_bounded(q, t, fuel=k, work=50_000) for k in range(4)]
    if any("work" in r.reason for r in results):
        return
    first = next((k for k, r in enumerate(results) if r.outcome != UNKNOWN), len(results))
    # once decided, every larger fuel gives the same answer and substitution
    for r in results[first + 1:]:
        assert r.outcome == results[first].outcome
        assert (r.subst or {}).keys() == (results[first].subst or {}).keys()
        for k, v in (r.subst or {}).items():
            assert alpha_eq(v, results[first].subst[k])


@settings(max_examples=100, deadline=None)
@given(terms(free=False))
def test_closed_terms_match_only_themselves(t):
    assert match_bounded(t, t).is_proven
    assert pattern_match(t, t).is_proven
