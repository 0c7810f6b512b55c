import random

import pytest

from hoau.au import (AUP, GenWitness, WitnessError, check_generalization,
                     enumerate_generalizations, find_witness, generate_terms,
                     ground_witnesses, pattern_lgg)
from hoau.au.matching import is_pattern, pattern_match
from hoau.kernel import (Signature, TypeCheckError, alpha_eq, canonical_key, free_vars,
                         parse_term, parse_type, show)
from hoau.random_terms import TermGen

SIG = Signature.parse("f : a->a\ng : a->a->a\na : a\nb : a")


def P(text, **kw):
    return parse_term(text, SIG, **kw)


def test_aup_requires_closed_terms_of_one_type():
    with pytest.raises(ValueError):
        AUP(P("X"), P("a"))
    with pytest.raises(TypeCheckError):
        AUP(P("a"), P(r"\x:a. x"))


def test_lgg_of_the_running_example():
    p = AUP(P(r"\x:a.\y:a. f(x)"), P(r"\x:a.\y:a. f(y)"))
    w = pattern_lgg(p)
    assert show(w.g) == r"\x:a.\y:a. f(Z(x,y))"
    assert alpha_eq(w.sigma1["Z"], P(r"\u:a.\v:a. u"))
    assert alpha_eq(w.sigma2["Z"], P(r"\u:a.\v:a. v"))
    assert w.grounded and check_generalization(w, p)


def test_lgg_shares_variables_up_to_permutation():
    p = AUP(P(r"\x:a.\y:a. g(g(x,y),g(y,x))"), P(r"\x:a.\y:a. g(a,a)"))
    w = pattern_lgg(p)
    assert show(w.g) == r"\x:a.\y:a. g(Z(x,y),Z(y,x))"


def test_lgg_only_abstracts_relevant_binders():
    p = AUP(P(r"\x:a.\y:a. g(x,a)"), P(r"\x:a.\y:a. g(x,b)"))
    assert show(pattern_lgg(p).g) == r"\x:a.\y:a. g(x,Z)"


def test_find_witness_statuses():
    p = AUP(P(r"\x:a.\y:a. f(x)"), P(r"\x:a.\y:a. f(y)"))
    w, status = find_witness(P(r"\x:a.\y:a. f(Z(Z(x,y),W(x,y)))"), p)
    assert status == "proven" and check_generalization(w, p)
    assert find_witness(P(r"\x:a.\y:a. f(f(Z(x,y)))"), p) == (None, "refuted")


def test_check_generalization_rejects_wrong_type():
    p = AUP(P("a"), P("b"))
    with pytest.raises(TypeCheckError):
        check_generalization(GenWitness(P(r"\x:a. x")), p)


def test_ground_witnesses_replaces_free_ranges():
    p = AUP(P(r"\x:a. f(x)"), P(r"\x:a. f(x)"))
    g = P(r"\x:a. f(V(x,Z(x)))")
    pi1 = P(r"\u:a.\v:a. u")
    # Z sits in an argument that V throws away, so its range may stay open
    w = GenWitness(g, {"V": pi1, "Z": P(r"\u:a. W(u)")}, {"V": pi1, "Z": P(r"\u:a. a")})
    assert not w.grounded and check_generalization(w, p)
    out = ground_witnesses(w, SIG)
    assert show(out.sigma1["Z"]) == r"\u:a. c_(a->a)(u)"
    assert out.grounded and check_generalization(out, p)


def test_ground_witnesses_binds_discarded_variables():
    p = AUP(P(r"\x:a. f(x)"), P(r"\x:a. f(x)"))
    w, _ = find_witness(P(r"\x:a. f(Z(x, W))"), p)
    out = ground_witnesses(w, SIG)
    assert "W" in out.sigma1 and "W" in out.sigma2
    assert check_generalization(out, p)


def test_ground_witnesses_refuses_to_change_instances():
    w = GenWitness(P("Z"), {"Z": P("W")}, {"Z": P("a")})
    with pytest.raises(WitnessError):
        ground_witnesses(w, SIG)


def test_generate_terms_respects_bounds():
    out = list(generate_terms(parse_type("a->a"), 3, 1, SIG))
    assert all(size <= 3 for _, size in out)
    assert all(len(free_vars(t)) <= 1 for t, _ in out)
    keys = {canonical_key(t) for t, _ in out}
    assert canonical_key(P(r"\x:a. f(Z(x))")) in keys
    assert canonical_key(P(r"\x:a. g(x,x)")) in keys


def test_enumeration_is_sorted_deduplicated_and_verified():
    p = AUP(P(r"\x:a. f(x)"), P(r"\x:a. f(a)"))
    out = enumerate_generalizations(p, 4, 1, SIG)
    texts = [show(w.g) for w in out]
    assert texts[0] == r"\x:a. Z(x)"
    assert r"\x:a. f(Z(x))" in texts
    assert len({canonical_key(w.g, rename_free=True) for w in out}) == len(out)
    assert all(check_generalization(w, p) for w in out)
    # the term that drops x entirely cannot reach the left side
    assert r"\x:a. Z" not in texts


def _small_aups(n, seed):
    rng = random.Random(seed)
    gen = TermGen(SIG, rng)
    types = [parse_type(t) for t in ("a", "a->a", "a->a->a")]
    out = []
    for _ in range(n):
        left = gen.term(rng.choice(types), 2)
        out.append(AUP(left, gen.mutate(left, 2)))
    return out


@pytest.mark.parametrize("p", _small_aups(20, 3), ids=lambda p: f"{show(p.left)}|{show(p.right)}")
def test_lgg_is_least_among_enumerated_patterns(p):
    """Brute force every pattern of size <= 5 that generalizes both sides and
    check that each one is more general than the computed lgg."""
    w = pattern_lgg(p)
    assert is_pattern(w.g) and check_generalization(w, p)
    found = [g for g, _ in generate_terms(p.ty, 5, 2, SIG)
             if is_pattern(g) and pattern_match(g, p.left).is_proven
             and pattern_match(g, p.right).is_proven]
    assert found
    for g in found:
        assert pattern_match(g, w.g).is_proven, show(g)


def test_enumeration_edge_cases():
    p = AUP(P("a"), P("a"))
    assert enumerate_generalizations(p, 0, 1, SIG) == []
    assert sorted(show(w.g) for w in enumerate_generalizations(p, 1, 1, SIG)) == ["Z", "a"]


def test_enumeration_of_the_running_problem():
    p = AUP(P(r"\x:a.\y:a. f(x)"), P(r"\x:a.\y:a. f(y)"))
    texts = {show(w.g) for w in enumerate_generalizations(p, 5, 2, Signature.default())}
    assert r"\x:a.\y:a. f(Z(x,y))" in texts
    assert r"\x:a.\y:a. f(x)" not in texts
    # a nullary variable cannot produce the bound x, so it generalizes neither side
    assert r"\x:a.\y:a. Z" not in texts
