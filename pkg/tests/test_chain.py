import json
import re

import pytest

from hoau.au import pattern_lgg
from hoau.au.matching import match_bounded
from hoau.golden import PI1, PI2, problem, term, witness
from hoau.kernel import alpha_eq, apply_subst, show
from hoau.nullarity import (FREE_HEAD_OCCURRENCE_CASE, ChainTooLarge,
                            Fragment, NotPatternDerived, RefutationFailed, ShapeError,
                            chain_step, generate_chain, mu, refute_chain_step)
from hoau.superpattern import is_superpattern


def count_y(t):
    """Occurrences of Y read off the printed term."""
    return len(re.findall(r"\bY\(", show(t)))


def test_mu_is_the_doubling_substitution():
    y = term(r"\x:a.\y:a. f(Y(x,y))").body.body.args[0].head
    (name, rng), = mu(y).items()
    assert name == "Y" and show(rng) == r"\w1:a.\w2:a. Y(Y(w1,w2),Y(w1,w2))"


def test_one_step():
    w = witness(r"\x:a.\y:a. f(Y(x,y))", {"Y": PI1}, {"Y": PI2})
    out, m = chain_step(w, problem())
    assert show(out.g) == r"\x:a.\y:a. f(Y(Y(x,y),Y(x,y)))"
    assert alpha_eq(apply_subst(w.g, m), out.g)
    assert out.sigma1 == w.sigma1


def test_chain_step_requires_projection_witnesses():
    w = witness(r"\x:a.\y:a. f(Y(x,y))", {"Y": PI2}, {"Y": PI2})
    with pytest.raises(ShapeError):
        chain_step(w, problem())


def test_refutation_evidence():
    big, small = term(r"\x:a.\y:a. f(Y(Y(x,y),Y(x,y)))"), term(r"\x:a.\y:a. f(Y(x,y))")
    ev = refute_chain_step(big, small, fuel=6)
    assert ev.case_tag == FREE_HEAD_OCCURRENCE_CASE
    d = ev.details
    assert [p["result"] for p in d["projections"]] == [r"\x:a.\y:a. f(x)", r"\x:a.\y:a. f(y)"]
    assert d["constant_head"] == {"position": "1.1", "prev_head": "Y", "prev_head_kind": "free"}
    assert (d["n_next"], d["n_prev"]) == (3, 1)
    assert d["reverse_match"] == "refuted"


def test_refutation_fails_in_the_wrong_direction():
    big, small = term(r"\x:a.\y:a. f(Y(Y(x,y),Y(x,y)))"), term(r"\x:a.\y:a. f(Y(x,y))")
    with pytest.raises(RefutationFailed):
        refute_chain_step(small, big)


@pytest.mark.parametrize("frag", list(Fragment))
def test_chain_occurrences_follow_the_substitution(frag):
    p = problem()
    cert = generate_chain(p, pattern_lgg(p), frag, n=3, reverse_fuel=10)
    # mu turns n occurrences into n(n+2): each copy of Y is tripled and the
    # arguments of the inner copies carry the other occurrences twice
    assert [count_y(w.g) for w in cert.elements] == [1, 3, 15, 255]
    assert cert.occurrences() == [1, 3, 15, 255]
    for (m, ev), a, b in zip(cert.step_evidence, cert.elements, cert.elements[1:]):
        assert alpha_eq(apply_subst(a.g, m), b.g)
        assert ev.details["reverse_match"] != "proven"
    if frag == Fragment.LAMBDA_SP:
        assert all(is_superpattern(w.g).is_member for w in cert.elements)
    json.dumps(cert.to_json())


def test_reverse_matching_never_proves_at_fuel_10():
    p = problem()
    cert = generate_chain(p, pattern_lgg(p), n=2)
    for a, b in zip(cert.elements, cert.elements[1:]):
        assert not match_bounded(b.g, a.g, 10).is_proven


def test_chain_tightens_a_decorated_start():
    p = problem()
    cert = generate_chain(p, term(r"\x:a.\y:a. f(Z(R(x),R(y)))"), n=1)
    assert show(cert.tight.g) == r"\x:a.\y:a. f(Z(x,y))"
    assert show(cert.elements[0].g) == r"\x:a.\y:a. f(Y(x,y))"


def test_zero_steps():
    p = problem()
    cert = generate_chain(p, pattern_lgg(p), n=0)
    assert len(cert.elements) == 1 and cert.step_evidence == []


def test_start_must_be_pattern_derived():
    p = problem()
    with pytest.raises(NotPatternDerived):
        generate_chain(p, term(r"\x:a.\y:a. Z(f(x),f(y))"), n=1)


def test_chain_refuses_huge_elements():
    p = problem()
    with pytest.raises(ChainTooLarge):
        generate_chain(p, pattern_lgg(p), n=4)
