import random

import pytest

from hoau.au import GenWitness, WitnessError, check_generalization
from hoau.golden import PI1, PI2, SIG, TIGHT_G, problem, term, witness
from hoau.kernel import App, Head, abstract, alpha_eq, free_vars, parse_type, show, var_term
from hoau.nullarity import (TIGHT, Fragment, ShapeError, is_pattern_derived,
                            is_pseudo_pattern_shape, is_tight, pseudo_pattern_lambda,
                            pseudo_pattern_sp)
from hoau.superpattern import is_superpattern

A = parse_type("a")
A2 = parse_type("a->a->a")


def tight_example():
    return witness(TIGHT_G, {"Z": PI1, "W": PI1}, {"Z": PI2, "W": PI2})


def test_running_example():
    w = witness(r"\x:a.\y:a. f(Z(x,y))", {"Z": PI1}, {"Z": PI2})
    out = pseudo_pattern_lambda(w, problem())
    assert show(out.g) == r"\x:a.\y:a. f(Y(x,y))"
    assert alpha_eq(out.sigma1["Y"], term(PI1)) and alpha_eq(out.sigma2["Y"], term(PI2))
    assert "Z" not in out.sigma1


def test_formal_and_delayed_constructions_differ_on_nested_occurrences():
    p = problem()
    formal = pseudo_pattern_lambda(tight_example(), p)
    delayed = pseudo_pattern_lambda(tight_example(), p, delayed=True)
    assert show(formal.g) == r"\x:a.\y:a. f(Y(W(x,Y(f(a),a)),W(Y(a,f(a)),y)))"
    assert show(delayed.g) == r"\x:a.\y:a. f(Y(W(x,f(a)),W(f(a),y)))"
    for out in (formal, delayed):
        assert check_generalization(out, p) and is_pseudo_pattern_shape(out.g)
        assert is_pattern_derived(out.g, p)


def test_fresh_name_avoids_existing_variables():
    w = witness(r"\x:a.\y:a. f(Z(Y(x,y),y))", {"Z": PI1, "Y": PI1}, {"Z": PI2, "Y": PI2})
    out = pseudo_pattern_lambda(w, problem())
    assert "Y" in free_vars(out.g) and len(free_vars(out.g)) == 2
    assert check_generalization(out, problem())


def test_shape_errors():
    with pytest.raises(ShapeError):
        pseudo_pattern_lambda(witness(r"\x:a.\y:a. f(Z)", {}, {}), problem())
    with pytest.raises(WitnessError):
        pseudo_pattern_lambda(witness(r"\x:a.\y:a. f(Z(x,y))", {"Z": PI1}, {}), problem())


def test_superpattern_version_of_the_example():
    p = problem()
    out = pseudo_pattern_sp(tight_example(), p, SIG, delayed=True)
    assert show(out.g) == r"\x:a.\y:a. f(Y(W(x,H1(x,y)),W(H2(x,y),y)))"
    fa = term(r"\x:a.\y:a. f(a)")
    for sigma in (out.sigma1, out.sigma2):
        assert alpha_eq(sigma["H1"], fa) and alpha_eq(sigma["H2"], fa)
    assert is_superpattern(out.g).is_member and check_generalization(out, p)


def _random_sp_body(rng, depth):
    if depth <= 0 or rng.random() < 0.35:
        return var_term(rng.choice("xy"), A)
    head = Head("free", rng.choice(["Z", "W", "V"]), A2)
    return App(head, (_random_sp_body(rng, depth - 1), _random_sp_body(rng, depth - 1)))


def sp_tight_inputs(n, seed):
    """Rejection-sample superpattern generalizations built from free
    variables over x and y with projection witnesses, keeping the tight ones."""
    rng = random.Random(seed)
    p = problem()
    pis = [term(PI1), term(PI2)]
    f = Head("const", "f", parse_type("a->a"))
    out = []
    while len(out) < n:
        body = _random_sp_body(rng, 4)
        if body.head.kind != "free":
            continue
        g = abstract([("x", A), ("y", A)], App(f, (body,)))
        fv = free_vars(g)
        w = GenWitness(g, {v: rng.choice(pis) for v in fv}, {v: rng.choice(pis) for v in fv})
        if not check_generalization(w, p) or not is_superpattern(g).is_member:
            continue
        if is_tight(w, p, Fragment.LAMBDA_SP).status == TIGHT:
            out.append(w)
    return out


@pytest.mark.parametrize("delayed", [False, True])
def test_random_tight_inputs_give_superpatterns(delayed):
    p = problem()
    inputs = sp_tight_inputs(50, seed=5)
    assert len({show(w.g) for w in inputs}) > 5
    for w in inputs:
        out = pseudo_pattern_sp(w, p, SIG, delayed=delayed)
        assert is_superpattern(out.g).is_member
        assert check_generalization(out, p)
        assert is_pseudo_pattern_shape(out.g)
