import pytest

from hoau.golden import H2_TY, MAX_R, SIG, term
from hoau.kernel import Signature, alpha_eq, parse_term, apply_subst, free_vars, parse_type, show, show_position
from hoau.nullarity import ShapeError, core, is_representative, lift, lift_with_bindings, maximal_positions


def test_maximal_positions_of_the_example():
    got = [show_position(q) for q in maximal_positions(term(MAX_R), SIG)]
    assert got == ["1.1.1.1", "1.1.1.3", "1.1.1.4"]


def test_representatives():
    assert is_representative(term(r"\x:a. f(x)"))  # eta-reduces to f
    assert is_representative(term(r"\x:a. a"))
    assert not is_representative(term(r"\x:a. Z(x)"))
    assert not is_representative(term("X"))


def test_lift_replaces_each_maximal_position():
    r = term(MAX_R)
    out, hs = lift_with_bindings(r, SIG)
    assert sorted(hs) == ["H1", "H2", "H3"]
    assert free_vars(out)["H2"] == parse_type(H2_TY)
    # putting the replaced subterms back gives the input
    assert alpha_eq(apply_subst(out, hs), r)


def test_lift_of_a_pattern_changes_nothing():
    g = term(r"\x:a.\y:a. f(Y(x,y))")
    assert alpha_eq(lift(g, SIG), g)


def test_lift_renames_shadowing_binders():
    sig = Signature.parse("f : a->a\nh : (a->a)->a\na : a")
    g = parse_term(r"\x:a. f(Z(h(\x:a. Q(x))))", sig)
    out, hs = lift_with_bindings(g, sig)
    assert alpha_eq(apply_subst(out, hs), g)


def test_core():
    g = term(r"\x:a.\y:a. f(Y(W(x,f(a)),W(f(a),y)))")
    assert show(core(g, SIG)) == "Y(W(x,H1(x,y)),W(H2(x,y),y))"


def test_rejects_terms_without_top_constant():
    with pytest.raises(ShapeError):
        maximal_positions(term(r"\x:a. Z(x)"), SIG)
    with pytest.raises(ShapeError):
        lift(term(r"\x:a. Z(f(x))"), SIG)
