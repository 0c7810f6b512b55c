import json

import pytest
from hypothesis import given, settings

from hoau.kernel import Signature, TypeCheckError, alpha_eq, parse_term, parse_type, show
from hoau.kernel.syntax import (ParseError, UnknownIdentifier, from_json, infer_type,
                                show_subst, subst_to_json, to_json)
from hoau.random_terms import FIVE_CONSTANTS
from strategies import terms

SIG = Signature.parse("f : a->a\ng : a->a->a\nh : (a->a)->a\na : a")


@pytest.mark.parametrize("text", [
    r"\x:a.\y:a. f(Z(x,y))",
    r"\x:a. h(\y:a. g(x,y))",
    "F(\\x:a. f(x))",
    "c_(a->a)(a)",
])
def test_print_parse_round_trip(text):
    t = parse_term(text, SIG)
    assert show(t) == text
    assert alpha_eq(parse_term(show(t), SIG), t)


def test_unicode_lambda_and_juxtaposition():
    t1 = parse_term("λx:a.λy:a. g x y", SIG)
    t2 = parse_term(r"\x:a.\y:a. g(x,y)", SIG)
    assert alpha_eq(t1, t2)


def test_free_variable_types_are_inferred():
    t = parse_term(r"\x:a. Z(W(x), x)", SIG)
    assert t.body.head.ty == parse_type("a->a->a")
    assert t.body.args[0].head.ty == parse_type("a->a")


def test_unconstrained_free_variable_defaults_to_base():
    assert parse_term("X", SIG).ty == parse_type("a")


def test_expected_type_fixes_free_variable():
    t = parse_term("F", SIG, expected=parse_type("a->a"))
    assert show(t) == r"\x:a. F(x)"


@pytest.mark.parametrize("text,err", [
    ("q(a)", UnknownIdentifier),
    (r"\x:a. f(x", ParseError),
    ("f(a,a)", TypeCheckError),
    ("g(f)", TypeCheckError),
    (r"\x:a. Z(x, Z)", TypeCheckError),
])
def test_rejects_bad_input(text, err):
    with pytest.raises(err):
        parse_term(text, SIG)


def test_infer_type_checks_signature():
    t = parse_term(r"\x:a. g(x,a)", SIG)
    assert infer_type(t, sig=SIG) == parse_type("a->a")
    with pytest.raises(TypeCheckError):
        infer_type(t)  # the default signature has no g


def test_show_renames_binders_that_clash_with_free_names():
    t = parse_term(r"\Z:a. W(Z)", SIG)
    assert alpha_eq(parse_term(show(t), SIG), t)


def test_json_round_trip_and_subst():
    t = parse_term(r"\x:a. h(\y:a. G(x,y))", SIG)
    obj = json.loads(json.dumps(to_json(t)))
    assert alpha_eq(from_json(obj, SIG), t)
    sigma = {"Z": parse_term(r"\x:a. f(x)", SIG)}
    assert subst_to_json(sigma)["Z"]["text"] == r"\x:a. f(x)"
    assert show_subst(sigma) == r"{Z ↦ \x:a. f(x)}"


def test_json_rejects_bad_head_kind():
    with pytest.raises(ParseError):
        from_json({"app": {"head": {"kind": "meta", "name": "q"}, "args": []}})


@settings(max_examples=200, deadline=None)
@given(terms())
def test_round_trips_on_random_terms(t):
    assert alpha_eq(parse_term(show(t), FIVE_CONSTANTS), t)
    assert alpha_eq(from_json(to_json(t), FIVE_CONSTANTS), t)
