import pytest

from hoau.kernel import Signature, parse_type
from hoau.kernel.types import Base


def test_parse_and_dump():
    sig = Signature.parse("# comment\nf : a->a\n\ng : (a->a)->b\n")
    assert sig.type_of("f") == parse_type("a->a")
    assert Signature.parse(sig.dumps()) == sig
    assert sig.base_types() == [Base("a"), Base("b")]
    assert sig.default_base() == Base("a")


def test_canonical_constants_are_implicit():
    sig = Signature.default()
    assert sig.canonical(parse_type("a")) == "c_a"
    assert sig.canonical(parse_type("a->a")) == "c_(a->a)"
    assert sig.type_of("c_(a->a->a)") == parse_type("a->a->a")
    assert "c_b" in sig and "q" not in sig


@pytest.mark.parametrize("text", ["f a->a", "F : a", ": a"])
def test_rejects_malformed_lines(text):
    with pytest.raises(ValueError):
        Signature.parse(text)


def test_load(tmp_path):
    p = tmp_path / "sig.txt"
    p.write_text("h : (a->a)->a\n")
    assert Signature.load(p).type_of("h") == parse_type("(a->a)->a")
