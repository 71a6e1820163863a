from fractions import Fraction

import pytest

from dgsb import Poly, Signature, SignatureError, Word, parse_poly, parse_word, print_poly, print_word, poly_mul
from dgsb.parsing import ParseError, dump_polys, load_polys
from dgsb.terms import Atom, OpApp, as_rational
from dgsb.words import RandomTerms, WordEnumerator

SIG = Signature(["x", "y", "z", "t"], [("P", 1), ("theta2", 2), ("theta3", 3)], 1)


def W(text):
    return parse_word(text, SIG)


def F(text):
    return parse_poly(text, SIG)


def test_parse_examples():
    w = W("D^2(x)")
    assert w.bre == 1 and w.atoms[0].d == 2 and w.atoms[0].base == SIG.gen("x")
    w = W("P(x y) D(x)")
    assert w.bre == 2
    first, second = w.atoms
    assert first.d == 0 and isinstance(first.base, OpApp) and first.base.args[0] == W("x y")
    assert second.d == 1 and second.base == SIG.gen("x")
    p = F("3/2 * P(x)P(y) + -1 * P(x P(y))")
    assert len(p) == 2
    assert p.coeff(W("P(x)P(y)")) == Fraction(3, 2)
    assert p.coeff(W("P(x P(y))")) == -1


def test_print_examples():
    assert print_word(W("D^2(x)")) == "D^2(x)"
    assert print_poly(F("P(x)P(y) - P(x P(y))")) == "P(x)P(y) + -1 * P(x P(y))"
    assert print_poly(Poly.zero()) == "0"
    assert print_word(W("D^0(x)")) == "x"


def test_poly_mul_examples():
    assert poly_mul(F("x"), F("y")) == F("x y")
    assert poly_mul(F("x + y"), F("z")) == F("x z + y z")
    assert poly_mul(F("2 x"), F("3 y + z")) == F("6 x y + 2 x z")


@pytest.mark.parametrize("text", ["P(x", "x +", "D^(x)", "2 * ", "P()", "x ^ 2", ")"])
def test_syntax_errors_report_position(text):
    with pytest.raises(ParseError) as exc:
        F(text)
    assert "position" in str(exc.value)


@pytest.mark.parametrize("text", ["q", "Q(x)", "P(x, y)", "theta2(x)", "D(x y)", "*STAR*"])
def test_word_errors(text):
    with pytest.raises(ParseError):
        W(text)


def test_d_over_product_only_in_polynomials():
    assert len(F("D(x y)")) == 3


def test_negative_exponent_rejected():
    with pytest.raises(ParseError):
        F("D^-1(x)")


def test_signature_invariants():
    for gens, ops in [(["x", "x"], []), (["x"], [("x", 1)]), (["D"], []), (["x"], [("P", 0)]),
                      (["x"], [("P", 1), ("P", 2)]), ([], [])]:
        with pytest.raises(SignatureError):
            Signature(gens, ops, 0)


def test_signature_text_round_trip(tmp_path):
    text = "gen x y z\nop P 1\nop theta3 3\nlambda 1/2\n"
    sig = Signature.from_text(text)
    assert sig.lam == Fraction(1, 2)
    assert [g.name for g in sig.generators] == ["x", "y", "z"]
    assert Signature.from_text(sig.to_text()) == sig
    path = tmp_path / "s.sig"
    path.write_text(text)
    assert Signature.load(path) == sig
    assert Signature.from_text("gen x\nlambda 0.5\n").lam == Fraction(1, 2)
    with pytest.raises(SignatureError):
        Signature.from_text("gen x\nop P one\n")
    with pytest.raises(SignatureError):
        Signature.from_text("gen x\nlambda half\n")


def test_rationals_are_exact():
    assert as_rational("3/6") == Fraction(1, 2)
    assert as_rational(Fraction(2, 3)) == Fraction(2, 3)
    for bad in [0.5, True]:
        with pytest.raises(TypeError):
            as_rational(bad)


def test_zero_coefficients_dropped():
    p = F("x + y") - F("x")
    assert p == F("y")
    assert not (F("x") - F("x"))
    assert F("0") == Poly.zero()


def test_measures_on_random_words():
    gen = RandomTerms(SIG, 11, max_depth=3)
    for _ in range(300):
        u, v = gen.word(), gen.word()
        assert (u * v).bre == u.bre + v.bre
        assert (u * v).deg == u.deg + v.deg
        wrapped = Word1(u)
        assert wrapped.deg == 1 + u.deg
        assert wrapped.dep == 1 + u.dep
        assert W(print_word(u)) == u


def Word1(u):
    return parse_word(f"P({print_word(u)})", SIG)


def test_depth():
    assert W("x y").dep == 0
    assert W("P(x) y").dep == 1
    assert W("theta2(P(x), y) P(y)").dep == 2


def test_ring_axioms():
    gen = RandomTerms(SIG, 5)
    for _ in range(150):
        a, b, c = gen.poly(), gen.poly(), gen.poly()
        assert poly_mul(poly_mul(a, b), c) == poly_mul(a, poly_mul(b, c))
        assert poly_mul(a, b + c) == poly_mul(a, b) + poly_mul(a, c)
        assert poly_mul(a + b, c) == poly_mul(a, c) + poly_mul(b, c)
        assert a + b == b + a
        assert (a - a) == Poly.zero()


def test_round_trip_deep_terms():
    gen = RandomTerms(SIG, 3, max_depth=4, max_breadth=6)
    for _ in range(200):
        p = gen.poly()
        assert parse_poly(print_poly(p), SIG) == p
        w = gen.word()
        assert print_word(parse_word(print_word(w), SIG)) == print_word(w)


def test_serialization_round_trip():
    gen = RandomTerms(SIG, 9)
    polys = [gen.poly() for _ in range(30)]
    text = dump_polys(polys)
    assert load_polys(text, SIG) == polys
    assert dump_polys(load_polys(text, SIG)) == text


def test_structural_equality_matches_print_equality():
    words = WordEnumerator(Signature(["x", "y"], [("P", 1)], 1)).up_to(4)
    texts = [print_word(w) for w in words]
    assert len(set(texts)) == len(set(words)) == len(words)


def test_empty_word_rejected():
    with pytest.raises(ValueError):
        Word(())


def test_atom_degree():
    a = Atom(3, OpApp(SIG.op("theta2"), (W("P(x)"), W("y"))))
    assert a.deg == 2
    assert Atom(5, SIG.gen("x")).deg == 0
    with pytest.raises(ValueError):
        OpApp(SIG.op("theta2"), (W("x"),))
