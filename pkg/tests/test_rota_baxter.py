from fractions import Fraction

import pytest

from dgsb import Signature, d_power, parse_poly, parse_word
from dgsb.gsb import irr_membership
from dgsb.poly import Poly
from dgsb.rota_baxter import (
    FAMILIES,
    axiom_residues,
    count_by_size,
    default_pool,
    enumerate_basis,
    f_poly,
    irreducible_words,
    is_alternating,
    lifted_identity_rhs,
    rb_normal_form,
    rb_rules,
    rb_signature,
    verify_ambiguity_families,
    verify_lifted_identity,
)
from dgsb.words import RandomTerms, WordEnumerator

from oracles import alternating_counts

LAMS = [Fraction(0), Fraction(1), Fraction(2)]


def W(text, s):
    return parse_word(text, s)


def F(text, s):
    return parse_poly(text, s)


def test_normal_form_examples():
    s = rb_signature(["x", "y"], 2)
    rules = rb_rules(s)
    assert rb_normal_form(F("P(x)P(y)", s), rules) == F("P(x P(y)) + P(P(x) y) + 2 P(x y)", s)
    assert rb_normal_form(F("D(P(x y))", s), rules) == F("x y", s)
    assert rb_normal_form(F("D(x)D(P(y))", s), rules) == F("D(x) y", s)


@pytest.mark.parametrize("lam", LAMS)
def test_normal_forms_land_in_the_basis(lam):
    s = rb_signature(["x", "y"], lam)
    rules = rb_rules(s)
    gen = RandomTerms(s, 31, max_depth=2, max_breadth=3)
    for _ in range(40):
        nf = rb_normal_form(gen.poly(), rules)
        assert all(is_alternating(w) for w in nf)


def test_schema_instances_are_monic():
    s = rb_signature(["x", "y"], 3)
    words = WordEnumerator(s).up_to(3)[:15]
    for u in words:
        for v in words:
            f = f_poly(s, u, v)
            assert f.max_word() == _p(s, u) * _p(s, v)
            assert f.coeff(f.max_word()) == 1


def _p(s, w):
    return parse_word(f"P({w})", s)


def test_lifted_identity_examples():
    s1 = rb_signature(["x", "y"], 1)
    x, y = W("x", s1), W("y", s1)
    rhs, lead = lifted_identity_rhs(s1, x, y, 1)
    assert rhs == F("D(P(x))D(P(y)) - x y", s1)
    assert lead == W("D(P(x))D(P(y))", s1)
    assert verify_lifted_identity(s1, x, y, 1)
    s2 = s1.with_lambda(2)
    assert verify_lifted_identity(s2, W("x", s2), W("y", s2), 2)
    s0 = s1.with_lambda(0)
    rhs, lead = lifted_identity_rhs(s0, W("x", s0), W("y", s0), 1)
    assert rhs == F("D(P(x))P(y) - x P(y)", s0)
    assert verify_lifted_identity(s0, W("x", s0), W("y", s0), 1)
    with pytest.raises(ValueError):
        verify_lifted_identity(s1, x, y, 0)


def test_only_the_right_shape_lies_below_its_leading_word():
    # D f(u, v) is in the ideal, so every claim reduces to 0; the leading-word bound decides
    s = rb_signature(["x", "y"], 1)
    s0 = s.with_lambda(0)
    x, y = W("x", s), W("y", s)
    df = d_power(f_poly(s, x, y), 1, 1)
    rhs, lead = lifted_identity_rhs(s, x, y, 1)
    assert (df - rhs).max_word() < lead
    wrong, wrong_lead = lifted_identity_rhs(s0, W("x", s0), W("y", s0), 1)
    g = df - parse_poly(str(wrong), s)
    assert not g.max_word() < parse_word(str(wrong_lead), s)
    assert not rb_rules(s).reduce(g)


@pytest.mark.parametrize("lam", [Fraction(1), Fraction(0)])
def test_families_pass_on_small_pool(lam):
    s = rb_signature(["x", "y", "z"], lam)
    pool = [W(t, s) for t in ("x", "y", "z")]
    rep = verify_ambiguity_families(s, pool, 2)
    assert rep.ok, "\n".join(rep.lines())
    assert list(rep.families) == [f for f in FAMILIES if f in rep.families]
    assert all(c.instances for c in rep.families.values())
    assert rep.lines()[-1].endswith("status=PASS")


@pytest.mark.parametrize("lam", [Fraction(1), Fraction(0)])
def test_family_counts_on_a_single_word_pool(lam):
    s = rb_signature(["x"], lam)
    rep = verify_ambiguity_families(s, [W("x", s)], 2)
    got = {k: c.instances for k, c in rep.families.items()}
    # two contexts and (i, j) in {0,1,2}^2 give 18; the shapes without a context use j alone
    expected = {"2^2": 18, "2^1": 18, "1^2 left": 18, "1^2 right": 18, "1^2 top left": 2,
                "1^2 top right": 2, "1^1 overlap": 3, "1^1 nested left": 9, "1^1 nested right": 9}
    if not lam:
        del expected["1^2 top right"]
    assert got == expected
    assert rep.ok


def test_mutated_weight_breaks_a_triple_product_family():
    s = rb_signature(["x"], 1)
    rep = verify_ambiguity_families(s, [W("x", s)], 2, weight=2)
    assert not rep.ok
    failed = {r.ambiguity.family for r in rep.failures}
    assert "1^1 overlap" in failed
    assert rep.lines()[-1].endswith("status=FAIL")
    assert len(rep.failure_index) == len(rep.failures)


def test_mutation_stops_at_first_failure():
    s = rb_signature(["x"], 0)
    rep = verify_ambiguity_families(s, [W("x", s)], 2, weight=1, stop_on_failure=True)
    assert len(rep.failures) == 1
    assert sum(c.instances for c in rep.families.values()) == rep.failure_index[0] + 1


def test_basis_small_examples():
    s = rb_signature(["x"], 1)
    assert [str(w) for w in enumerate_basis(s, 2)] == ["x", "D(x)", "x x", "P(x)"]
    assert [str(w) for w in enumerate_basis(s, 1)] == ["x"]
    with pytest.raises(ValueError):
        enumerate_basis(s, 0)


@pytest.mark.parametrize("gens,cap", [(["x"], 6), (["x", "y"], 5)])
def test_basis_equals_irreducibility_filter(gens, cap):
    s = rb_signature(gens, 1)
    basis = enumerate_basis(s, cap)
    assert basis == irreducible_words(s, cap)
    assert len(set(basis)) == len(basis)
    assert count_by_size(basis) == alternating_counts(len(gens), cap)


def test_golden_basis_counts():
    assert count_by_size(enumerate_basis(rb_signature(["x"]), 5)) == {1: 1, 2: 3, 3: 9, 4: 28, 5: 90}
    assert count_by_size(enumerate_basis(rb_signature(["x", "y"]), 5)) == {1: 2, 2: 8, 3: 34, 4: 152, 5: 706}


def test_basis_set_does_not_depend_on_lambda():
    sets = [irreducible_words(rb_signature(["x", "y"], lam), 4) for lam in LAMS]
    assert sets[0] == sets[1] == sets[2]


def test_basis_words_are_alternating_and_irreducible():
    s = rb_signature(["x", "y"], 1)
    rules = rb_rules(s)
    for w in enumerate_basis(s, 5):
        assert is_alternating(w)
        assert irr_membership(w, rules)


def test_alternation_check():
    s = rb_signature(["x"], 1)
    assert is_alternating(W("x P(x) D(x) P(x x)", s))
    assert not is_alternating(W("P(x)P(x)", s))
    assert not is_alternating(W("D(P(x))", s))
    assert not is_alternating(W("x P(x P(x)P(x))", s))


@pytest.mark.parametrize("lam", LAMS)
def test_axioms_hold_on_normal_forms(lam):
    s = rb_signature(["x", "y"], lam)
    rules = rb_rules(s)
    gen = RandomTerms(s, 77, max_depth=1, max_breadth=2)
    for _ in range(25):
        a, b = gen.word(), gen.word()
        assert axiom_residues(s, a, b, rules) == (Poly.zero(),) * 3


def test_default_pool():
    s = rb_signature(["x", "y"], 1)
    assert [str(w) for w in default_pool(s)] == ["x", "y", "x x", "x y", "y x", "y y", "D(x)", "D(y)", "P(x)"]


def test_signature_helper():
    s = rb_signature(["a", "b"], Fraction(1, 2))
    assert s == Signature(["a", "b"], [("P", 1)], Fraction(1, 2))
