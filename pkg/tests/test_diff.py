from fractions import Fraction
from math import comb

import pytest

from dgsb import Signature, d_apply, d_power, d_power_closed, op_apply, parse_poly, parse_word
from dgsb.diff import DExpansionPlan
from dgsb.poly import Poly
from dgsb.words import RandomTerms

from oracles import as_map, d_iter

LAMS = [Fraction(0), Fraction(1), Fraction(-1), Fraction(2), Fraction(1, 2)]


def sig(lam):
    return Signature(["x", "y", "z"], [("P", 1), ("theta2", 2)], lam)


def test_single_atom_increments():
    s = sig(1)
    assert d_apply(parse_poly("x", s), 1) == parse_poly("D(x)", s)
    assert d_apply(parse_poly("D^2(P(x y))", s), 1) == parse_poly("D^3(P(x y))", s)


@pytest.mark.parametrize("lam", LAMS)
def test_two_atom_rule(lam):
    s = sig(lam)
    expected = parse_poly(f"{lam} * D(x)D(y) + D(x) y + x D(y)", s) if lam else parse_poly("D(x) y + x D(y)", s)
    assert d_apply(parse_poly("x y", s), lam) == expected


def test_d_does_not_enter_operator_arguments():
    s = sig(1)
    out = d_apply(parse_poly("P(x y)", s), 1)
    assert out.is_word()
    w = out.as_word()
    assert w.bre == 1 and w.atoms[0].d == 1 and w.atoms[0].base.args[0] == parse_word("x y", s)


def test_closed_form_three_atoms():
    lam = Fraction(3)
    s = sig(lam)
    expected = parse_poly(
        "D(x) y z + x D(y) z + x y D(z)"
        f" + {lam} * D(x)D(y) z + {lam} * D(x) y D(z) + {lam} * x D(y)D(z)"
        f" + {lam * lam} * D(x)D(y)D(z)", s)
    assert d_power_closed(parse_word("x y z", s), 1, lam) == expected


def test_power_zero_is_identity():
    s = sig(2)
    w = parse_word("x P(y) D(z)", s)
    assert d_power_closed(w, 0, 2) == Poly.word(w)
    assert d_power(parse_poly("x + y", s), 0, 2) == parse_poly("x + y", s)


def test_second_power_matches_iteration():
    s = sig(1)
    w = parse_word("x y", s)
    twice = d_apply(d_apply(Poly.word(w), 1), 1)
    assert d_power_closed(w, 2, 1) == twice
    assert as_map(twice) == d_iter(w, 2, 1)


@pytest.mark.parametrize("lam", LAMS)
def test_closed_form_equals_recursion(lam):
    s = sig(lam)
    gen = RandomTerms(s, int(lam * 4) + 17, max_depth=2, max_breadth=5)
    for _ in range(25):
        w = gen.word()
        for i in range(4):
            assert as_map(d_power_closed(w, i, lam)) == d_iter(w, i, lam)


@pytest.mark.parametrize("lam", LAMS)
def test_leibniz_law(lam):
    s = sig(lam)
    gen = RandomTerms(s, 100 + int(lam * 2), max_depth=2)
    for _ in range(60):
        f, g = gen.poly(), gen.poly()
        lhs = d_apply(f * g, lam)
        df, dg = d_apply(f, lam), d_apply(g, lam)
        assert lhs == df * g + f * dg + (df * dg).scale(lam)


def test_lambda_zero_has_one_bump_per_term():
    s = sig(0)
    w = parse_word("x y z x D(y)", s)
    out = d_apply(Poly.word(w), 0)
    assert len(out) == 5
    for word, c in out.items():
        assert c == 1
        assert sum(b.d - a.d for a, b in zip(w.atoms, word.atoms)) == 1


@pytest.mark.parametrize("n", range(1, 7))
def test_expansion_plan_counts(n):
    plan = DExpansionPlan(n, 1)
    tuples = list(plan)
    assert len(tuples) == 2 ** n - 1
    for t in range(1, n + 1):
        assert plan.count(t) == comb(n, t)
        assert sum(1 for idx, _ in tuples if sum(idx) == t) == comb(n, t)
    assert [idx for idx, _ in DExpansionPlan(n, 0)] == [idx for idx, _ in tuples if sum(idx) == 1]
    for idx, weight in DExpansionPlan(n, 3):
        assert weight == 3 ** (sum(idx) - 1)


def test_equal_atoms_merge():
    s = sig(1)
    out = d_apply(parse_poly("x x", s), 1)
    assert out == parse_poly("D(x)D(x) + D(x) x + x D(x)", s)
    out = d_power_closed(parse_word("x x", s), 2, 1)
    assert as_map(out) == d_iter(parse_word("x x", s), 2, 1)


def test_operator_application():
    s = sig(1)
    P = s.op("P")
    assert op_apply(P, [parse_poly("x", s)]) == parse_poly("P(x)", s)
    assert op_apply(P, [parse_poly("x + 2 y", s)]) == parse_poly("P(x) + 2 P(y)", s)
    theta = s.op("theta2")
    got = op_apply(theta, [parse_poly("x + y", s), parse_poly("z", s)])
    assert got == parse_poly("theta2(x, z) + theta2(y, z)", s)
    assert not op_apply(P, [Poly.zero()])
    with pytest.raises(ValueError):
        op_apply(theta, [parse_poly("x", s)])


def test_zero_maps_to_zero():
    assert not d_apply(Poly.zero(), 1)
    assert not d_power(Poly.zero(), 3, 2)
