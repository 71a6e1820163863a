import random
from fractions import Fraction

import pytest

from dgsb import Signature, parse_poly, parse_word
from dgsb.gsb import (
    INCLUSION,
    INTERSECTION,
    Ambiguity,
    cd_crosscheck,
    check_triviality,
    complete,
    composition,
    find_ambiguities,
    interreduce,
    irr_membership,
)
from dgsb.poly import Poly, poly_mul
from dgsb.rewrite import Rule, RuleSet, StarWord
from dgsb.rota_baxter import f_poly, rb_rules
from dgsb.words import RandomTerms

SIG = Signature(["x", "y", "z", "t"], [("P", 1)], 1)


def W(text, s=SIG):
    return parse_word(text, s, allow_star=True)


def F(text, s=SIG):
    return parse_poly(text, s)


def _key(a):
    return (a.kind, a.f.lead, a.i, a.g.lead, a.j, a.w, a.context)


def rb_instance(s, u, v):
    return Rule(f_poly(s, W(u, s), W(v, s)))


def test_rota_baxter_overlap():
    f, g = rb_instance(SIG, "x", "y"), rb_instance(SIG, "y", "z")
    ambs = [a for a in find_ambiguities(f, g, 1, 0) if a.kind == INTERSECTION]
    assert len(ambs) == 1
    a = ambs[0]
    assert a.w == W("P(x)P(y)P(z)") and a.a == W("P(z)") and a.b == W("P(x)")
    a.validate(1)
    comp = composition(a, 1)
    assert comp == poly_mul(f.body, F("P(z)")) - poly_mul(F("P(x)"), g.body)
    assert comp.max_word() < a.w
    rules = rb_rules(SIG)
    assert check_triviality(a, rules).trivial


def test_disjoint_leads_have_no_ambiguity():
    f, g = Rule(F("x y + -1 * z")), Rule(F("z t + -1 * x"))
    assert [a for a in find_ambiguities(f, g, 1, 0) if a.f is f] == []


def test_inclusion_of_rb_lead_inside_diff_p():
    s = SIG
    g = rb_instance(s, "y", "z")
    f = Rule(F("D(P(x P(y)P(z))) + -1 * x P(y)P(z)"))
    ambs = [a for a in find_ambiguities(f, g, 1, 1) if a.kind == INCLUSION and a.f is f]
    assert any(a.i == 0 and a.j == 0 and a.context == StarWord(W("D(P(x *STAR*))")) for a in ambs)
    rules = rb_rules(s)
    for a in ambs:
        a.validate(1)
        rep = check_triviality(a, rules)
        assert rep.trivial, rep.line()


def test_diff_p_vs_diff_p_inclusion():
    s = SIG
    f = Rule(F("D(P(D(P(x)))) + -1 * D(P(x))"))
    g = Rule(F("D(P(x)) + -1 * x"))
    amb = next(a for a in find_ambiguities(f, g, 1, 0) if a.kind == INCLUSION and a.f is f)
    assert amb.context == StarWord(W("D(P(*STAR*))"))
    comp = composition(amb, 1)
    assert comp == (f.body - amb.context.substitute(g.body, 1))
    # both sides reduce D(P(D(P(x)))) to D(P(x)): the leading words cancel completely
    assert not comp
    assert check_triviality(amb, rb_rules(s)).trivial


def test_identical_self_embedding_is_skipped_and_cancels():
    f = rb_instance(SIG, "x", "y")
    assert not any(a.kind == INCLUSION and a.context.word == W("*STAR*") and a.i == a.j
                   for a in find_ambiguities(f, f, 1, 2))
    amb = Ambiguity(INCLUSION, f, 0, f, 0, f.lead, context=StarWord(W("*STAR*")))
    assert not composition(amb, 1)
    assert check_triviality(amb, rb_rules(SIG)).trivial


def test_nontrivial_ground_overlap():
    s = Signature(["x", "y"], [], 0)
    r = Rule(F("x x + -1 * y", s))
    rs = RuleSet(s, [r], lift_bound=None)
    amb = next(a for a in find_ambiguities(r, r, 0, 0) if a.kind == INTERSECTION)
    assert amb.w == W("x x x", s)
    rep = check_triviality(amb, rs)
    assert not rep.trivial
    assert rep.normal_form == F("x y + -1 * y x", s)
    assert rep.verdict.startswith("NontrivialResidue")
    for st in rep.steps:
        assert st.word < amb.w


def _random_rule(gen):
    while True:
        a, b = gen.word(), gen.word()
        if a == b:
            continue
        if gen.rng.random() < 0.3:
            return Rule(Poly.word(max(a, b)))
        return Rule(Poly.word(max(a, b)) - Poly.word(min(a, b)))


def test_find_ambiguities_is_symmetric():
    gen = RandomTerms(Signature(["x", "y"], [("P", 1)], 1), 2, max_depth=1, max_breadth=3)
    for lam in (Fraction(0), Fraction(2)):
        for _ in range(30):
            f, g = _random_rule(gen), _random_rule(gen)
            ab = {_key(a) for a in find_ambiguities(f, g, lam, 2)}
            ba = {_key(a) for a in find_ambiguities(g, f, lam, 2)}
            assert ab == ba


@pytest.mark.parametrize("lam", [Fraction(0), Fraction(1), Fraction(3)])
def test_compositions_fall_below_the_ambiguity(lam):
    s = Signature(["x", "y"], [("P", 1)], lam)
    gen = RandomTerms(s, 7, max_depth=1, max_breadth=3, max_d=1)
    found = 0
    for _ in range(250):
        f, g = _random_rule(gen), _random_rule(gen)
        for a in find_ambiguities(f, g, lam, 2):
            a.validate(lam)
            comp = composition(a, lam)
            assert not comp or comp.max_word() < a.w
            found += 1
    assert found > 50


def test_empty_composition_is_trivial():
    f = Rule(F("x x"))
    amb = Ambiguity(INTERSECTION, f, 0, f, 0, W("x x x"), a=W("x"), b=W("x"))
    amb.validate(1)
    assert not composition(amb, 1)
    rep = check_triviality(amb, RuleSet(SIG, [f], lift_bound=None))
    assert rep.trivial and rep.verdict == "Trivial"


def test_irr_membership_examples():
    rules = rb_rules(SIG)
    assert irr_membership(W("x P(x) y"), rules)
    assert not irr_membership(W("D(P(x))"), rules)
    assert not irr_membership(W("P(x)P(y)"), rules)
    assert irr_membership(W("D^5(P(x))"), rules, lift_bound=2)


def test_completion_of_empty_set_is_immediate():
    rep = complete(SIG, [], lift_bound=2)
    assert rep.complete and rep.rounds == 1 and rep.rules == []


def test_completion_of_ground_diff_p():
    s = Signature(["x"], [("P", 1)], 1)
    rep = complete(s, [Rule(F("D(P(x)) + -1 * x", s))], lift_bound=2)
    assert rep.complete and rep.added == []


def test_completion_of_one_rota_baxter_instance():
    s = Signature(["x"], [("P", 1)], 1)
    rep = complete(s, [f_poly(s, W("x", s), W("x", s))], lift_bound=1, max_rounds=4)
    # one instance of the first relation is not closed on its own: residues are added
    assert rep.added
    _assert_interreduced(s, rep.rules)
    if rep.complete:
        rs = RuleSet(s, rep.rules, lift_bound=1)
        for a in range(len(rep.rules)):
            for b in range(a, len(rep.rules)):
                for amb in find_ambiguities(rep.rules[a], rep.rules[b], s.lam, 1):
                    assert check_triviality(amb, rs.with_lift_bound(None)).trivial


def test_completion_closes_a_ground_overlap():
    s = Signature(["x", "y"], [], 0)
    rep = complete(s, [F("x x + -1 * y", s)], lift_bound=1)
    assert rep.complete
    assert [str(r) for r in rep.added] == ["y x + -1 * x y"]
    _assert_interreduced(s, rep.rules)
    rs = RuleSet(s, rep.rules, lift_bound=1)
    rng = random.Random(0)
    for w in ["x x x", "y x x", "x y x x", "D(x) x x"]:
        p = F(w, s)
        assert rs.reduce(p, rng=rng) == rs.reduce(p)


def test_completion_budget():
    s = Signature(["x", "y"], [], 1)
    rep = complete(s, [F("x y x + -1 * y", s), F("y y + -1 * x", s)], lift_bound=1, max_rounds=1)
    assert not rep.complete
    assert rep.lines()[0].endswith("status=incomplete")


def _assert_interreduced(s, rules):
    for r in rules:
        others = RuleSet(s, [q for q in rules if q is not r], lift_bound=None)
        for w in r.body:
            assert others.is_irreducible(w), (r, w)


def test_interreduce_rewrites_bodies():
    s = Signature(["x", "y"], [], 0)
    out = interreduce(s, [Rule(F("x x + -1 * y", s)), Rule(F("x x x + -1 * x y", s))])
    # x x x - x y reduces (leftmost) to y x - x y
    assert [str(r) for r in out] == ["x x + -1 * y", "y x + -1 * x y"]
    out = interreduce(s, [Rule(F("x x + -1 * y", s)), Rule(F("x x x + -1 * y x", s))])
    assert [str(r) for r in out] == ["x x + -1 * y"]


def test_cd_crosscheck_passes_for_rota_baxter():
    s = Signature(["x"], [("P", 1)], 1)
    rep = cd_crosscheck(rb_rules(s, lift_bound=3), 5, 3)
    assert rep.ok, "\n".join(rep.lines())
    assert rep.words_checked == 187


def test_cd_crosscheck_catches_dropped_weight_term():
    s = Signature(["x"], [("P", 1)], 1)
    rep = cd_crosscheck(rb_rules(s, weight=0, lift_bound=3), 6, 3, stop_on_failure=True)
    assert not rep.ok
    assert rep.independence_failures
    assert rep.counterexample() == W("D(P(x))D(P(x))", s)


def test_cd_crosscheck_empty_rule_set():
    s = Signature(["x"], [("P", 1)], 1)
    rep = cd_crosscheck(RuleSet(s, (), lift_bound=3), 4, 3)
    assert rep.ok and rep.words_checked == 50 and rep.ideal_checked == 0
