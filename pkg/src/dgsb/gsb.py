"""Ambiguities, compositions, triviality, completion and diamond-lemma checks.

All checks are bounded: lifts ``D^i`` of rules are enumerated up to a
``lift_bound`` and words up to a size bound.  A clean result supports, but
cannot certify, the Groebner-Shirshov property; reports carry the bounds.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .order import leading, lifted_leading, monicize
from .poly import Poly, poly_mul
from .rewrite import Rule, RuleSet, StarWord, Step, find_occurrences
from .terms import Q, STAR, Signature, Word
from .words import RandomTerms, WordEnumerator

INTERSECTION = "intersection"
INCLUSION = "inclusion"


@dataclass(frozen=True)
class Ambiguity:
    """A word ``w`` with two leading-word decompositions.

    Intersection: ``w = lead(D^i f) a = b lead(D^j g)``.
    Inclusion: ``w = lead(D^i f) = context|lead(D^j g)``.
    """

    kind: str
    f: Rule
    i: int
    g: Rule
    j: int
    w: Word
    a: Word | None = None
    b: Word | None = None
    context: StarWord | None = None
    family: str = ""

    def swapped(self) -> "Ambiguity":
        if self.kind == INCLUSION:
            raise ValueError("inclusion ambiguities have a fixed orientation")
        return Ambiguity(INTERSECTION, self.g, self.j, self.f, self.i, self.w,
                         a=self.a, b=self.b, family=self.family)

    def validate(self, lam) -> None:
        F = lifted_leading(self.f.lead, self.i, lam)[0]
        G = lifted_leading(self.g.lead, self.j, lam)[0]
        if self.kind == INTERSECTION:
            if not (F * self.a == self.w == self.b * G):
                raise AssertionError(f"bad intersection witness for {self.w}")
            if self.w.bre >= self.f.lead.bre + self.g.lead.bre:
                raise AssertionError(f"intersection {self.w} is not a proper overlap")
        else:
            if F != self.w or self.context.substitute(Poly.word(G), lam) != Poly.word(self.w):
                raise AssertionError(f"bad inclusion witness for {self.w}")

    def describe(self) -> str:
        tag = f"[{self.family}] " if self.family else ""
        return f"{tag}{self.kind} w={self.w} lifts=({self.i},{self.j})"


def _oriented(f: Rule, g: Rule, lam, lift_bound: int, same: bool) -> list[Ambiguity]:
    out = []
    for i in range(lift_bound + 1):
        F = lifted_leading(f.lead, i, lam)[0]
        fa = F.atoms
        for j in range(lift_bound + 1):
            G = lifted_leading(g.lead, j, lam)[0]
            ga = G.atoms
            for k in range(1, min(len(fa), len(ga))):
                if fa[-k:] == ga[:k]:
                    out.append(Ambiguity(INTERSECTION, f, i, g, j, Word(fa + ga[k:]),
                                         a=Word(ga[k:]), b=Word(fa[:-k])))
            for ctx in find_occurrences(F, G):
                if same and i == j and ctx.word.bre == 1 and ctx.word.atoms[0].base is STAR:
                    continue
                out.append(Ambiguity(INCLUSION, f, i, g, j, F, context=ctx))
    return out


def find_ambiguities(f: Rule, g: Rule, lam, lift_bound: int) -> list[Ambiguity]:
    """Every overlap and embedding between lifted leading words of ``f`` and ``g``.

    Both orientations are returned, so the result for ``(g, f)`` is the same set
    with roles exchanged.
    """
    same = f == g
    out = _oriented(f, g, lam, lift_bound, same)
    if not same:
        out += _oriented(g, f, lam, lift_bound, False)
    return out


def composition(amb: Ambiguity, lam) -> Poly:
    """The S-polynomial analogue of the ambiguity; its words are all below ``w``."""
    _, fb = amb.f.lifted(amb.i, lam)
    _, gb = amb.g.lifted(amb.j, lam)
    if amb.kind == INTERSECTION:
        comp = poly_mul(fb, Poly.word(amb.a)) - poly_mul(Poly.word(amb.b), gb)
    else:
        comp = fb - amb.context.substitute(gb, lam)
    if comp and not comp.max_word() < amb.w:
        raise AssertionError(f"leading words failed to cancel at {amb.w}: {comp}")
    return comp


@dataclass
class TrivialityReport:
    ambiguity: Ambiguity
    composition: Poly
    normal_form: Poly
    steps: list[Step] = field(default_factory=list)

    @property
    def trivial(self) -> bool:
        return not self.normal_form

    @property
    def verdict(self) -> str:
        return "Trivial" if self.trivial else f"NontrivialResidue({self.normal_form})"

    def line(self) -> str:
        return f"{self.ambiguity.describe()} verdict={self.verdict}"


def check_triviality(amb: Ambiguity, rules: RuleSet, lift_bound: int | None = None,
                     log: bool = True) -> TrivialityReport:
    """Reduce the composition; trivial iff the normal form is zero.

    The default reduction matches lifts of any height; pass ``lift_bound`` to
    restrict it.
    """
    if rules.lift_bound != lift_bound:
        rules = rules.with_lift_bound(lift_bound)
    comp = composition(amb, rules.lam)
    steps: list[Step] = []
    nf = rules.reduce(comp, trace=steps) if log else rules.reduce(comp)
    report = TrivialityReport(amb, comp, nf, steps)
    if any(not s.word < amb.w for s in steps):
        raise AssertionError(f"reduction of the composition at {amb.w} went above it")
    return report


# -- completion ------------------------------------------------------------------

@dataclass
class CompletionReport:
    rules: list[Rule]
    added: list[Rule]
    rounds: int
    complete: bool
    lift_bound: int

    def lines(self) -> list[str]:
        out = [f"lift_bound={self.lift_bound} rounds={self.rounds} "
               f"status={'fixpoint' if self.complete else 'incomplete'}"]
        out += [f"added: {r}" for r in self.added]
        out += [f"rule: {r}" for r in self.rules]
        return out


def interreduce(sig: Signature, rules: Sequence[Rule]) -> list[Rule]:
    """Make every rule irreducible with respect to the others."""
    work = [r.body for r in rules]
    changed = True
    while changed:
        changed = False
        for k in range(len(work)):
            others = [Rule(monicize(p)) for n, p in enumerate(work) if n != k and p]
            if not work[k]:
                continue
            nf = RuleSet(sig, others, lift_bound=None).reduce(work[k])
            if nf != work[k]:
                work[k] = monicize(nf) if nf else nf
                changed = True
    out: list[Rule] = []
    for p in work:
        if p:
            r = Rule(monicize(p))
            if r not in out:
                out.append(r)
    return sorted(out, key=lambda r: r.lead.key)


def complete(sig: Signature, rules: Iterable[Rule | Poly], lift_bound: int = 2,
             max_rounds: int = 5, max_rules: int = 200) -> CompletionReport:
    """Add monic residues of nontrivial compositions until none remain (ground rules only)."""
    lam = sig.lam
    current = interreduce(sig, [r if isinstance(r, Rule) else Rule(monicize(r)) for r in rules])
    added: list[Rule] = []
    for rnd in range(1, max_rounds + 1):
        new: list[Rule] = []
        rs = RuleSet(sig, current, lift_bound=None)
        for a in range(len(current)):
            for b in range(a, len(current)):
                for amb in find_ambiguities(current[a], current[b], lam, lift_bound):
                    nf = rs.reduce(composition(amb, lam))
                    if nf:
                        r = Rule(monicize(nf))
                        new.append(r)
                        rs = RuleSet(sig, current + new, lift_bound=None)
        if not new:
            return CompletionReport(current, added, rnd, True, lift_bound)
        added.extend(new)
        current = interreduce(sig, current + new)
        if len(current) > max_rules:
            return CompletionReport(current, added, rnd, False, lift_bound)
    return CompletionReport(current, added, max_rounds, False, lift_bound)


def irr_membership(w: Word, rules: RuleSet, lift_bound: int | None = None) -> bool:
    """True iff no lifted leading pattern of the rules occurs in ``w``."""
    if rules.lift_bound != lift_bound:
        rules = rules.with_lift_bound(lift_bound)
    return rules.is_irreducible(w)


# -- diamond-lemma cross-check ------------------------------------------------------

@dataclass
class CDReport:
    size_bound: int
    lift_bound: int | None
    words_checked: int = 0
    span_failures: list[tuple[Word, Poly]] = field(default_factory=list)
    independence_failures: list[tuple[Word, list[Poly]]] = field(default_factory=list)
    ideal_failures: list[tuple[Poly, Word]] = field(default_factory=list)
    ideal_checked: int = 0

    @property
    def ok(self) -> bool:
        return not (self.span_failures or self.independence_failures or self.ideal_failures)

    def counterexample(self) -> Word | None:
        if self.independence_failures:
            return self.independence_failures[0][0]
        if self.span_failures:
            return self.span_failures[0][0]
        return None

    def lines(self) -> list[str]:
        out = [f"size_bound={self.size_bound} lift_bound={self.lift_bound} "
               f"words={self.words_checked} ideal_samples={self.ideal_checked}"]
        out.append(f"span: {'PASS' if not self.span_failures else 'FAIL'}")
        for w, nf in self.span_failures[:3]:
            out.append(f"  {w} -> {nf}")
        out.append(f"independence: {'PASS' if not self.independence_failures else 'FAIL'}")
        for w, nfs in self.independence_failures[:3]:
            out.append(f"  {w} -> " + " | ".join(str(p) for p in nfs))
        out.append(f"ideal-leading: {'PASS' if not self.ideal_failures else 'FAIL'}")
        for p, w in self.ideal_failures[:3]:
            out.append(f"  {p} has irreducible leading word {w}")
        return out


def _ideal_samples(rules: RuleSet, words: Sequence[Word], rng: random.Random,
                   count: int, lift_bound: int) -> Iterable[Poly]:
    lam = rules.lam
    gen = RandomTerms(rules.sig, rng, max_depth=1, max_breadth=2, max_d=1)
    small = [w for w in words if w.size <= 3] or list(words)
    families = list(rules.rules) + list(rules.schemas)
    # differences of two eliminations of the same word
    multi = [w for w in words if len(rules.matches(w)) >= 2]
    for _ in range(count // 2):
        if not multi:
            break
        w = rng.choice(multi)
        m1, m2 = rng.sample(rules.matches(w), 2)
        p1 = Step(w, Q(1), m1).subtracted(lam)
        p2 = Step(w, Q(1), m2).subtracted(lam)
        yield p1 - p2
    # random combinations of normal s-words
    for _ in range(count - count // 2):
        acc = Poly.zero()
        for _ in range(rng.randint(1, 3)):
            fam = rng.choice(families)
            rule = fam if isinstance(fam, Rule) else fam.random_instance(rng, small)
            _, body = rule.lifted(rng.randint(0, lift_bound), lam)
            ctx = gen.star_word()
            acc = acc + ctx.substitute(body, lam).scale(gen.coef())
        yield acc


def cd_crosscheck(rules: RuleSet, size_bound: int, lift_bound: int | None = 3, *,
                  seed: int = 0, strategies: int = 3, ideal_samples: int = 60,
                  stop_on_failure: bool = False) -> CDReport:
    """Desk-scale checks of the three equivalent diamond-lemma conditions.

    * span: every word up to ``size_bound`` reduces to irreducible words;
    * independence: randomized reduction strategies agree on every normal form;
    * ideal-leading: sampled ideal elements have a reducible leading word.
    """
    rs = rules.with_lift_bound(lift_bound)
    report = CDReport(size_bound, lift_bound)
    words = WordEnumerator(rules.sig).up_to(size_bound)
    rngs = [random.Random(seed * 1000 + k) for k in range(strategies)]
    for w in words:
        report.words_checked += 1
        p = Poly.word(w)
        nf = rs.reduce(p)
        bad = [m for m in nf if not rs.is_irreducible(m)]
        if bad:
            report.span_failures.append((w, nf))
        others = [rs.reduce(p, rng=r) for r in rngs]
        if any(o != nf for o in others):
            report.independence_failures.append((w, [nf] + others))
            if stop_on_failure:
                return report
    if rs and ideal_samples:
        rng = random.Random(seed)
        check = rs.with_lift_bound(None)
        bound = 2 if lift_bound is None else lift_bound
        sample_words = [w for w in words if w.size <= min(size_bound, 5)]
        for elem in _ideal_samples(rs, sample_words, rng, ideal_samples, bound):
            report.ideal_checked += 1
            if elem:
                top, _ = leading(elem)
                if check.is_irreducible(top):
                    report.ideal_failures.append((elem, top))
    return report
