"""Differential Rota-Baxter rules: ambiguity families, lifted identities and the word basis.

The rule set consists of two schemas over all words ``u, v``::

    f(u, v) = P(u)P(v) - P(u P(v)) - P(P(u) v) - lam P(u v)
    g(u)    = D(P(u)) - u

Its irreducible words are the alternating products of D-words and bare
``P``-atoms, built recursively through ``P`` arguments.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Sequence

from .diff import clear_caches, d_power
from .gsb import INCLUSION, INTERSECTION, Ambiguity, check_triviality
from .order import lifted_leading
from .poly import Poly
from .rewrite import DiffPSchema, RotaBaxterSchema, RuleSet, StarWord, paused_gc
from .terms import Q, STAR, Atom, OpApp, Signature, Word, make_opapp
from .words import WordEnumerator


def rb_signature(generators: Sequence[str] = ("x",), lam=1, op_name: str = "P") -> Signature:
    return Signature(list(generators), [(op_name, 1)], lam)


def rb_rules(sig: Signature, *, weight=None, lift_bound: int | None = None,
             op_name: str = "P") -> RuleSet:
    """Both schemas; ``weight`` replaces the ``P(u v)`` coefficient (default ``lam``)."""
    return RuleSet(sig, (), [RotaBaxterSchema(sig, op_name, weight), DiffPSchema(sig, op_name)],
                   lift_bound=lift_bound)


def rb_normal_form(p: Poly, rules: RuleSet) -> Poly:
    return rules.reduce(p)


def f_poly(sig: Signature, u: Word, v: Word, op_name: str = "P") -> Poly:
    return RotaBaxterSchema(sig, op_name).body(u, v)


# -- lifted identity for the Rota-Baxter rule ------------------------------------

def _p(sig: Signature, w: Word, d: int = 0, op_name: str = "P") -> Word:
    return Word.of(make_opapp(sig.op(op_name), (w,)), d)


def lifted_identity_rhs(sig: Signature, u: Word, v: Word, j: int) -> tuple[Poly, Word]:
    """The claimed congruent form of ``D^j f(u, v)`` and its leading word."""
    lam = sig.lam
    du = d_power(Poly.word(u), j - 1, lam)
    if lam:
        lead = _p(sig, u, j) * _p(sig, v, j)
        low = du * d_power(Poly.word(v), j - 1, lam)
        return (Poly.word(lead) - low).scale(lam ** j), lead
    lead = _p(sig, u, j) * _p(sig, v)
    return Poly.word(lead) - du * Poly.word(_p(sig, v)), lead


def verify_lifted_identity(sig: Signature, u: Word, v: Word, j: int,
                           rules: RuleSet | None = None) -> bool:
    """``D^j f(u, v)`` minus the claimed form lies below its leading word and reduces to 0."""
    if j < 1:
        raise ValueError("the lifted identity needs j >= 1")
    rules = rules or rb_rules(sig)
    lam = sig.lam
    rhs, lead = lifted_identity_rhs(sig, u, v, j)
    g = d_power(f_poly(sig, u, v), j, lam) - rhs
    below = all(w < lead for w in g)
    return below and not rules.reduce(g)


# -- ambiguity families ----------------------------------------------------------

FAMILIES = ("2^2", "2^1", "1^2 left", "1^2 right", "1^2 top left", "1^2 top right",
            "1^1 overlap", "1^1 nested left", "1^1 nested right")


@dataclass
class FamilyCount:
    instances: int = 0
    trivial: int = 0


@dataclass
class FamilyReport:
    lam: Q
    lift_bound: int
    pool: list[Word]
    contexts: list[StarWord]
    nested_contexts: list[StarWord]
    families: dict[str, FamilyCount] = field(default_factory=dict)
    failures: list = field(default_factory=list)
    failure_index: list[int] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def lines(self) -> list[str]:
        out = [f"lambda={self.lam} lift_bound={self.lift_bound} pool_size={len(self.pool)} "
               f"contexts={len(self.contexts)} nested_contexts={len(self.nested_contexts)}",
               "pool: " + ", ".join(str(w) for w in self.pool),
               "contexts: " + ", ".join(str(c) for c in self.contexts),
               "nested contexts: " + ", ".join(str(c) for c in self.nested_contexts)]
        for name, c in self.families.items():
            out.append(f"{name}: {c.trivial}/{c.instances} trivial")
        for rep in self.failures[:5]:
            out.append(f"FAIL {rep.line()}")
        total = sum(c.instances for c in self.families.values())
        out.append(f"summary: instances={total} nontrivial={len(self.failures)} "
                   f"status={'PASS' if self.ok else 'FAIL'}")
        return out


def default_pool(sig: Signature) -> list[Word]:
    """Operator-free words of size at most 2, plus ``P`` of the first generator."""
    pool = WordEnumerator(sig, with_operators=False).up_to(2)
    return pool + [_p(sig, Word.of(sig.generators[0]))]


def default_contexts(sig: Signature, op_name: str = "P", extended: bool = False) -> list[StarWord]:
    """Bare placeholder and ``P(*)``; ``extended`` adds ``* x`` and ``x *``."""
    star = Atom(0, STAR)
    words = [Word((star,)), Word.of(OpApp(sig.op(op_name), (Word((star,)),)))]
    if extended:
        x = Atom(0, sig.generators[0])
        words += [Word((star, x)), Word((x, star))]
    return [StarWord(w) for w in words]


def default_nested_contexts(sig: Signature) -> list[StarWord]:
    return [StarWord(Word((Atom(0, STAR),)))]


class _Families:
    def __init__(self, sig: Signature, rules: RuleSet):
        self.sig = sig
        self.lam = sig.lam
        rb, dp = rules.schemas
        self.rb = rb
        self.dp = dp

    def p(self, w: Word, d: int = 0) -> Word:
        return Word.of(make_opapp(self.rb.op, (w,)), d)

    def rb_lead(self, u: Word, v: Word, j: int) -> Word:
        return lifted_leading(self.p(u) * self.p(v), j, self.lam)[0]

    def plug(self, ctx: StarWord, w: Word) -> Word:
        return ctx.substitute(Poly.word(w), self.lam).as_word()

    def lifted_ctx(self, word_with_star: Word, j: int) -> StarWord:
        return StarWord(lifted_leading(word_with_star, j, self.lam)[0])

    def generate(self, pool, ctxs, L, nested_ctxs=None) -> Iterator[Ambiguity]:
        nested_ctxs = ctxs if nested_ctxs is None else nested_ctxs
        lam = self.lam
        rb, dp = self.rb, self.dp
        R = range(L + 1)
        # rule 2 inside the argument of a lifted rule 2
        for u in ctxs:
            for v in pool:
                for j in R:
                    G = self.p(v, j + 1)
                    U = self.plug(u, G)
                    for i in R:
                        w = self.p(U, i + 1)
                        yield Ambiguity(INCLUSION, dp.instance(U), i, dp.instance(v), j, w,
                                        context=StarWord(self.p(u.word, i + 1)), family="2^2")
        # rule 1 inside the argument of a lifted rule 2
        for u in ctxs:
            for v in pool:
                for w2 in pool:
                    for j in R:
                        U = self.plug(u, self.rb_lead(v, w2, j))
                        for i in R:
                            yield Ambiguity(INCLUSION, dp.instance(U), i, rb.instance(v, w2), j,
                                            self.p(U, i + 1),
                                            context=StarWord(self.p(u.word, i + 1)), family="2^1")
        # rule 2 inside an argument of a lifted rule 1
        for u in ctxs:
            for v in pool:
                for i in R:
                    U = self.plug(u, self.p(v, i + 1))
                    for w2 in pool:
                        for j in R:
                            yield Ambiguity(INCLUSION, rb.instance(U, w2), j, dp.instance(v), i,
                                            self.rb_lead(U, w2, j),
                                            context=self.lifted_ctx(self.p(u.word) * self.p(w2), j),
                                            family="1^2 left")
                            yield Ambiguity(INCLUSION, rb.instance(w2, U), j, dp.instance(v), i,
                                            self.rb_lead(w2, U, j),
                                            context=self.lifted_ctx(self.p(w2) * self.p(u.word), j),
                                            family="1^2 right")
        # rule 2 lead as one atom of the lifted rule 1 lead
        star = Atom(0, STAR)
        for u in pool:
            for v in pool:
                for j in R:
                    if j == 0:
                        continue
                    F = self.rb_lead(u, v, j)
                    yield Ambiguity(INCLUSION, rb.instance(u, v), j, dp.instance(u), j - 1, F,
                                    context=StarWord(Word((star,) + F.atoms[1:])),
                                    family="1^2 top left")
                    if lam:
                        yield Ambiguity(INCLUSION, rb.instance(u, v), j, dp.instance(v), j - 1, F,
                                        context=StarWord(Word(F.atoms[:1] + (star,))),
                                        family="1^2 top right")
        # overlapping rule 1 leads
        for u in pool:
            for v in pool:
                for w2 in pool:
                    for j in R:
                        F = self.rb_lead(u, v, j)
                        jg = j if lam else 0
                        G = self.rb_lead(v, w2, jg)
                        a, b = Word(G.atoms[1:]), Word(F.atoms[:1])
                        yield Ambiguity(INTERSECTION, rb.instance(u, v), j, rb.instance(v, w2), jg,
                                        F * a, a=a, b=b, family="1^1 overlap")
        # rule 1 inside an argument of a lifted rule 1
        for u in nested_ctxs:
            for v in pool:
                for w2 in pool:
                    for i in R:
                        U = self.plug(u, self.rb_lead(v, w2, i))
                        for v2 in pool:
                            for j in R:
                                yield Ambiguity(INCLUSION, rb.instance(U, v2), j,
                                                rb.instance(v, w2), i, self.rb_lead(U, v2, j),
                                                context=self.lifted_ctx(self.p(u.word) * self.p(v2), j),
                                                family="1^1 nested left")
                                yield Ambiguity(INCLUSION, rb.instance(v2, U), j,
                                                rb.instance(v, w2), i, self.rb_lead(v2, U, j),
                                                context=self.lifted_ctx(self.p(v2) * self.p(u.word), j),
                                                family="1^1 nested right")


def rb_ambiguities(sig: Signature, pool: Sequence[Word], contexts: Sequence[StarWord],
                   lift_bound: int, rules: RuleSet | None = None,
                   nested_contexts: Sequence[StarWord] | None = None) -> Iterator[Ambiguity]:
    """Every listed ambiguity shape instantiated over the pool.

    ``contexts`` place the inner leading word inside an argument; the shapes
    with three pool words use ``nested_contexts`` (default: ``contexts``).
    """
    rules = rules or rb_rules(sig)
    nested = None if nested_contexts is None else list(nested_contexts)
    return _Families(sig, rules).generate(list(pool), list(contexts), lift_bound, nested)


def verify_ambiguity_families(sig: Signature, pool: Sequence[Word] | None = None,
                              lift_bound: int = 2, *,
                              contexts: Sequence[StarWord] | None = None,
                              nested_contexts: Sequence[StarWord] | None = None,
                              weight=None, stop_on_failure: bool = False,
                              validate: bool = True,
                              select: Callable[[int], bool] | None = None) -> FamilyReport:
    """Reduce the composition of every listed ambiguity shape over the pool.

    ``select`` keeps only the instances whose running index it accepts; the
    CLI uses it for sharding and sampling.
    """
    pool = list(pool) if pool is not None else default_pool(sig)
    contexts = list(contexts) if contexts is not None else default_contexts(sig)
    if nested_contexts is None:
        nested_contexts = default_nested_contexts(sig)
    rules = rb_rules(sig, weight=weight, lift_bound=None)
    report = FamilyReport(sig.lam, lift_bound, pool, contexts, list(nested_contexts))
    with paused_gc():
        ambs = rb_ambiguities(sig, pool, contexts, lift_bound, rules, nested_contexts)
        for idx, amb in enumerate(ambs):
            if select is not None and not select(idx):
                continue
            if validate:
                amb.validate(sig.lam)
            count = report.families.setdefault(amb.family, FamilyCount())
            count.instances += 1
            rep = check_triviality(amb, rules, None, log=False)
            if rep.trivial:
                count.trivial += 1
            else:
                report.failures.append(rep)
                report.failure_index.append(idx)
                if stop_on_failure:
                    break
    clear_caches()
    return report


# -- basis enumeration ---------------------------------------------------------------

class BasisEnumerator:
    """Alternating products of D-words and ``P``-atoms, by size."""

    def __init__(self, sig: Signature, op_name: str = "P"):
        self.sig = sig
        self.op = sig.op(op_name)
        self._atoms: dict = {}
        self._seqs: dict = {}

    def atoms(self, m: int) -> list[tuple[Atom, bool]]:
        """Allowed atoms of size ``m``, flagged True for ``P``-atoms."""
        if m not in self._atoms:
            out = [(Atom(m - 1, g), False) for g in self.sig.generators]
            if m >= 2:
                out += [(Atom(0, OpApp(self.op, (w,))), True) for w in self.words(m - 1)]
            self._atoms[m] = out
        return self._atoms[m]

    def seqs(self, n: int, after_p: bool) -> list[tuple[Atom, ...]]:
        key = (n, after_p)
        if key in self._seqs:
            return self._seqs[key]
        out = []
        for m in range(1, n + 1):
            for a, is_p in self.atoms(m):
                if is_p and after_p:
                    continue
                if m == n:
                    out.append((a,))
                else:
                    out.extend((a,) + t for t in self.seqs(n - m, is_p))
        self._seqs[key] = out
        return out

    def words(self, n: int) -> list[Word]:
        return [Word(t) for t in self.seqs(n, False)]

    def up_to(self, cap: int) -> list[Word]:
        return sorted((w for n in range(1, cap + 1) for w in self.words(n)),
                      key=lambda w: (w.size, w.key))


def enumerate_basis(sig: Signature, size_cap: int, op_name: str = "P") -> list[Word]:
    if size_cap < 1:
        raise ValueError("size_cap must be at least 1")
    return BasisEnumerator(sig, op_name).up_to(size_cap)


def irreducible_words(sig: Signature, size_cap: int, rules: RuleSet | None = None) -> list[Word]:
    """Brute-force filter of all words by reducibility; the oracle for :func:`enumerate_basis`."""
    rules = rules or rb_rules(sig)
    with paused_gc():
        words = WordEnumerator(sig).up_to(size_cap)
        return sorted((w for w in words if rules.is_irreducible(w)), key=lambda w: (w.size, w.key))


def count_by_size(words: Iterable[Word]) -> dict[int, int]:
    return dict(sorted(Counter(w.size for w in words).items()))


def is_alternating(w: Word, op_name: str = "P") -> bool:
    """No differentiated ``P``-atom and no adjacent ``P``-atoms, at any depth."""
    prev_p = False
    for a in w.atoms:
        is_p = isinstance(a.base, OpApp)
        if is_p:
            if a.base.op.name != op_name or a.d or prev_p:
                return False
            if not all(is_alternating(arg, op_name) for arg in a.base.args):
                return False
        prev_p = is_p
    return True


def axiom_residues(sig: Signature, a: Word, b: Word, rules: RuleSet) -> tuple[Poly, Poly, Poly]:
    """Normal forms of the three defining relations at ``(a, b)``; all zero in the quotient."""
    lam = sig.lam
    pa, pb = Poly.word(a), Poly.word(b)
    rb = f_poly(sig, a, b)
    da, db = d_power(pa, 1, lam), d_power(pb, 1, lam)
    leib = d_power(pa * pb, 1, lam) - (da * pb + pa * db + (da * db).scale(lam))
    dp = Poly.word(_p(sig, a, 1)) - pa
    return rules.reduce(rb), rules.reduce(leib), rules.reduce(dp)


__all__ = [
    "FAMILIES", "BasisEnumerator", "FamilyCount", "FamilyReport", "axiom_residues", "count_by_size",
    "default_contexts", "default_nested_contexts", "default_pool", "enumerate_basis", "f_poly",
    "irreducible_words", "is_alternating", "lifted_identity_rhs", "rb_ambiguities", "rb_normal_form",
    "rb_rules", "rb_signature", "verify_ambiguity_families", "verify_lifted_identity",
]
