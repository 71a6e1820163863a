"""Star-words, substitution, rules and reduction to normal form.

A *context* is a star-word whose placeholder sits bare (exponent zero) in some
word of the tree: the top-level atom sequence or an operator argument.  Every
occurrence of a pattern word in a word ``w`` is described by such a context
``u`` with ``u|pattern = w``; contexts are addressed internally by a path of
``(atom index, argument index)`` steps plus the ``[start, end)`` atom segment.

A :class:`Rule` is a monic polynomial.  Its lifts ``D^l(rule)`` are matched
without expanding them first: the lifted leading word is known in closed form
(:func:`dgsb.order.lifted_leading`), and the lifted body is expanded and cached
only when an elimination actually uses it.  Schemas describe the infinite
Rota-Baxter families by matching their leading patterns directly.
"""

from __future__ import annotations

import gc
import random
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Iterator, NamedTuple, Sequence

from .diff import d_power
from .order import leading, lifted_leading
from .poly import Poly, add_into, poly_mul
from .terms import Q, STAR, Atom, OpApp, Signature, Word, as_rational, make_atom, make_opapp, make_word

_ZERO = Q(0)
_ONE = Q(1)
DEFAULT_LIFT_BOUND = 4
CACHE_LIMIT = 400_000
_NO_HIT = object()

Path = tuple[tuple[int, int], ...]


class StarWordError(ValueError):
    pass


@contextmanager
def paused_gc():
    """Suspend cyclic garbage collection around allocation-heavy loops.

    Normal forms create millions of short-lived acyclic objects; collector
    passes over the large caches would otherwise dominate the runtime.
    """
    was_enabled = gc.isenabled()
    gc.disable()
    try:
        yield
    finally:
        if was_enabled:
            gc.enable()


# -- star-words -------------------------------------------------------------

class StarWord:
    """A word over ``X + {STAR}`` with exactly one placeholder leaf."""

    __slots__ = ("word", "path", "index")

    def __init__(self, word: Word):
        if not isinstance(word, Word) or word.stars != 1:
            raise StarWordError("a star-word needs exactly one placeholder")
        self.word = word
        path = []
        w = word
        while True:
            k = next(k for k, a in enumerate(w.atoms) if a.stars)
            atom = w.atoms[k]
            if atom.base is STAR:
                break
            g = next(g for g, arg in enumerate(atom.base.args) if arg.stars)
            path.append((k, g))
            w = atom.base.args[g]
        self.path: Path = tuple(path)
        self.index = k

    @classmethod
    def from_segment(cls, word: Word, path: Path, start: int, end: int) -> "StarWord":
        star = Poly._raw({Word.of(STAR): _ONE})
        return cls(next(iter(_splice(word, path, start, end, star.terms))))

    @property
    def exponent(self) -> int:
        """The differential exponent wrapping the placeholder."""
        return self._star_atom().d

    @property
    def is_bare(self) -> bool:
        return self.exponent == 0

    def _star_atom(self) -> Atom:
        return subword_at(self.word, self.path).atoms[self.index]

    def substitute(self, s: Poly, lam) -> Poly:
        s = d_power(s, self.exponent, lam)
        i = self.index
        return Poly._raw(_splice(self.word, self.path, i, i + 1, s.terms))

    def normalize(self) -> tuple["StarWord", int]:
        j = self.exponent
        if j == 0:
            return self, 0
        bare = Poly._raw({Word.of(STAR): _ONE})
        i = self.index
        return StarWord(next(iter(_splice(self.word, self.path, i, i + 1, bare.terms)))), j

    def __eq__(self, other):
        return isinstance(other, StarWord) and self.word == other.word

    def __hash__(self):
        return hash(self.word)

    def __str__(self):
        return str(self.word)

    def __repr__(self):
        return f"StarWord({str(self.word)!r})"


def subword_at(word: Word, path: Path) -> Word:
    for k, g in path:
        word = word.atoms[k].base.args[g]
    return word


def _splice(word: Word, path: Path, start: int, end: int, terms: dict) -> dict:
    """Replace ``word[path][start:end]`` by each monomial of ``terms``.

    The map from monomials to results is injective, so no merging is needed.
    """
    atoms = word.atoms
    if not path:
        pre, post = atoms[:start], atoms[end:]
        return {make_word(pre + m.atoms + post): c for m, c in terms.items()}
    k, g = path[0]
    atom = atoms[k]
    base = atom.base
    inner = _splice(base.args[g], path[1:], start, end, terms)
    pre, post = atoms[:k], atoms[k + 1:]
    args = base.args
    d = atom.d
    op = base.op
    return {
        make_word(pre + (make_atom(d, make_opapp(op, args[:g] + (m,) + args[g + 1:])),) + post): c
        for m, c in inner.items()
    }


def _concat_nfs(parts: list, cache: dict) -> dict:
    """Product of the normal forms of ``parts`` (words or fixed atom tuples)."""
    cur: dict = {(): _ONE}
    for part in parts:
        if isinstance(part, tuple):
            cur = {t + part: c for t, c in cur.items()}
            continue
        nxt: dict = {}
        get = nxt.get
        for t, c in cur.items():
            for w, c2 in cache[part].items():
                key = t + w.atoms
                v = get(key, 0) + c * c2
                if v:
                    nxt[key] = v
                else:
                    nxt.pop(key, None)
        cur = nxt
    return {make_word(t): c for t, c in cur.items()}


def _is_fixed(word: Word, nf: dict) -> bool:
    return len(nf) == 1 and nf.get(word) == 1


def _with_normal_args(word: Word, cache: dict) -> dict:
    """``word`` with every top-level operator argument replaced by its normal form."""
    cur: dict = {(): _ONE}
    for atom in word.atoms:
        base = atom.base
        if type(base) is not OpApp:
            cur = {t + (atom,): c for t, c in cur.items()}
            continue
        choices: dict = {(): _ONE}
        for g in base.args:
            choices = {t + (w,): c * c2 for t, c in choices.items() for w, c2 in cache[g].items()}
        d, op = atom.d, base.op
        opts = [(make_atom(d, make_opapp(op, args)), c) for args, c in choices.items()]
        cur = {t + (a,): c * c2 for t, c in cur.items() for a, c2 in opts}
    return {make_word(t): c for t, c in cur.items()}


def substitute(u: StarWord, s: Poly, lam) -> Poly:
    """``u|s``: linear in ``s``; an exponent on the placeholder differentiates ``s``."""
    return u.substitute(s, lam)


def is_normal(u: StarWord, s: Poly, lam) -> bool:
    if not s:
        raise ValueError("is_normal needs a nonzero polynomial")
    top, _ = leading(s)
    full = u.substitute(s, lam)
    rhs = u.substitute(Poly.word(top), lam)
    return bool(full) and rhs.is_word() and leading(full)[0] == rhs.as_word()


def normalize_star(u: StarWord) -> tuple[StarWord, int]:
    return u.normalize()


def iter_positions(word: Word, path: Path = ()) -> Iterator[tuple[Path, Word]]:
    """Every word of the tree (pre-order): the top-level word and all arguments."""
    yield path, word
    for k, atom in enumerate(word.atoms):
        base = atom.base
        if isinstance(base, OpApp):
            for g, arg in enumerate(base.args):
                yield from iter_positions(arg, path + ((k, g),))


def _outermost_positions(word: Word) -> list[tuple[Path, Word]]:
    """Breadth-first: by nesting depth, then left to right."""
    out = [((), word)]
    k = 0
    while k < len(out):
        path, w = out[k]
        k += 1
        for n, atom in enumerate(w.atoms):
            base = atom.base
            if isinstance(base, OpApp):
                for g, arg in enumerate(base.args):
                    out.append((path + ((n, g),), arg))
    return out


def find_occurrences(w: Word, pattern: Word) -> list[StarWord]:
    """All bare contexts ``u`` with ``u|pattern = w``, outermost then leftmost."""
    n = len(pattern.atoms)
    pat = pattern.atoms
    out = []
    for path, sub in _outermost_positions(w):
        atoms = sub.atoms
        for s in range(len(atoms) - n + 1):
            if atoms[s:s + n] == pat:
                out.append(StarWord.from_segment(w, path, s, s + n))
    return out


# -- rules --------------------------------------------------------------------

class Rule:
    """A monic polynomial used as a rewrite rule ``lead -> lead - body``."""

    __slots__ = ("body", "lead", "_label", "_lifts")

    def __init__(self, body: Poly, label=None):
        if not body:
            raise ValueError("a rule cannot be the zero polynomial")
        lead, c = leading(body)
        if c != 1:
            raise ValueError(f"rule {body} is not monic")
        self.body = body
        self.lead = lead
        self._label = label
        self._lifts: dict = {}

    @classmethod
    def trusted(cls, body: Poly, lead: Word, label=None) -> "Rule":
        """Build a rule whose monic leading word is already known."""
        r = cls.__new__(cls)
        r.body = body
        r.lead = lead
        r._label = label
        r._lifts = {}
        return r

    @property
    def label(self) -> str:
        """Display name; a callable label is evaluated on demand."""
        lab = self._label
        if callable(lab):
            lab = self._label = lab()
        return lab or str(self.body)

    def lifted(self, l: int, lam) -> tuple[Word, Poly]:
        """Leading word and monic body of ``D^l(rule)``."""
        key = (l, lam)
        hit = self._lifts.get(key)
        if hit is None:
            if l == 0:
                hit = (self.lead, self.body)
            else:
                lead, lc = lifted_leading(self.lead, l, lam)
                body = d_power(self.body, l, lam)
                if lc != 1:
                    body = body.scale(1 / lc)
                top, c = leading(body)
                if top != lead or c != 1:
                    raise AssertionError(
                        f"lifted leading mismatch for D^{l}({self.label}): {top} vs {lead}")
                hit = (lead, body)
            self._lifts[key] = hit
        return hit

    def negated_tail(self, l: int, lam) -> dict:
        """``-(lifted body - lifted lead)``: what an elimination puts in place of the lead."""
        key = ("tail", l, lam)
        hit = self._lifts.get(key)
        if hit is None:
            lead, body = self.lifted(l, lam)
            hit = {w: -c for w, c in body.terms.items() if w != lead}
            self._lifts[key] = hit
        return hit

    def __eq__(self, other):
        return isinstance(other, Rule) and self.body == other.body

    def __hash__(self):
        return hash(self.body)

    def __str__(self):
        return str(self.body)

    def __repr__(self):
        return f"Rule({str(self.body)!r})"


class Schema:
    """An infinite family of rules parameterised by words.

    ``match_at(atoms, s)`` yields ``(end, rule, lift)`` for every family
    member whose lifted leading word is ``atoms[s:end]``.
    """

    name = "schema"

    def match_at(self, atoms: Sequence[Atom], s: int) -> Iterator[tuple[int, Rule, int]]:
        raise NotImplementedError

    def random_instance(self, rng: random.Random, words: Sequence[Word]) -> Rule:
        raise NotImplementedError


def _unary(sig: Signature, op_name: str):
    op = sig.op(op_name)
    if op.arity != 1:
        raise ValueError(f"operator {op_name} must be unary for this schema")
    return op


class RotaBaxterSchema(Schema):
    """``P(u)P(v) - P(u P(v)) - P(P(u) v) - c P(u v)`` with ``c = lam`` by default.

    Lifted leading patterns: ``D^j(P(U)) D^j(P(V))`` when ``lam != 0`` and
    ``D^j(P(U)) P(V)`` when ``lam = 0``.
    """

    name = "rota-baxter"

    def __init__(self, sig: Signature, op_name: str = "P", weight=None):
        self.sig = sig
        self.op = _unary(sig, op_name)
        self.lam = sig.lam
        self.weight = self.lam if weight is None else as_rational(weight)
        self._cache: dict = {}

    def p(self, w: Word) -> Word:
        return Word.of(make_opapp(self.op, (w,)))

    def body(self, u: Word, v: Word) -> Poly:
        pu, pv = self.p(u), self.p(v)
        terms = [(pu * pv, 1), (self.p(u * pv), -1), (self.p(pu * v), -1)]
        if self.weight:
            terms.append((self.p(u * v), -self.weight))
        return Poly(terms)

    def instance(self, u: Word, v: Word) -> Rule:
        key = (u, v)
        rule = self._cache.get(key)
        if rule is None:
            # P(u)P(v) has breadth 2; every other term is a single atom of equal degree
            rule = Rule.trusted(self.body(u, v), self.p(u) * self.p(v), lambda: f"f({u}, {v})")
            self._cache[key] = rule
        return rule

    def match_at(self, atoms, s):
        if s + 1 >= len(atoms):
            return
        a, b = atoms[s], atoms[s + 1]
        ba, bb = a.base, b.base
        if not (isinstance(ba, OpApp) and isinstance(bb, OpApp)):
            return
        if ba.op != self.op or bb.op != self.op:
            return
        if self.lam:
            if a.d != b.d:
                return
        elif b.d != 0:
            return
        yield s + 2, self.instance(ba.args[0], bb.args[0]), a.d

    def random_instance(self, rng, words):
        return self.instance(rng.choice(words), rng.choice(words))


class DiffPSchema(Schema):
    """``D(P(u)) - u``; its lift ``D^k(P(U))`` (k >= 1) has lift ``k - 1``."""

    name = "diff-p"

    def __init__(self, sig: Signature, op_name: str = "P"):
        self.sig = sig
        self.op = _unary(sig, op_name)
        self._cache: dict = {}

    def instance(self, u: Word) -> Rule:
        rule = self._cache.get(u)
        if rule is None:
            lead = Word.of(make_opapp(self.op, (u,)), 1)
            # deg(lead) = deg(u) + 1 > deg(u)
            name = self.op.name
            rule = Rule.trusted(Poly([(lead, 1), (u, -1)]), lead,
                                lambda: f"D({name}({u})) - {u}")
            self._cache[u] = rule
        return rule

    def match_at(self, atoms, s):
        a = atoms[s]
        base = a.base
        if a.d >= 1 and isinstance(base, OpApp) and base.op == self.op:
            yield s + 1, self.instance(base.args[0]), a.d - 1

    def random_instance(self, rng, words):
        return self.instance(rng.choice(words))


SCHEMAS = {"rota-baxter": RotaBaxterSchema, "diff-p": DiffPSchema}


# -- reduction -----------------------------------------------------------------

class Match(NamedTuple):
    path: Path
    start: int
    end: int
    rule: Rule
    lift: int
    family: int

    def context(self, word: Word) -> StarWord:
        return StarWord.from_segment(word, self.path, self.start, self.end)


@dataclass(frozen=True)
class Step:
    """One elimination: ``coef * word`` replaced using ``rule`` lifted ``lift`` times."""

    word: Word
    coef: Q
    match: Match

    def subtracted(self, lam) -> Poly:
        """The ideal element ``coef * u|(lc^-1 D^lift(rule))`` removed by this step."""
        m = self.match
        _, body = m.rule.lifted(m.lift, lam)
        ctx_terms = _splice(self.word, m.path, m.start, m.end, body.terms)
        return Poly._raw(ctx_terms).scale(self.coef)


class RuleSet:
    """Ground rules plus schemas, with a cap on differential lifts.

    ``lift_bound=None`` matches lifts of any height.
    """

    def __init__(self, sig: Signature, rules: Sequence[Rule | Poly] = (),
                 schemas: Sequence[Schema] = (), lift_bound: int | None = DEFAULT_LIFT_BOUND):
        self.sig = sig
        self.lam = sig.lam
        self.rules = tuple(r if isinstance(r, Rule) else Rule(r) for r in rules)
        self.schemas = tuple(schemas)
        self.lift_bound = lift_bound
        self._by_base: dict = {}
        for idx, r in enumerate(self.rules):
            self._by_base.setdefault(r.lead.atoms[0].base, []).append((idx, r))
        self._schema_ops = {getattr(sc, "op", None) for sc in self.schemas}
        self._open_schemas = None in self._schema_ops
        # generator atoms no lead can touch split a word into independent factors
        touched = {a.base for r in self.rules for a in r.lead.atoms}
        self._separators = frozenset(
            () if self._open_schemas else (g for g in sig.generators if g not in touched))
        self._best: dict = {}
        self._nf: dict = {}

    def with_lift_bound(self, lift_bound: int | None) -> "RuleSet":
        return RuleSet(self.sig, self.rules, self.schemas, lift_bound)

    def __bool__(self):
        return bool(self.rules or self.schemas)

    def describe(self) -> str:
        parts = [f"{len(self.rules)} ground rule(s)"]
        parts += [f"schema {s.name}" for s in self.schemas]
        return ", ".join(parts) + f"; lift bound {self.lift_bound}"

    # matching

    def _can_start(self, atom: Atom) -> bool:
        base = atom.base
        if base in self._by_base or self._open_schemas:
            return True
        return isinstance(base, OpApp) and base.op in self._schema_ops

    def _matches_at(self, atoms, s) -> list[tuple[int, Rule, int, int]]:
        bound = self.lift_bound
        lam = self.lam
        n_atoms = len(atoms)
        first = atoms[s]
        out = []
        for idx, r in self._by_base.get(first.base, ()):
            pat = r.lead.atoms
            n = len(pat)
            if s + n > n_atoms:
                continue
            lift = first.d - pat[0].d
            if lift < 0 or (bound is not None and lift > bound):
                continue
            ok = True
            for k in range(1, n):
                a, p = atoms[s + k], pat[k]
                if a.d != p.d + (lift if lam else 0) or a.base != p.base:
                    ok = False
                    break
            if ok:
                out.append((s + n, r, lift, idx))
        fb = first.base
        if not self._open_schemas and not (isinstance(fb, OpApp) and fb.op in self._schema_ops):
            return out
        base = len(self.rules)
        for k, schema in enumerate(self.schemas):
            for end, rule, lift in schema.match_at(atoms, s):
                if bound is None or lift <= bound:
                    out.append((end, rule, lift, base + k))
        return out

    def iter_matches(self, word: Word) -> Iterator[Match]:
        for path, sub in _outermost_positions(word):
            atoms = sub.atoms
            for s in range(len(atoms)):
                if self._can_start(atoms[s]):
                    for end, rule, lift, fam in self._matches_at(atoms, s):
                        yield Match(path, s, end, rule, lift, fam)

    def matches(self, word: Word) -> list[Match]:
        return list(self.iter_matches(word))

    def is_irreducible(self, word: Word) -> bool:
        return self.best_match(word) is None

    def best_match(self, word: Word) -> Match | None:
        """Outermost, then leftmost context; greatest pattern; lowest rule index."""
        hit = self._best.get(word, _NO_HIT)
        if hit is not _NO_HIT:
            return hit
        best = self._find_best(word)
        self._best[word] = best
        return best

    def _best_at_level(self, atoms, path) -> Match | None:
        can_start = self._can_start
        for s, first in enumerate(atoms):
            if not can_start(first):
                continue
            cands = self._matches_at(atoms, s)
            if cands:
                if len(cands) > 1:
                    cands.sort(key=lambda c: (Word(atoms[s:c[0]]).key, -c[3]))
                end, rule, lift, fam = cands[-1]
                return Match(path, s, end, rule, lift, fam)
        return None

    def _find_best(self, word: Word) -> Match | None:
        queue = [((), word)]
        q = 0
        while q < len(queue):
            path, sub = queue[q]
            q += 1
            atoms = sub.atoms
            best = self._best_at_level(atoms, path)
            if best is not None:
                return best
            for n, atom in enumerate(atoms):
                b = atom.base
                if isinstance(b, OpApp):
                    for g, arg in enumerate(b.args):
                        queue.append((path + ((n, g),), arg))
        return None

    def lower(self, word: Word, m: Match) -> dict:
        """``word - u|body`` for the match: the strictly smaller remainder."""
        return _splice(word, m.path, m.start, m.end, m.rule.negated_tail(m.lift, self.lam))

    # normal forms

    def _split(self, word: Word) -> list | None:
        """Factors of ``word`` around separator atoms, or None if there are none.

        Runs without separators become words; separator atoms stay as atom tuples.
        """
        seps = self._separators
        atoms = word.atoms
        cut = [k for k, a in enumerate(atoms) if a.base in seps]
        if not cut:
            return None
        parts: list = []
        prev = 0
        for k in cut:
            if k > prev:
                parts.append(make_word(atoms[prev:k]))
            parts.append((atoms[k],))
            prev = k + 1
        if prev < len(atoms):
            parts.append(make_word(atoms[prev:]))
        return parts

    def _nf_word(self, word: Word) -> dict:
        """Memoized normal form, innermost first.

        Operator arguments are normalized once per argument word, the word is
        rebuilt from them, and only then is a top-level match eliminated.
        Each of these is an ordinary elimination, so the result agrees with
        :meth:`reduce` whenever normal forms are unique.
        """
        cache = self._nf
        hit = cache.get(word)
        if hit is not None:
            return hit
        if len(cache) > CACHE_LIMIT:
            cache.clear()
            self._best.clear()
        top_match = self._best_at_level
        lower = self.lower
        seps = self._separators
        split = self._split
        stack = [word]
        pending: dict = {}
        while stack:
            top = stack[-1]
            if top in cache:
                stack.pop()
                continue
            low = pending.get(top)
            if low is None:
                parts = split(top) if seps and len(top.atoms) > 1 else None
                if parts is not None:
                    low = parts
                else:
                    args = [g for a in top.atoms if type(a.base) is OpApp for g in a.base.args]
                    missing = [g for g in args if g not in cache]
                    if missing:
                        stack.extend(missing)
                        continue
                    if all(_is_fixed(g, cache[g]) for g in args):
                        m = top_match(top.atoms, ())
                        if m is None:
                            cache[top] = {top: _ONE}
                            stack.pop()
                            continue
                        low = lower(top, m)
                    else:
                        low = _with_normal_args(top, cache)
                pending[top] = low
                missing = [v for v in low if isinstance(v, Word) and v not in cache]
                if missing:
                    stack.extend(missing)
                    continue
            if isinstance(low, list):
                cache[top] = _concat_nfs(low, cache)
            else:
                acc: dict = {}
                for v, c in low.items():
                    add_into(acc, cache[v], c)
                cache[top] = acc
            del pending[top]
            stack.pop()
        return cache[word]

    def reduce(self, p: Poly, *, rng: random.Random | None = None,
               trace: list | None = None, max_steps: int | None = None) -> Poly:
        """Normal form of ``p``.

        The default strategy eliminates the greatest reducible monomial using
        :meth:`best_match`.  With ``rng`` the match inside that monomial is
        chosen at random instead.  ``trace`` collects the :class:`Step` list.
        """
        if rng is None and trace is None and max_steps is None:
            acc: dict = {}
            for w, c in p.terms.items():
                add_into(acc, self._nf_word(w), c)
            return Poly._raw(acc)
        acc = dict(p.terms)
        steps = 0
        while True:
            pick = None
            for w in sorted(acc, key=_key, reverse=True):
                if rng is None:
                    m = self.best_match(w)
                else:
                    ms = self.matches(w)
                    m = rng.choice(ms) if ms else None
                if m is not None:
                    pick = (w, m)
                    break
            if pick is None:
                break
            w, m = pick
            c = acc.pop(w)
            add_into(acc, self.lower(w, m), c)
            if trace is not None:
                trace.append(Step(w, c, m))
            steps += 1
            if max_steps is not None and steps >= max_steps:
                raise RuntimeError(f"reduction exceeded {max_steps} steps")
        return Poly._raw(acc)


def _key(w: Word):
    return w.key


def reduce(p: Poly, rules: RuleSet, lift_bound: int | None = DEFAULT_LIFT_BOUND, **kw) -> Poly:
    """Normal form of ``p`` with respect to ``rules`` using lifts up to ``lift_bound``."""
    if rules.lift_bound != lift_bound:
        rules = rules.with_lift_bound(lift_bound)
    return rules.reduce(p, **kw)


def load_rules(text: str, sig: Signature, lift_bound: int | None = DEFAULT_LIFT_BOUND) -> RuleSet:
    """Rule file: one polynomial per line, or ``schema NAME [OP]`` directives."""
    from .parsing import ParseError, parse_poly

    rules, schemas = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("schema"):
            parts = line.split()
            if len(parts) not in (2, 3) or parts[1] not in SCHEMAS:
                raise ParseError(f"line {lineno}: expected 'schema rota-baxter|diff-p [OP]'")
            schemas.append(SCHEMAS[parts[1]](sig, *parts[2:]))
            continue
        try:
            poly = parse_poly(line, sig)
        except ParseError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
        if not poly:
            raise ParseError(f"line {lineno}: a rule cannot be zero")
        lead, c = leading(poly)
        rules.append(Rule(poly.scale(1 / c)))
    return RuleSet(sig, rules, schemas, lift_bound)


def dump_rules(rules: RuleSet) -> str:
    lines = [f"schema {s.name} {s.op.name}" for s in rules.schemas]
    lines += [str(r.body) for r in rules.rules]
    return "".join(line + "\n" for line in lines)


def splice_poly(word: Word, path: Path, start: int, end: int, s: Poly) -> Poly:
    return Poly._raw(_splice(word, path, start, end, s.terms))


__all__ = [
    "DEFAULT_LIFT_BOUND", "DiffPSchema", "Match", "RotaBaxterSchema", "Rule", "RuleSet",
    "Schema", "StarWord", "StarWordError", "Step", "find_occurrences", "is_normal",
    "iter_positions", "load_rules", "dump_rules", "normalize_star", "poly_mul", "reduce",
    "splice_poly", "subword_at", "substitute",
]
