"""Enumeration of words by size and seeded random terms for property checks.

``size`` counts generator occurrences, differential exponents and operator
applications, so each size class is finite.
"""

from __future__ import annotations

import random
from itertools import product
from typing import Iterator

from .poly import Poly
from .rewrite import StarWord
from .terms import Q, STAR, Atom, OpApp, Signature, Word


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


class WordEnumerator:
    """All words of a given size over a signature, in a fixed order."""

    def __init__(self, sig: Signature, with_operators: bool = True):
        self.sig = sig
        self.ops = sig.operators if with_operators else ()
        self._atoms: dict[int, list[Atom]] = {}
        self._words: dict[int, list[Word]] = {}

    def atoms(self, m: int) -> list[Atom]:
        if m in self._atoms:
            return self._atoms[m]
        out = [Atom(m - 1, g) for g in self.sig.generators] if m >= 1 else []
        for op in self.ops:
            for d in range(0, m - op.arity):
                budget = m - 1 - d
                for sizes in _compositions(budget, op.arity):
                    for args in product(*(self.words(s) for s in sizes)):
                        out.append(Atom(d, OpApp(op, args)))
        self._atoms[m] = out
        return out

    def _seqs(self, n: int) -> list[tuple[Atom, ...]]:
        out = []
        for m in range(1, n + 1):
            heads = self.atoms(m)
            if m == n:
                out.extend((a,) for a in heads)
            else:
                tails = self._seqs(n - m)
                out.extend((a,) + t for a in heads for t in tails)
        return out

    def words(self, n: int) -> list[Word]:
        if n not in self._words:
            self._words[n] = [Word(t) for t in self._seqs(n)] if n >= 1 else []
        return self._words[n]

    def up_to(self, n: int) -> list[Word]:
        return [w for k in range(1, n + 1) for w in self.words(k)]


def words_up_to(sig: Signature, n: int, with_operators: bool = True) -> list[Word]:
    return WordEnumerator(sig, with_operators).up_to(n)


class RandomTerms:
    """Seeded generator of random words, polynomials and star-words."""

    def __init__(self, sig: Signature, rng: random.Random | int | None = None, *,
                 max_depth: int = 2, max_breadth: int = 3, max_d: int = 2, max_coef: int = 3):
        self.sig = sig
        self.rng = rng if isinstance(rng, random.Random) else random.Random(rng)
        self.max_depth = max_depth
        self.max_breadth = max_breadth
        self.max_d = max_d
        self.max_coef = max_coef

    def atom(self, depth: int) -> Atom:
        rng = self.rng
        d = rng.randint(0, self.max_d) if rng.random() < 0.4 else 0
        if depth > 0 and self.sig.operators and rng.random() < 0.4:
            op = rng.choice(self.sig.operators)
            args = [self.word(depth - 1) for _ in range(op.arity)]
            return Atom(d, OpApp(op, args))
        return Atom(d, rng.choice(self.sig.generators))

    def word(self, depth: int | None = None, breadth: int | None = None) -> Word:
        depth = self.max_depth if depth is None else depth
        n = breadth or self.rng.randint(1, self.max_breadth)
        return Word(self.atom(depth) for _ in range(n))

    def coef(self):
        
        rng = self.rng
        num = rng.choice([k for k in range(-self.max_coef, self.max_coef + 1) if k])
        return Q(num, rng.randint(1, 2))

    def poly(self, terms: int | None = None, depth: int | None = None) -> Poly:
        n = terms or self.rng.randint(1, 3)
        return Poly((self.word(depth), self.coef()) for _ in range(n))

    def star_word(self, depth: int | None = None, bare: bool = True) -> StarWord:
        """Insert a placeholder atom at a random spot of a random word."""
        rng = self.rng
        star = Atom(0 if bare else rng.randint(0, self.max_d), STAR)
        if rng.random() < 0.25:
            return StarWord(Word((star,)))
        host = self.word(depth)
        return StarWord(self._insert(host, star))

    def _insert(self, word: Word, star: Atom) -> Word:
        rng = self.rng
        atoms = list(word.atoms)
        nested = [k for k, a in enumerate(atoms) if isinstance(a.base, OpApp)]
        if nested and rng.random() < 0.5:
            k = rng.choice(nested)
            a = atoms[k]
            g = rng.randrange(len(a.base.args))
            args = list(a.base.args)
            args[g] = self._insert(args[g], star)
            atoms[k] = Atom(a.d, OpApp(a.base.op, args))
            return Word(atoms)
        atoms.insert(rng.randint(0, len(atoms)), star)
        return Word(atoms)
