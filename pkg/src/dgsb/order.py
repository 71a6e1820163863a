"""Comparison, leading terms and monicization under the word well-order.

The order itself is carried by :attr:`Word.key` (see :mod:`dgsb.terms`): the
``(deg, bre, atoms...)`` rule is applied uniformly to every word, which on
words without operators reduces to ``(bre, atoms...)`` because all degrees are
zero.
"""

from __future__ import annotations

from enum import Enum

from .poly import Poly
from .terms import Q, Word, as_rational, make_word


class Cmp(Enum):
    LESS = "<"
    EQUAL = "="
    GREATER = ">"

    def __str__(self):
        return self.value


def compare(u: Word, v: Word) -> Cmp:
    ku, kv = u.key, v.key
    if ku == kv:
        return Cmp.EQUAL
    return Cmp.GREATER if ku > kv else Cmp.LESS


def leading(p: Poly) -> tuple[Word, Q]:
    if not p:
        raise ValueError("the zero polynomial has no leading term")
    w = p.max_word()
    return w, p.coeff(w)


def monicize(p: Poly) -> Poly:
    _, c = leading(p)
    return p if c == 1 else p.scale(1 / c)


def lifted_leading(w: Word, i: int, lam) -> tuple[Word, Q]:
    """Leading word and coefficient of ``D^i(w)`` without expanding it.

    For ``lam != 0`` every atom is raised by ``i`` and the coefficient is
    ``lam^((n-1) i)``; for ``lam = 0`` only the first atom is raised.
    """
    if i == 0:
        return w, Q(1)
    lam = as_rational(lam)
    atoms = w.atoms
    if lam:
        return make_word(tuple([a.bumped(i) for a in atoms])), lam ** ((len(atoms) - 1) * i)
    return make_word((atoms[0].bumped(i),) + atoms[1:]), Q(1)
