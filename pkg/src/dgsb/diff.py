"""The weight-lambda differential operator and multilinear operator application.

Two independent routes compute ``D``:

* :func:`d_apply` follows the inductive definition on the first atom,
  ``D(u1 u') = lam D(u1) D(u') + D(u1) u' + u1 D(u')``;
* :func:`d_power_closed` uses the subset expansion
  ``D(v1...vn) = sum_T lam^(|T|-1) prod_k D^[k in T](v_k)`` over nonempty
  index sets ``T`` and iterates it for higher powers.

The engine uses the closed form (cached); the recursion is kept as the oracle.
"""

from __future__ import annotations

from collections.abc import Iterator
from functools import lru_cache
from itertools import combinations
from math import comb

from .poly import Poly, add_into, poly_mul
from .terms import Q, Atom, OpApp, Operator, SignatureError, Word, as_rational, clear_intern_tables, make_word

_ZERO = Q(0)
_ONE = Q(1)


class DExpansionPlan:
    """Index tuples in {0,1}^n with t ones, weighted by lam^(t-1), for t = 1..n."""

    def __init__(self, n: int, lam):
        self.n = n
        self.lam = as_rational(lam)

    def tuples(self, t: int) -> Iterator[tuple[int, ...]]:
        for ones in combinations(range(self.n), t):
            picked = set(ones)
            yield tuple(1 if k in picked else 0 for k in range(self.n))

    def __iter__(self) -> Iterator[tuple[tuple[int, ...], Q]]:
        top = self.n if self.lam else 1
        for t in range(1, top + 1):
            weight = self.lam ** (t - 1)
            for idx in self.tuples(t):
                yield idx, weight

    def count(self, t: int) -> int:
        return comb(self.n, t)


def clear_caches() -> None:
    """Drop the memoized derivatives; long verification runs call this when done."""
    _d_step.cache_clear()
    _d_power_word.cache_clear()
    clear_intern_tables()


@lru_cache(maxsize=1 << 18)
def _d_step(word: Word, lam: Q) -> Poly:
    atoms = word.atoms
    n = len(atoms)
    if n == 1:
        return Poly._raw({make_word((atoms[0].bumped(),)): _ONE})
    bumped = [a.bumped() for a in atoms]
    acc: dict[Word, Q] = {}
    for idx, weight in DExpansionPlan(n, lam):
        w = make_word(tuple([bumped[k] if bit else atoms[k] for k, bit in enumerate(idx)]))
        c = acc.get(w, _ZERO) + weight
        if c:
            acc[w] = c
        else:
            del acc[w]
    return Poly._raw(acc)


@lru_cache(maxsize=1 << 18)
def _d_power_word(word: Word, i: int, lam: Q) -> Poly:
    if i == 0:
        return Poly._raw({word: _ONE})
    if len(word.atoms) == 1:
        return Poly._raw({make_word((word.atoms[0].bumped(i),)): _ONE})
    prev = _d_power_word(word, i - 1, lam)
    acc: dict[Word, Q] = {}
    for w, c in prev.terms.items():
        add_into(acc, _d_step(w, lam).terms, c)
    return Poly._raw(acc)


def d_power_closed(w: Word, i: int, lam) -> Poly:
    """``D^i(w)`` for a word, by iterating the one-step subset expansion."""
    if i < 0:
        raise ValueError("negative differential exponent")
    return _d_power_word(w, i, as_rational(lam))


def d_power(p: Poly, i: int, lam) -> Poly:
    """Linear extension of :func:`d_power_closed` to polynomials."""
    if i == 0:
        return p
    lam = as_rational(lam)
    acc: dict[Word, Q] = {}
    for w, c in p.terms.items():
        add_into(acc, _d_power_word(w, i, lam).terms, c)
    return Poly._raw(acc)


def _d_rec(word: Word, lam: Q) -> Poly:
    atoms = word.atoms
    head = Poly._raw({Word((atoms[0].bumped(),)): _ONE})
    if len(atoms) == 1:
        return head
    first = Poly._raw({Word(atoms[:1]): _ONE})
    rest = Word(atoms[1:])
    d_rest = _d_rec(rest, lam)
    out = poly_mul(head, Poly._raw({rest: _ONE})) + poly_mul(first, d_rest)
    if lam:
        out = out + poly_mul(head, d_rest).scale(lam)
    return out


def d_apply(p: Poly, lam) -> Poly:
    """One application of ``D`` via the recursive definition (linear in ``p``)."""
    lam = as_rational(lam)
    acc: dict[Word, Q] = {}
    for w, c in p.terms.items():
        add_into(acc, _d_rec(w, lam).terms, c)
    return Poly._raw(acc)


def op_apply(op: Operator, args: list[Poly]) -> Poly:
    """Multilinear extension of ``op`` to polynomial arguments."""
    if len(args) != op.arity:
        raise SignatureError(f"operator {op.name} has arity {op.arity}, got {len(args)}")
    acc: dict[Word, Q] = {}
    partial: list[tuple[tuple[Word, ...], Q]] = [((), _ONE)]
    for arg in args:
        partial = [(ws + (w,), c * a) for ws, c in partial for w, a in arg.terms.items()]
    for ws, c in partial:
        w = Word((Atom(0, OpApp(op, ws)),))
        v = acc.get(w, _ZERO) + c
        if v:
            acc[w] = v
        else:
            del acc[w]
    return Poly._raw(acc)
