"""Exact polynomials: finite maps from words to nonzero rationals."""

from __future__ import annotations

from typing import Iterable, Iterator, Mapping

from .terms import Q, Word, as_rational, format_word, make_word

_ZERO = Q(0)
_ONE = Q(1)


class Poly:
    """An element of the semigroup algebra over the rationals.

    Instances are treated as immutable; arithmetic returns new objects.
    Zero coefficients are never stored, so the zero polynomial is ``{}``.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Word, object] | Iterable[tuple[Word, object]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Word, Q] = {}
        for w, c in items:
            if not isinstance(w, Word):
                raise TypeError(f"polynomial terms must be words, got {w!r}")
            c = as_rational(c)
            if c:
                c = acc.get(w, _ZERO) + c
                if c:
                    acc[w] = c
                else:
                    del acc[w]
        self.terms = acc
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "Poly":
        # caller guarantees Word keys and nonzero Q values
        p = object.__new__(cls)
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def word(cls, w: Word, coef=1) -> "Poly":
        c = as_rational(coef)
        return cls._raw({w: c} if c else {})

    @classmethod
    def zero(cls) -> "Poly":
        return cls._raw({})

    # -- container protocol

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self) -> Iterator[Word]:
        return iter(self.terms)

    def __contains__(self, w):
        return w in self.terms

    def items(self):
        return self.terms.items()

    def coeff(self, w: Word) -> Q:
        return self.terms.get(w, _ZERO)

    def sorted_terms(self) -> list[tuple[Word, Q]]:
        """Terms in strictly decreasing order of their words."""
        return sorted(self.terms.items(), key=lambda t: t[0].key, reverse=True)

    def max_word(self) -> Word:
        if not self.terms:
            raise ValueError("the zero polynomial has no leading word")
        return max(self.terms, key=_key)

    def is_word(self) -> bool:
        """True if this is a single word with coefficient one."""
        return len(self.terms) == 1 and next(iter(self.terms.values())) == _ONE

    def as_word(self) -> Word:
        if not self.is_word():
            raise ValueError(f"{self} is not a single word")
        return next(iter(self.terms))

    # -- arithmetic

    def __add__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        acc = dict(self.terms)
        add_into(acc, other.terms)
        return Poly._raw(acc)

    def __sub__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        acc = dict(self.terms)
        add_into(acc, other.terms, -1)
        return Poly._raw(acc)

    def __neg__(self):
        return Poly._raw({w: -c for w, c in self.terms.items()})

    def scale(self, c) -> "Poly":
        c = as_rational(c)
        if not c:
            return Poly.zero()
        return Poly._raw({w: c * v for w, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Poly):
            return poly_mul(self, other)
        if isinstance(other, Word):
            return poly_mul(self, Poly.word(other))
        if isinstance(other, (int, Q)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, Word):
            return poly_mul(Poly.word(other), self)
        if isinstance(other, (int, Q)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({format_poly(self)!r})"


def _key(w: Word):
    return w.key


def add_into(acc: dict, terms, scale=1) -> None:
    """In-place ``acc += scale * terms`` keeping the no-zero invariant."""
    get = acc.get
    if scale == 1:
        for w, c in terms.items():
            v = get(w, _ZERO) + c
            if v:
                acc[w] = v
            else:
                del acc[w]
    else:
        for w, c in terms.items():
            v = get(w, _ZERO) + scale * c
            if v:
                acc[w] = v
            else:
                del acc[w]


def poly_mul(p: Poly, q: Poly) -> Poly:
    """Concatenation product extended bilinearly."""
    acc: dict[Word, Q] = {}
    get = acc.get
    for u, a in p.terms.items():
        ua = u.atoms
        for v, b in q.terms.items():
            w = make_word(ua + v.atoms)
            c = get(w, _ZERO) + a * b
            if c:
                acc[w] = c
            else:
                del acc[w]
    return Poly._raw(acc)


def poly_sum(polys: Iterable[Poly]) -> Poly:
    acc: dict[Word, Q] = {}
    for p in polys:
        add_into(acc, p.terms)
    return Poly._raw(acc)


def format_poly(p: Poly) -> str:
    if not p.terms:
        return "0"
    parts = []
    for w, c in p.sorted_terms():
        text = format_word(w)
        parts.append(text if c == _ONE else f"{c} * {text}")
    return " + ".join(parts)
