"""Omega-words over a signature: generators, operators, atoms and words.

A word is a nonempty sequence of atoms ``D^i(base)`` where the base is a
generator or an operator applied to argument words.  Every object here is
immutable and hashable; structural equality coincides with equality of the
ordering key, so words can be used directly as dictionary keys.

The ordering key encodes the well-order used throughout the package:

* words compare by ``(deg, bre, atom_1, ..., atom_t)``,
* atoms ``D^i(u)`` compare by ``(deg(u), i, u)``,
* bases: every generator is below every operator application; generators
  compare by declaration rank, operator applications by
  ``(deg, operator rank, arg_1, ..., arg_n)``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from gmpy2 import mpq as Q
from typing import Iterable, Sequence

RESERVED = {"D"}
STAR_TOKEN = "*STAR*"
_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class SignatureError(ValueError):
    pass


Rational = type(Q())


def as_rational(value) -> Rational:
    """Exact rational from an int, Fraction, mpq or ``"p/q"`` string."""
    if isinstance(value, Rational):
        return value
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return Q(value)
    if isinstance(value, str):
        try:
            return Q(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not an exact rational: {value!r}") from exc
    if type(value).__name__ == "mpz":
        return Q(value)
    raise TypeError(f"cannot use {value!r} as an exact rational")


class Generator:
    __slots__ = ("name", "rank", "key", "_hash")

    def __init__(self, name: str, rank: int):
        self.name = name
        self.rank = rank
        self.key = (0, rank, name)
        self._hash = hash(self.key)

    deg = 0
    stars = 0

    def __eq__(self, other):
        return self is other or (isinstance(other, Generator) and self.key == other.key)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Generator({self.name!r}, {self.rank})"


class Operator:
    __slots__ = ("name", "arity", "rank")

    def __init__(self, name: str, arity: int, rank: int):
        self.name = name
        self.arity = arity
        self.rank = rank

    def __eq__(self, other):
        return self is other or (
            isinstance(other, Operator)
            and (self.name, self.arity, self.rank) == (other.name, other.arity, other.rank)
        )

    def __hash__(self):
        return hash((self.name, self.arity, self.rank))

    def __repr__(self):
        return f"Operator({self.name!r}, {self.arity}, {self.rank})"


class _Star:
    """The placeholder leaf of a star-word."""

    __slots__ = ()
    name = STAR_TOKEN
    deg = 0
    stars = 1
    key = (0, -1, STAR_TOKEN)

    def __repr__(self):
        return "STAR"

    def __reduce__(self):
        return (_star, ())


def _star():
    return STAR


STAR = _Star()


class OpApp:
    __slots__ = ("op", "args", "deg", "stars", "_key", "_hash")

    def __init__(self, op: Operator, args: Sequence["Word"]):
        args = tuple(args)
        if len(args) != op.arity:
            raise SignatureError(
                f"operator {op.name} has arity {op.arity}, got {len(args)} argument(s)"
            )
        for a in args:
            if not isinstance(a, Word):
                raise TypeError(f"operator arguments must be words, got {a!r}")
        self.op = op
        self.args = args
        self.deg = 1 + sum(a.deg for a in args)
        self.stars = sum(a.stars for a in args)
        self._key = None
        self._hash = hash((op.rank,) + tuple(a._hash for a in args))

    @property
    def key(self):
        if self._key is None:
            self._key = (1, self.deg, self.op.rank, self.op.name) + tuple(a.key for a in self.args)
        return self._key

    def __eq__(self, other):
        return self is other or (
            isinstance(other, OpApp) and self._hash == other._hash
            and self.op == other.op and self.args == other.args
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"OpApp({self.op.name}, {list(self.args)!r})"


class Atom:
    """``D^d(base)`` with ``d >= 0``."""

    __slots__ = ("d", "base", "deg", "stars", "_key", "_hash")

    def __init__(self, d: int, base):
        if d < 0:
            raise ValueError("negative differential exponent")
        self.d = d
        self.base = base
        self.deg = base.deg
        self.stars = base.stars
        self._key = None
        self._hash = hash((d, hash(base)))

    @property
    def key(self):
        if self._key is None:
            self._key = (self.deg, self.d, self.base.key)
        return self._key

    def bumped(self, k: int = 1) -> "Atom":
        return make_atom(self.d + k, self.base)

    @property
    def is_op(self) -> bool:
        return isinstance(self.base, OpApp)

    def __eq__(self, other):
        return self is other or (
            isinstance(other, Atom) and self._hash == other._hash
            and self.d == other.d and self.base == other.base
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Atom({format_atom(self)})"


class Word:
    """A nonempty product of atoms."""

    __slots__ = ("atoms", "deg", "stars", "_key", "_hash", "_dep", "_size")

    def __init__(self, atoms: Iterable[Atom]):
        atoms = tuple(atoms)
        if not atoms:
            raise ValueError("the empty word is not an element of the algebra")
        self.atoms = atoms
        if len(atoms) == 1:
            a = atoms[0]
            self.deg = a.deg
            self.stars = a.stars
        else:
            self.deg = sum([a.deg for a in atoms])
            self.stars = sum([a.stars for a in atoms])
        self._hash = hash(tuple([a._hash for a in atoms]))
        self._key = None
        self._dep = None
        self._size = None

    @property
    def key(self):
        """Order key ``(deg, bre, atom keys...)``; built on first comparison."""
        if self._key is None:
            self._key = (self.deg, len(self.atoms)) + tuple(a.key for a in self.atoms)
        return self._key

    @classmethod
    def of(cls, base, d: int = 0) -> "Word":
        if d < 0:
            raise ValueError("negative differential exponent")
        return make_word((make_atom(d, base),))

    @property
    def bre(self) -> int:
        return len(self.atoms)

    @property
    def dep(self) -> int:
        if self._dep is None:
            dep = 0
            for a in self.atoms:
                if isinstance(a.base, OpApp):
                    dep = max(dep, 1 + max(w.dep for w in a.base.args))
            self._dep = dep
        return self._dep

    @property
    def size(self) -> int:
        """Generator occurrences + all differential exponents + operator applications."""
        if self._size is None:
            size = 0
            for a in self.atoms:
                size += a.d
                if isinstance(a.base, OpApp):
                    size += 1 + sum(w.size for w in a.base.args)
                else:
                    size += 1
            self._size = size
        return self._size

    def __mul__(self, other: "Word") -> "Word":
        if isinstance(other, Word):
            return make_word(self.atoms + other.atoms)
        return NotImplemented

    def __len__(self):
        return len(self.atoms)

    def __eq__(self, other):
        return self is other or (
            isinstance(other, Word) and self._hash == other._hash and self.atoms == other.atoms
        )

    def __hash__(self):
        return self._hash

    def __lt__(self, other: "Word"):
        return self.key < other.key

    def __le__(self, other: "Word"):
        return self.key <= other.key

    def __gt__(self, other: "Word"):
        return self.key > other.key

    def __ge__(self, other: "Word"):
        return self.key >= other.key

    def __str__(self):
        return format_word(self)

    def __repr__(self):
        return f"Word({format_word(self)!r})"


_new = object.__new__


def make_word(atoms: tuple) -> Word:
    """Trusted constructor: ``atoms`` is a nonempty tuple of atoms."""
    w = _new(Word)
    w.atoms = atoms
    if len(atoms) == 1:
        a = atoms[0]
        w.deg = a.deg
        w.stars = a.stars
        w._hash = hash((a._hash,))
    else:
        w.deg = sum([a.deg for a in atoms])
        w.stars = sum([a.stars for a in atoms])
        w._hash = hash(tuple([a._hash for a in atoms]))
    w._key = None
    w._dep = None
    w._size = None
    return w


# Hash-consing tables for the trusted constructors.  Equality stays structural,
# so sharing is only a speed-up: equal atoms built here are usually the same
# object and compare by identity.  Clearing the tables is always safe.
_ATOMS: dict = {}
_OPAPPS: dict = {}
INTERN_LIMIT = 1 << 20


def clear_intern_tables() -> None:
    _ATOMS.clear()
    _OPAPPS.clear()


def make_atom(d: int, base) -> Atom:
    """Trusted constructor for ``D^d(base)``."""
    key = (d, base)
    a = _ATOMS.get(key)
    if a is not None:
        return a
    a = _new(Atom)
    a.d = d
    a.base = base
    a.deg = base.deg
    a.stars = base.stars
    a._key = None
    a._hash = hash((d, hash(base)))
    if len(_ATOMS) >= INTERN_LIMIT:
        _ATOMS.clear()
    _ATOMS[key] = a
    return a


def make_opapp(op: Operator, args: tuple) -> OpApp:
    """Trusted constructor: ``args`` is a tuple of words of the right arity."""
    key = (op, args)
    o = _OPAPPS.get(key)
    if o is not None:
        return o
    o = _new(OpApp)
    o.op = op
    o.args = args
    if len(args) == 1:
        a = args[0]
        o.deg = 1 + a.deg
        o.stars = a.stars
    else:
        o.deg = 1 + sum([a.deg for a in args])
        o.stars = sum([a.stars for a in args])
    o._key = None
    o._hash = hash((op.rank,) + tuple([a._hash for a in args]))
    if len(_OPAPPS) >= INTERN_LIMIT:
        _OPAPPS.clear()
    _OPAPPS[key] = o
    return o


class Signature:
    """Ordered generators, ordered operators with arities, and the weight lambda.

    Declaration order is the well-order on generators and on operators.
    """

    def __init__(self, generators: Sequence[str], operators: Sequence[tuple[str, int]] = (),
                 lam=0):
        if not generators:
            raise SignatureError("at least one generator is required")
        seen = set()
        for name in list(generators) + [n for n, _ in operators]:
            if not _NAME_RE.match(name):
                raise SignatureError(f"invalid symbol name {name!r}")
            if name in RESERVED:
                raise SignatureError(f"{name!r} is reserved")
            if name in seen:
                raise SignatureError(f"duplicate symbol {name!r}")
            seen.add(name)
        self.generators = tuple(Generator(n, r) for r, n in enumerate(generators))
        ops = []
        for r, (name, arity) in enumerate(operators):
            if int(arity) < 1:
                raise SignatureError(f"operator {name} must have arity >= 1")
            ops.append(Operator(name, int(arity), r))
        self.operators = tuple(ops)
        self.lam = as_rational(lam)
        self._gens = {g.name: g for g in self.generators}
        self._ops = {o.name: o for o in self.operators}

    def gen(self, name: str) -> Generator:
        try:
            return self._gens[name]
        except KeyError:
            raise SignatureError(f"unknown generator {name!r}") from None

    def op(self, name: str) -> Operator:
        try:
            return self._ops[name]
        except KeyError:
            raise SignatureError(f"unknown operator {name!r}") from None

    def has_gen(self, name: str) -> bool:
        return name in self._gens

    def has_op(self, name: str) -> bool:
        return name in self._ops

    def with_lambda(self, lam) -> "Signature":
        return Signature([g.name for g in self.generators],
                         [(o.name, o.arity) for o in self.operators], lam)

    def to_text(self) -> str:
        lines = []
        if self.generators:
            lines.append("gen " + " ".join(g.name for g in self.generators))
        lines.extend(f"op {o.name} {o.arity}" for o in self.operators)
        lines.append(f"lambda {self.lam}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Signature":
        gens: list[str] = []
        ops: list[tuple[str, int]] = []
        lam = Q(0)
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            head, *rest = line.split()
            if head == "gen":
                gens.extend(rest)
            elif head == "op":
                if len(rest) != 2 or not rest[1].isdigit():
                    raise SignatureError(f"line {lineno}: expected 'op NAME ARITY'")
                ops.append((rest[0], int(rest[1])))
            elif head == "lambda":
                if len(rest) != 1:
                    raise SignatureError(f"line {lineno}: expected 'lambda Q'")
                try:
                    lam = as_rational(rest[0])
                except (ValueError, ZeroDivisionError):
                    raise SignatureError(f"line {lineno}: bad rational {rest[0]!r}") from None
            else:
                raise SignatureError(f"line {lineno}: unknown directive {head!r}")
        return cls(gens, ops, lam)

    @classmethod
    def load(cls, path) -> "Signature":
        with open(path, encoding="utf-8") as fh:
            return cls.from_text(fh.read())

    def __eq__(self, other):
        return isinstance(other, Signature) and self.to_text() == other.to_text()

    def __hash__(self):
        return hash(self.to_text())

    def __repr__(self):
        return (f"Signature({[g.name for g in self.generators]}, "
                f"{[(o.name, o.arity) for o in self.operators]}, lam={self.lam})")


def gen_word(sig: Signature, name: str, d: int = 0) -> Word:
    return Word.of(sig.gen(name), d)


def op_word(op: Operator, *args: Word, d: int = 0) -> Word:
    return Word.of(OpApp(op, args), d)


# -- canonical text -------------------------------------------------------

def format_base(base) -> str:
    if isinstance(base, OpApp):
        return f"{base.op.name}(" + ", ".join(format_word(a) for a in base.args) + ")"
    return base.name


def format_atom(atom: Atom) -> str:
    inner = format_base(atom.base)
    if atom.d == 0:
        return inner
    if atom.d == 1:
        return f"D({inner})"
    return f"D^{atom.d}({inner})"


def _is_bare(atom: Atom) -> bool:
    return atom.d == 0 and not isinstance(atom.base, OpApp)


def format_word(word: Word) -> str:
    # bare generators are space separated; parenthesised atoms abut
    out = []
    prev = None
    for a in word.atoms:
        text = format_atom(a)
        if prev is not None and (_is_bare(prev) or _is_bare(a)):
            out.append(" ")
        out.append(text)
        prev = a
    return "".join(out)
