"""Propositional language over an explicit vocabulary.

Interpretations are integers in ``[0, 2**n)``.  The first declared atom is
the most significant bit, so the binary spelling of an index reads the atoms
in declaration order: over ``p q`` the index 2 is ``10`` (p true, q false).

Model sets are bitsets stored in a Python ``int``: bit ``u`` is set iff
interpretation ``u`` is a model.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Union

from .errors import (
    FormulaSyntaxError,
    InconsistentKnowledgeBaseError,
    UnknownAtomError,
    VocabularyError,
    VocabularyMismatchError,
)

DEFAULT_MAX_ATOMS = 16
KEYWORDS = frozenset({"true", "false"})
_ATOM_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class Vocabulary:
    atoms: tuple[str, ...]
    max_atoms: int = DEFAULT_MAX_ATOMS

    def __post_init__(self):
        atoms = tuple(self.atoms)
        object.__setattr__(self, "atoms", atoms)
        if not atoms:
            raise VocabularyError("vocabulary must declare at least one atom")
        if len(set(atoms)) != len(atoms):
            raise VocabularyError(f"duplicate atoms in {atoms}")
        for a in atoms:
            if not _ATOM_RE.match(a) or a in KEYWORDS:
                raise VocabularyError(f"invalid atom name {a!r}")
        if len(atoms) > self.max_atoms:
            raise VocabularyError(
                f"{len(atoms)} atoms exceeds the limit of {self.max_atoms}"
            )

    @classmethod
    def of(cls, text: str, max_atoms: int = DEFAULT_MAX_ATOMS) -> "Vocabulary":
        """Build from a whitespace- or comma-separated atom list."""
        return cls(tuple(re.split(r"[\s,]+", text.strip())), max_atoms)

    @property
    def n(self) -> int:
        return len(self.atoms)

    @property
    def size(self) -> int:
        """Number of interpretations."""
        return 1 << len(self.atoms)

    @property
    def full_mask(self) -> int:
        return (1 << self.size) - 1

    def index_of(self, atom: str) -> int:
        try:
            return self.atoms.index(atom)
        except ValueError:
            raise UnknownAtomError(atom) from None

    def value(self, u: int, atom_index: int) -> bool:
        return bool((u >> (self.n - 1 - atom_index)) & 1)

    def bits(self, u: int) -> str:
        return format(u, f"0{self.n}b")

    def parse_bits(self, text: str) -> int:
        if len(text) != self.n or set(text) - {"0", "1"}:
            raise ValueError(f"{text!r} is not an interpretation over {self.n} atoms")
        return int(text, 2)

    def interpretations(self) -> range:
        return range(self.size)

    def atom_mask(self, atom_index: int) -> int:
        """Bitset of the interpretations making atom ``atom_index`` true."""
        mask = 0
        for u in range(self.size):
            if self.value(u, atom_index):
                mask |= 1 << u
        return mask

    def check_same(self, other: "Vocabulary") -> None:
        if self.atoms != other.atoms:
            raise VocabularyMismatchError(
                f"vocabularies differ: {' '.join(self.atoms)} vs {' '.join(other.atoms)}"
            )


# --- formulas -------------------------------------------------------------

@dataclass(frozen=True)
class Const:
    value: bool


@dataclass(frozen=True)
class Atom:
    name: str


@dataclass(frozen=True)
class Not:
    arg: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Iff:
    left: "Formula"
    right: "Formula"


Formula = Union[Const, Atom, Not, And, Or, Implies, Iff]

TOP = Const(True)
BOTTOM = Const(False)

_BINARY_SYMBOL = {And: "&", Or: "|", Implies: "->", Iff: "<->"}
# binding strength, higher binds tighter
_PRECEDENCE = {Iff: 1, Implies: 2, Or: 3, And: 4}


def atoms_of(f: Formula) -> set[str]:
    if isinstance(f, Atom):
        return {f.name}
    if isinstance(f, Const):
        return set()
    if isinstance(f, Not):
        return atoms_of(f.arg)
    return atoms_of(f.left) | atoms_of(f.right)


def to_text(f: Formula) -> str:
    """Render ``f`` in the input grammar, with only the parentheses it needs."""
    if isinstance(f, Const):
        return "true" if f.value else "false"
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Not):
        inner = to_text(f.arg)
        if not isinstance(f.arg, (Atom, Const, Not)):
            inner = f"({inner})"
        return "~" + inner
    kind = type(f)
    prec = _PRECEDENCE[kind]
    left, right = to_text(f.left), to_text(f.right)
    lp = _PRECEDENCE.get(type(f.left), 99)
    rp = _PRECEDENCE.get(type(f.right), 99)
    if kind in (Implies, Iff):
        # right-associative
        if lp <= prec:
            left = f"({left})"
        if rp < prec:
            right = f"({right})"
    else:
        if lp < prec:
            left = f"({left})"
        if rp <= prec:
            right = f"({right})"
    return f"{left} {_BINARY_SYMBOL[kind]} {right}"


# --- parsing --------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(<->)|(->)|([~&|()])|([A-Za-z_][A-Za-z0-9_]*))")


def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", pos)
        tok = m.group(m.lastindex)
        tokens.append((tok, m.start(m.lastindex)))
        pos = m.end()
    tokens.append(("", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, vocab: Vocabulary):
        self.tokens = _tokenize(text)
        self.i = 0
        self.vocab = vocab

    def peek(self) -> str:
        return self.tokens[self.i][0]

    def advance(self) -> tuple[str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, what: str):
        tok, pos = self.tokens[self.i]
        found = repr(tok) if tok else "end of input"
        raise FormulaSyntaxError(f"expected {what}, found {found}", pos)

    def parse(self) -> Formula:
        f = self.iff()
        if self.peek() != "":
            self.fail("end of input")
        return f

    def iff(self) -> Formula:
        left = self.implies()
        if self.peek() == "<->":
            self.advance()
            return Iff(left, self.iff())
        return left

    def implies(self) -> Formula:
        left = self.disj()
        if self.peek() == "->":
            self.advance()
            return Implies(left, self.implies())
        return left

    def disj(self) -> Formula:
        f = self.conj()
        while self.peek() == "|":
            self.advance()
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.unary()
        while self.peek() == "&":
            self.advance()
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        tok, pos = self.tokens[self.i]
        if tok == "~":
            self.advance()
            return Not(self.unary())
        if tok == "(":
            self.advance()
            f = self.iff()
            if self.peek() != ")":
                self.fail("')'")
            self.advance()
            return f
        if tok == "true":
            self.advance()
            return TOP
        if tok == "false":
            self.advance()
            return BOTTOM
        if tok and (tok[0].isalpha() or tok[0] == "_"):
            self.advance()
            if tok not in self.vocab.atoms:
                raise UnknownAtomError(tok)
            return Atom(tok)
        self.fail("a formula")


def parse(text: str, vocab: Vocabulary) -> Formula:
    """Parse ``text`` into a formula over ``vocab``.

    Precedence from loosest to tightest is ``<->``, ``->``, ``|``, ``&``,
    ``~``; the two arrows associate to the right.
    """
    return _Parser(text, vocab).parse()


# --- semantics ------------------------------------------------------------

@dataclass(frozen=True)
class ModelSet:
    vocab: Vocabulary
    mask: int

    def __contains__(self, u: int) -> bool:
        return bool((self.mask >> u) & 1)

    def __iter__(self) -> Iterator[int]:
        m = self.mask
        u = 0
        while m:
            if m & 1:
                yield u
            m >>= 1
            u += 1

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __le__(self, other: "ModelSet") -> bool:
        return self.mask & ~other.mask == 0

    def __and__(self, other: "ModelSet") -> "ModelSet":
        return ModelSet(self.vocab, self.mask & other.mask)

    @property
    def empty(self) -> bool:
        return self.mask == 0

    @classmethod
    def of(cls, vocab: Vocabulary, interpretations) -> "ModelSet":
        mask = 0
        for u in interpretations:
            if not 0 <= u < vocab.size:
                raise ValueError(f"interpretation {u} out of range")
            mask |= 1 << u
        return cls(vocab, mask)

    def to_bits(self) -> list[str]:
        return [self.vocab.bits(u) for u in self]


def _mask(f: Formula, vocab: Vocabulary, atom_masks: dict[str, int]) -> int:
    full = vocab.full_mask
    if isinstance(f, Const):
        return full if f.value else 0
    if isinstance(f, Atom):
        if f.name not in atom_masks:
            atom_masks[f.name] = vocab.atom_mask(vocab.index_of(f.name))
        return atom_masks[f.name]
    if isinstance(f, Not):
        return full & ~_mask(f.arg, vocab, atom_masks)
    a = _mask(f.left, vocab, atom_masks)
    b = _mask(f.right, vocab, atom_masks)
    if isinstance(f, And):
        return a & b
    if isinstance(f, Or):
        return a | b
    if isinstance(f, Implies):
        return (full & ~a) | b
    if isinstance(f, Iff):
        return full & ~(a ^ b)
    raise TypeError(f"not a formula: {f!r}")


def models(f: Formula, vocab: Vocabulary) -> ModelSet:
    return ModelSet(vocab, _mask(f, vocab, {}))


def evaluate(f: Formula, vocab: Vocabulary, u: int) -> bool:
    """Truth value of ``f`` under the single interpretation ``u``."""
    if isinstance(f, Const):
        return f.value
    if isinstance(f, Atom):
        return vocab.value(u, vocab.index_of(f.name))
    if isinstance(f, Not):
        return not evaluate(f.arg, vocab, u)
    a = evaluate(f.left, vocab, u)
    b = evaluate(f.right, vocab, u)
    if isinstance(f, And):
        return a and b
    if isinstance(f, Or):
        return a or b
    if isinstance(f, Implies):
        return (not a) or b
    return a == b


def entails(f: Formula, g: Formula, vocab: Vocabulary) -> bool:
    return models(f, vocab) <= models(g, vocab)


def is_tautology(f: Formula, vocab: Vocabulary) -> bool:
    return models(f, vocab).mask == vocab.full_mask


def dist(u: int, v: int) -> int:
    """Number of atoms on which two interpretations differ."""
    return (u ^ v).bit_count()


def dist_to_models(ms: ModelSet, u: int) -> int:
    if ms.empty:
        raise InconsistentKnowledgeBaseError("distance to an inconsistent knowledge base")
    return min(dist(u, v) for v in ms)


def dist_kb(f: Formula, vocab: Vocabulary, u: int) -> int:
    return dist_to_models(models(f, vocab), u)


def minterm(vocab: Vocabulary, u: int) -> Formula:
    lits = [Atom(a) if vocab.value(u, i) else Not(Atom(a)) for i, a in enumerate(vocab.atoms)]
    f = lits[0]
    for lit in lits[1:]:
        f = And(f, lit)
    return f


def canonical_formula(ms: ModelSet) -> Formula:
    """Minterm DNF of a model set, models in ascending index order."""
    terms = [minterm(ms.vocab, u) for u in ms]
    if not terms:
        return BOTTOM
    f = terms[0]
    for t in terms[1:]:
        f = Or(f, t)
    return f
