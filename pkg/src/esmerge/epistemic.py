"""Epistemic states: total rank functions from interpretations to naturals.

Rank 0 marks the most plausible interpretations; the associated knowledge
base is the set of rank-0 interpretations.  Ranks are bounded by the 64-bit
unsigned range and every arithmetic helper here refuses to leave it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import RankOverflowError, VocabularyMismatchError
from .logic import Formula, ModelSet, Vocabulary, canonical_formula, dist_to_models, models

RANK_MAX = 2**64 - 1


def checked(value: int) -> int:
    if value < 0 or value > RANK_MAX:
        raise RankOverflowError(f"rank {value} outside the 64-bit unsigned range")
    return value


def checked_add(a: int, b: int) -> int:
    return checked(a + b)


def checked_mul(a: int, b: int) -> int:
    return checked(a * b)


@dataclass(frozen=True)
class EpistemicState:
    vocab: Vocabulary
    ranks: tuple[int, ...]

    def __post_init__(self):
        ranks = tuple(int(r) for r in self.ranks)
        object.__setattr__(self, "ranks", ranks)
        if len(ranks) != self.vocab.size:
            raise ValueError(
                f"state needs {self.vocab.size} ranks, got {len(ranks)}"
            )
        for r in ranks:
            checked(r)

    @classmethod
    def from_mapping(cls, vocab: Vocabulary, mapping: dict[str, int]) -> "EpistemicState":
        """Build from ``{"10": 1, ...}`` with every interpretation present."""
        ranks = [None] * vocab.size
        for bits, r in mapping.items():
            ranks[vocab.parse_bits(bits)] = r
        missing = [vocab.bits(u) for u, r in enumerate(ranks) if r is None]
        if missing:
            raise ValueError(f"no rank given for {', '.join(missing)}")
        return cls(vocab, tuple(ranks))

    @classmethod
    def constant(cls, vocab: Vocabulary, rank: int = 0) -> "EpistemicState":
        return cls(vocab, (rank,) * vocab.size)

    def __call__(self, u: int) -> int:
        return self.ranks[u]

    def __len__(self) -> int:
        return len(self.ranks)

    def as_mapping(self) -> dict[str, int]:
        return {self.vocab.bits(u): r for u, r in enumerate(self.ranks)}

    def __str__(self) -> str:
        return " ".join(f"{b}:{r}" for b, r in self.as_mapping().items())


@dataclass(frozen=True)
class KnowledgeBaseView:
    model_set: ModelSet
    canonical_formula: Formula

    @property
    def consistent(self) -> bool:
        return not self.model_set.empty


def min_rank(s: EpistemicState) -> int:
    return min(s.ranks)


def max_rank(s: EpistemicState) -> int:
    return max(s.ranks)


def normalize(s: EpistemicState) -> EpistemicState:
    m = min(s.ranks)
    if m == 0:
        return s
    return EpistemicState(s.vocab, tuple(r - m for r in s.ranks))


def zero_set(s: EpistemicState) -> ModelSet:
    mask = 0
    for u, r in enumerate(s.ranks):
        if r == 0:
            mask |= 1 << u
    return ModelSet(s.vocab, mask)


def knowledge_base(s: EpistemicState) -> KnowledgeBaseView:
    ms = zero_set(s)
    return KnowledgeBaseView(ms, canonical_formula(ms))


def from_models(ms: ModelSet) -> EpistemicState:
    """Dalal lifting of a model set: rank = Hamming distance to the nearest model."""
    return EpistemicState(ms.vocab, tuple(dist_to_models(ms, u) for u in range(ms.vocab.size)))


def from_dalal(f: Formula, vocab: Vocabulary) -> EpistemicState:
    return from_models(models(f, vocab))


def same_vocabulary(states: Iterable[EpistemicState]) -> Vocabulary:
    states = list(states)
    vocab = states[0].vocab
    for s in states[1:]:
        if s.vocab.atoms != vocab.atoms:
            raise VocabularyMismatchError(
                f"vocabularies differ: {' '.join(vocab.atoms)} vs {' '.join(s.vocab.atoms)}"
            )
    return vocab


def states_equal(a: EpistemicState, b: EpistemicState) -> bool:
    same_vocabulary([a, b])
    return a.ranks == b.ranks


def induced_preorder_equal(a: EpistemicState, b: EpistemicState) -> bool:
    """True iff both states order every pair of interpretations the same way."""
    same_vocabulary([a, b])
    n = len(a.ranks)
    return all(
        (a.ranks[u] <= a.ranks[v]) == (b.ranks[u] <= b.ranks[v])
        for u in range(n)
        for v in range(n)
    )


def list_max(states: Sequence[EpistemicState]) -> int:
    return max(max(s.ranks) for s in states)
