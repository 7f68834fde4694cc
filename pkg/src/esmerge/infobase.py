"""Infobases: lists of formulas read as independent pieces of evidence.

An interpretation is more plausible the more (non-tautological) formulas of
the infobase it satisfies.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .epistemic import EpistemicState
from .errors import EmptyListError
from .logic import Formula, Vocabulary, models
from .operators import OperatorId, merge


@dataclass(frozen=True)
class Infobase:
    vocab: Vocabulary
    wffs: tuple[Formula, ...] = ()

    def __add__(self, other: "Infobase") -> "Infobase":
        self.vocab.check_same(other.vocab)
        return Infobase(self.vocab, self.wffs + other.wffs)


def _masks(ib: Infobase) -> list[int]:
    """Model sets of the counted formulas; tautologies are dropped."""
    full = ib.vocab.full_mask
    out = []
    for f in ib.wffs:
        mask = models(f, ib.vocab).mask
        if mask != full:
            out.append(mask)
    return out


def ib_number(ib: Infobase, u: int) -> int:
    """How many non-tautological formulas of ``ib`` have ``u`` as a model."""
    return sum((mask >> u) & 1 for mask in _masks(ib))


def state_from_infobase(ib: Infobase) -> EpistemicState:
    masks = _masks(ib)
    counts = [sum((m >> u) & 1 for m in masks) for u in range(ib.vocab.size)]
    top = max(counts)
    return EpistemicState(ib.vocab, tuple(top - c for c in counts))


def epistemic_list_from(bases: Sequence[Infobase]) -> list[EpistemicState]:
    if not bases:
        raise EmptyListError("an infobase list needs at least one infobase")
    return [state_from_infobase(ib) for ib in bases]


def concatenate(bases: Sequence[Infobase]) -> Infobase:
    if not bases:
        raise EmptyListError("an infobase list needs at least one infobase")
    out = bases[0]
    for ib in bases[1:]:
        out = out + ib
    return out


def sigma_concat_identity_check(bases: Sequence[Infobase]) -> bool:
    """Summing the states of the bases equals the state of their concatenation."""
    merged = merge(OperatorId.SIGMA, epistemic_list_from(bases))
    return merged.ranks == state_from_infobase(concatenate(bases)).ranks
