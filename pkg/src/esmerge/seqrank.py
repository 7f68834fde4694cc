"""Rank sequences, candidate sequence spaces and dense ranking within them.

A rank sequence is a plain tuple of naturals.  A :class:`SequenceSpace` is
the set of all length-``k`` sequences with entries in ``0..bound``,
optionally restricted to the non-decreasing or non-increasing ones.  The
function :func:`omega_rank` numbers the key-classes of a space from 0 in the
order of a :class:`SequenceOrder`; tied sequences share a number (dense
ranking).
"""

from __future__ import annotations

import bisect
import enum
import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Sequence

from .epistemic import checked
from .errors import EmptyListError, SequenceNotInSpaceError, SpaceTooLargeError

DEFAULT_SEQ_LIMIT = 2**20

RankSequence = tuple  # tuple[int, ...]


class SpaceKind(enum.Enum):
    ALL = "all"
    NONDECREASING = "non-decreasing"
    NONINCREASING = "non-increasing"


@dataclass(frozen=True)
class SequenceSpace:
    kind: SpaceKind
    length: int
    bound: int

    def __post_init__(self):
        if self.length < 1:
            raise ValueError("sequence length must be at least 1")
        if self.bound < 0:
            raise ValueError("bound must be non-negative")

    @property
    def size(self) -> int:
        if self.kind is SpaceKind.ALL:
            return (self.bound + 1) ** self.length
        return comb(self.bound + self.length, self.length)

    def __contains__(self, s) -> bool:
        if len(s) != self.length or any(not 0 <= x <= self.bound for x in s):
            return False
        if self.kind is SpaceKind.NONDECREASING:
            return all(a <= b for a, b in zip(s, s[1:]))
        if self.kind is SpaceKind.NONINCREASING:
            return all(a >= b for a, b in zip(s, s[1:]))
        return True

    def __iter__(self):
        """Sequences of the space in lexicographic order."""
        values = range(self.bound + 1)
        if self.kind is SpaceKind.ALL:
            return itertools.product(values, repeat=self.length)
        if self.kind is SpaceKind.NONDECREASING:
            return itertools.combinations_with_replacement(values, self.length)
        # complementing each entry of a non-decreasing tuple reverses lex order
        b = self.bound
        ups = itertools.combinations_with_replacement(values, self.length)
        return (tuple(b - x for x in c) for c in reversed(list(ups)))

    def require(self, s) -> None:
        if s not in self:
            raise SequenceNotInSpaceError(f"{tuple(s)} is not in {self}")


def d_measure(s: Sequence[int]) -> int:
    """Sum of ``|s_i - s_j|`` over all index pairs ``i < j``."""
    # over the sorted sequence each x_j contributes x_j * (2j - (k - 1))
    k = len(s)
    return sum(x * (2 * j - k + 1) for j, x in enumerate(sorted(s)))


def sum_measure(s: Sequence[int]) -> int:
    return checked(sum(s))


class SequenceOrder(enum.Enum):
    """Total preorders on rank sequences, given by a sort key."""

    LEX = "lex"
    D = "d"
    D_LEX = "d,lex"
    SUM_D = "sum,d"

    def key(self, s: Sequence[int]):
        if self is SequenceOrder.LEX:
            return tuple(s)
        if self is SequenceOrder.D:
            return d_measure(s)
        if self is SequenceOrder.D_LEX:
            return (d_measure(s), tuple(s))
        return (sum_measure(s), d_measure(s))


@lru_cache(maxsize=256)
def _class_keys(space: SequenceSpace, order: SequenceOrder) -> list:
    return sorted({order.key(s) for s in space})


def omega_rank(
    space: SequenceSpace,
    order: SequenceOrder,
    s: Sequence[int],
    limit: int = DEFAULT_SEQ_LIMIT,
) -> int:
    """Dense rank of ``s`` among the key-classes of ``space`` under ``order``.

    Enumerates the space once per (space, order) pair and caches the sorted
    class keys.  Raises :class:`SpaceTooLargeError` when the space holds more
    than ``limit`` sequences.
    """
    s = tuple(s)
    space.require(s)
    if space.size > limit:
        raise SpaceTooLargeError(
            f"{space.kind.value} space of length {space.length}, bound {space.bound} "
            f"has {space.size} sequences (limit {limit})"
        )
    keys = _class_keys(space, order)
    return bisect.bisect_left(keys, order.key(s))


def lex_rank_closed_form(space: SequenceSpace, s: Sequence[int]) -> int:
    """``omega_rank(space, LEX, s)`` without enumerating the space."""
    s = tuple(s)
    space.require(s)
    k, b = space.length, space.bound
    if space.kind is SpaceKind.ALL:
        r = 0
        for x in s:
            r = r * (b + 1) + x
        return checked(r)
    r = 0
    if space.kind is SpaceKind.NONDECREASING:
        lo = 0
        for i, x in enumerate(s):
            m = k - i - 1
            # smaller entry y at position i, then any non-decreasing tail in y..b
            r += sum(comb(b - y + m, m) for y in range(lo, x))
            lo = x
    else:
        for i, x in enumerate(s):
            m = k - i - 1
            # smaller entry y at position i, then any non-increasing tail in 0..y
            r += sum(comb(y + m, m) for y in range(x))
    return checked(r)


class Variant(enum.Enum):
    AS_IS = "as-is"
    SORTED_UP = "sorted-up"
    SORTED_DOWN = "sorted-down"


def realized_sequence(states, u: int, variant: Variant = Variant.AS_IS) -> RankSequence:
    """The ranks the states of a list give to ``u``, optionally sorted."""
    if not states:
        raise EmptyListError("epistemic list is empty")
    s = tuple(st.ranks[u] for st in states)
    if variant is Variant.SORTED_UP:
        return tuple(sorted(s))
    if variant is Variant.SORTED_DOWN:
        return tuple(sorted(s, reverse=True))
    return s
