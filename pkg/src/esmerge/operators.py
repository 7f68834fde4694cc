"""The nine merging operators on epistemic lists.

Every operator works in two steps.  First it gives each interpretation ``u``
a pre-rank computed from the column ``s = (Phi_1(u), ..., Phi_k(u))`` and
the list bound ``max(E)``.  Then it normalises, subtracting the smallest
pre-rank.  The pre-rank rule is the only thing that varies:

========  ==============================================================
``ls``    ``2*min(s)``, plus 1 unless all entries agree
``rls``   lex dense rank of ``sorted(s)`` among non-decreasing sequences
``max``   ``max(s)``
``gmax``  lex dense rank of ``sorted(s, reverse=True)`` among
          non-increasing sequences
``cons``  dense rank of ``s`` keyed by pairwise disagreement ``d``
``rcons`` dense rank of ``sorted(s)`` keyed by ``(d, lex)``
``sigma`` ``sum(s)``
``rsigma`` dense rank of ``s`` keyed by ``(sum, d)``
``lex``   lex dense rank of ``s`` (earlier states are more reliable)
========  ==============================================================
"""

from __future__ import annotations

import enum
import itertools
from functools import lru_cache
from typing import Sequence

import numpy as np

from .epistemic import EpistemicState, checked, checked_add, checked_mul, same_vocabulary
from .errors import EmptyListError, SpaceTooLargeError
from .seqrank import (
    DEFAULT_SEQ_LIMIT,
    SequenceOrder,
    SequenceSpace,
    SpaceKind,
    lex_rank_closed_form,
    omega_rank,
)


class OperatorId(enum.Enum):
    LS = "ls"
    RLS = "rls"
    MAX = "max"
    GMAX = "gmax"
    CONS = "cons"
    RCONS = "rcons"
    SIGMA = "sigma"
    RSIGMA = "rsigma"
    LEX = "lex"

    @classmethod
    def parse(cls, name: str) -> "OperatorId":
        try:
            return cls(name.strip().lower())
        except ValueError:
            names = ", ".join(op.value for op in cls)
            raise ValueError(f"unknown operator {name!r} (expected one of {names})") from None

    @property
    def label(self) -> str:
        return _LABELS[self]

    @property
    def commutative(self) -> bool:
        return self is not OperatorId.LEX


_LABELS = {
    OperatorId.LS: "ls",
    OperatorId.RLS: "Rls",
    OperatorId.MAX: "max",
    OperatorId.GMAX: "Gmax",
    OperatorId.CONS: "cons",
    OperatorId.RCONS: "Rcons",
    OperatorId.SIGMA: "sigma",
    OperatorId.RSIGMA: "Rsigma",
    OperatorId.LEX: "lex",
}

ALL_OPERATORS = tuple(OperatorId)


def pre_rank(op: OperatorId, s: Sequence[int], bound: int, seq_limit: int = DEFAULT_SEQ_LIMIT) -> int:
    """Pre-normalisation number of a column ``s`` in a list with ``max(E) = bound``."""
    s = tuple(s)
    k = len(s)
    if op is OperatorId.LS:
        low = min(s)
        agree = all(x == low for x in s)
        return checked_add(checked_mul(2, low), 0 if agree else 1)
    if op is OperatorId.MAX:
        return max(s)
    if op is OperatorId.SIGMA:
        return checked(sum(s))
    if op is OperatorId.RLS:
        return lex_rank_closed_form(SequenceSpace(SpaceKind.NONDECREASING, k, bound), sorted(s))
    if op is OperatorId.GMAX:
        return lex_rank_closed_form(
            SequenceSpace(SpaceKind.NONINCREASING, k, bound), sorted(s, reverse=True)
        )
    if op is OperatorId.LEX:
        return lex_rank_closed_form(SequenceSpace(SpaceKind.ALL, k, bound), s)
    if op is OperatorId.CONS:
        return omega_rank(SequenceSpace(SpaceKind.ALL, k, bound), SequenceOrder.D, s, seq_limit)
    if op is OperatorId.RCONS:
        return omega_rank(
            SequenceSpace(SpaceKind.NONDECREASING, k, bound), SequenceOrder.D_LEX, sorted(s), seq_limit
        )
    if op is OperatorId.RSIGMA:
        return omega_rank(SequenceSpace(SpaceKind.ALL, k, bound), SequenceOrder.SUM_D, s, seq_limit)
    raise ValueError(op)


def _check_list(states: Sequence[EpistemicState]) -> None:
    if not states:
        raise EmptyListError("cannot merge an empty epistemic list")
    same_vocabulary(states)


def pre_ranks(op: OperatorId, states: Sequence[EpistemicState], seq_limit: int = DEFAULT_SEQ_LIMIT) -> tuple[int, ...]:
    """Pre-normalisation numbers of every interpretation."""
    _check_list(states)
    bound = max(max(s.ranks) for s in states)
    cache: dict[tuple, int] = {}
    out = []
    for column in zip(*(s.ranks for s in states)):
        if column not in cache:
            cache[column] = pre_rank(op, column, bound, seq_limit)
        out.append(cache[column])
    return tuple(out)


def merge(op: OperatorId, states: Sequence[EpistemicState], seq_limit: int = DEFAULT_SEQ_LIMIT) -> EpistemicState:
    """Merge a non-empty epistemic list; the result always has a rank-0 interpretation."""
    if isinstance(op, str):
        op = OperatorId.parse(op)
    pre = pre_ranks(op, states, seq_limit)
    low = min(pre)
    return EpistemicState(states[0].vocab, tuple(r - low for r in pre))


def merge_ls(states, **kw):
    return merge(OperatorId.LS, states, **kw)


def merge_rls(states, **kw):
    return merge(OperatorId.RLS, states, **kw)


def merge_max(states, **kw):
    return merge(OperatorId.MAX, states, **kw)


def merge_gmax(states, **kw):
    return merge(OperatorId.GMAX, states, **kw)


def merge_cons(states, **kw):
    return merge(OperatorId.CONS, states, **kw)


def merge_rcons(states, **kw):
    return merge(OperatorId.RCONS, states, **kw)


def merge_sigma(states, **kw):
    return merge(OperatorId.SIGMA, states, **kw)


def merge_rsigma(states, **kw):
    return merge(OperatorId.RSIGMA, states, **kw)


def merge_lex(states, **kw):
    return merge(OperatorId.LEX, states, **kw)


@lru_cache(maxsize=1024)
def pre_rank_table(op: OperatorId, length: int, bound: int, seq_limit: int = DEFAULT_SEQ_LIMIT) -> np.ndarray:
    """Pre-ranks of every column of the given length, indexed by mixed-radix code.

    Column ``s`` has code ``sum(s[i] * (bound+1)**(length-1-i))``, so codes
    enumerate all columns in lexicographic order.
    """
    size = (bound + 1) ** length
    if size > seq_limit:
        raise SpaceTooLargeError(f"{size} columns of length {length}, bound {bound} (limit {seq_limit})")
    table = np.fromiter(
        (pre_rank(op, s, bound, seq_limit) for s in itertools.product(range(bound + 1), repeat=length)),
        dtype=np.int64,
        count=size,
    )
    table.setflags(write=False)
    return table
