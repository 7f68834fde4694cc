"""Knowledge-base level postulates for the merges induced by each operator.

A knowledge list is turned into an epistemic list by a *lifting* and merged;
the induced result is the model set of the merged state's rank-0 points.

``"dalal"``
    Each knowledge base becomes its Dalal-distance state.  Knowledge lists
    range over one canonical base per non-empty model set.
``"state"``
    The knowledge bases are the associated bases of arbitrary epistemic
    states.  Knowledge lists range over lists of normalised states (states
    with a consistent associated base) within the rank bound, so this
    lifting tests the postulates on the epistemic operators themselves.
"""

from __future__ import annotations

import itertools
from typing import Sequence

import numpy as np

from ..epistemic import from_models, knowledge_base
from ..errors import InconsistentKnowledgeBaseError, SpaceTooLargeError
from ..kernels import batch_merge
from ..logic import ModelSet, Vocabulary
from ..operators import OperatorId, merge
from .core import (
    SearchBounds,
    SearchConfig,
    Status,
    Verdict,
    Witness,
    list_index_chunks,
    state_array,
    to_states,
)
from .epistemic_checks import _repeat_last, maj_stabilization

LIFTINGS = ("dalal", "state")


def induced_kb_merge(
    op: OperatorId, kbs: Sequence[ModelSet], vocab: Vocabulary | None = None
):
    """Merge a knowledge list through the Dalal lifting of its elements."""
    if not kbs:
        from ..errors import EmptyListError

        raise EmptyListError("cannot merge an empty knowledge list")
    for ms in kbs:
        if ms.empty:
            raise InconsistentKnowledgeBaseError("knowledge lists hold consistent bases only")
    return knowledge_base(merge(op, [from_models(ms) for ms in kbs]))


class _Items:
    """The knowledge bases a lifting quantifies over, as states plus zero sets."""

    def __init__(self, bounds: SearchBounds, lifting: str):
        if lifting not in LIFTINGS:
            raise ValueError(f"unknown lifting {lifting!r}")
        self.lifting = lifting
        self.vocab = bounds.vocabulary()
        n = self.vocab.size
        if lifting == "dalal":
            masks = range(1, 1 << n)
            self.states = np.array(
                [from_models(ModelSet(self.vocab, m)).ranks for m in masks], dtype=np.int64
            )
        else:
            everything = state_array(n, bounds.max_rank)
            self.states = everything[everything.min(axis=1) == 0]
        self.zero = self.states == 0
        self.count, self.n = self.states.shape
        self.max_rank = int(self.states.max())

    def witness_lists(self, *index_lists) -> tuple:
        lists = tuple(to_states(self.vocab, self.states[list(ix)]) for ix in index_lists)
        knowledge = tuple(
            tuple(int(np.dot(self.zero[i], 1 << np.arange(self.n))) for i in ix) for ix in index_lists
        )
        return lists, knowledge


def _zero_sets(op, stack, config) -> np.ndarray:
    lengths = np.full(len(stack), stack.shape[1], dtype=np.int64)
    return batch_merge(op, stack, lengths, seq_limit=config.seq_limit) == 0


def _subset(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return ~(a & ~b).any(axis=-1)


def _verdict(name, op, bounds, lifting, hit_or_none, instances, note=""):
    if hit_or_none is None:
        return Verdict(name, op, bounds, Status.HOLDS, None, instances, lifting, note)
    return Verdict(name, op, bounds, Status.VIOLATED, hit_or_none, instances, lifting, note)


def _single_list_scan(name, op, bounds, config, items, ks, bad_rows):
    instances = config.charge(sum(items.count**k for k in ks) * items.n, name)
    for k in ks:
        for offset, idx in list_index_chunks(items.count, k):
            delta = _zero_sets(op, items.states[idx], config)
            bad = bad_rows(idx, delta)
            if bad.any():
                row = int(bad.argmax())
                lists, knowledge = items.witness_lists(idx[row])
                return Witness(lists, knowledge=knowledge), instances
    return None, instances


def _kp1(op, bounds, config, items):
    return _single_list_scan(
        "KP1", op, bounds, config, items, range(1, bounds.list_len + 1),
        lambda idx, delta: ~delta.any(axis=1),
    )


def _kp2(op, bounds, config, items):
    def bad(idx, delta):
        conj = items.zero[idx].all(axis=1)
        return conj.any(axis=1) & (delta != conj).any(axis=1)

    return _single_list_scan("KP2", op, bounds, config, items, range(1, bounds.list_len + 1), bad)


def _kp4(op, bounds, config, items):
    def bad(idx, delta):
        first, second = items.zero[idx[:, 0]], items.zero[idx[:, 1]]
        disjoint = ~(first & second).any(axis=1)
        return disjoint & _subset(delta, first)

    return _single_list_scan("KP4", op, bounds, config, items, [2], bad)


def _kp3(op, bounds, config, items):
    """Lists with the same multiset of knowledge bases must merge to the same base."""
    ks = range(2, bounds.list_len + 1)
    instances = config.charge(sum(items.count**k for k in ks) * items.n, "KP3")
    # knowledge base identity as an integer label per item
    _, labels = np.unique(items.zero, axis=0, return_inverse=True)
    labels = labels.ravel()
    for k in ks:
        seen: dict[tuple, tuple] = {}
        for offset, idx in list_index_chunks(items.count, k):
            delta = _zero_sets(op, items.states[idx], config)
            keys = np.sort(labels[idx], axis=1)
            for row in range(len(idx)):
                key = tuple(keys[row])
                if key not in seen:
                    seen[key] = (idx[row], delta[row])
                elif (seen[key][1] != delta[row]).any():
                    lists, knowledge = items.witness_lists(seen[key][0], idx[row])
                    return Witness(lists, knowledge=knowledge), instances
    return None, instances


def _pair_scan(name, op, bounds, config, items):
    ks = range(1, bounds.list_len + 1)
    shapes = sorted(itertools.product(ks, repeat=2), key=lambda s: (sum(s), s))
    instances = 0
    singles = {}
    for k in ks:
        singles[k] = np.concatenate(
            [_zero_sets(op, items.states[idx], config) for _, idx in list_index_chunks(items.count, k)]
        )
    for k1, k2 in shapes:
        instances = config.charge(instances + items.count ** (k1 + k2) * items.n, name)
        for offset, idx in list_index_chunks(items.count, k1 + k2):
            joint = _zero_sets(op, items.states[idx], config)
            d1 = singles[k1][np.ravel_multi_index(tuple(idx[:, :k1].T), (items.count,) * k1)]
            d2 = singles[k2][np.ravel_multi_index(tuple(idx[:, k1:].T), (items.count,) * k2)]
            both = d1 & d2
            if name == "KP5":
                bad = ~_subset(both, joint)
            else:
                bad = both.any(axis=1) & ~_subset(joint, both)
            if bad.any():
                row = int(bad.argmax())
                lists, knowledge = items.witness_lists(idx[row, :k1], idx[row, k1:])
                return Witness(lists, knowledge=knowledge), instances
    return None, instances


_KP = {1: _kp1, 2: _kp2, 3: _kp3, 4: _kp4, 5: _pair_scan, 6: _pair_scan}


def default_lifting(k: int) -> str:
    """KP4 is stated for the bases of merged epistemic states; the rest via Dalal."""
    return "state" if k == 4 else "dalal"


def check_KP(k: int, op: OperatorId, bounds: SearchBounds, config: SearchConfig | None = None,
             lifting: str | None = None) -> Verdict:
    """Bounded check of (KP``k``) for the knowledge-base merge induced by ``op``.

    Knowledge lists have length 1..list_len; (KP4) uses two-element lists
    and (KP5)/(KP6) pairs of lists.
    """
    config = config or SearchConfig()
    lifting = lifting or default_lifting(k)
    items = _Items(bounds, lifting)
    if k not in _KP:
        raise ValueError(f"no postulate KP{k}")
    name = f"KP{k}"
    if k in (5, 6):
        witness, instances = _pair_scan(name, op, bounds, config, items)
    else:
        witness, instances = _KP[k](op, bounds, config, items)
    return _verdict(name, op, bounds, lifting, witness, instances)


def check_kp_arb_maj(which: str, op: OperatorId, bounds: SearchBounds,
                     config: SearchConfig | None = None, lifting: str = "dalal") -> Verdict:
    """(arb): ``e + [phi]*n`` and ``e + [phi]`` merge to equivalent bases.
    (maj): for some ``n`` the merge of ``e + [phi]*n`` entails ``phi``.

    ``e`` has length 0..list_len.  For (maj) the repetition search runs to
    the stabilisation point of the operator, which makes the verdict exact.
    """
    config = config or SearchConfig()
    items = _Items(bounds, lifting)
    ks = range(1, bounds.list_len + 2)
    if which == "arb":
        reps = range(2, bounds.rep_bound + 1)
        instances = config.charge(sum(items.count**k for k in ks) * len(reps) * items.n, "arb")
        for k in ks:
            for offset, idx in list_index_chunks(items.count, k):
                stack = items.states[idx]
                once = _zero_sets(op, stack, config)
                for n in reps:
                    bad = (_zero_sets(op, _repeat_last(stack, n), config) != once).any(axis=1)
                    if bad.any():
                        row = int(bad.argmax())
                        lists, knowledge = items.witness_lists(idx[row, :-1], idx[row, -1:])
                        witness = Witness(lists, n=n, knowledge=knowledge)
                        return _verdict("arb", op, bounds, lifting, witness, instances)
        return _verdict("arb", op, bounds, lifting, None, instances)
    if which != "maj":
        raise ValueError(f"expected 'arb' or 'maj', got {which!r}")
    horizon = {k: max(bounds.rep_bound, maj_stabilization(op, k - 1, items.max_rank)) for k in ks}
    instances = config.charge(sum(items.count**k * horizon[k] * items.n for k in ks), "maj")
    try:
        for k in ks:
            for offset, idx in list_index_chunks(items.count, k):
                stack = items.states[idx]
                target = items.zero[idx[:, -1]]
                satisfied = np.zeros(len(stack), dtype=bool)
                for n in range(1, horizon[k] + 1):
                    satisfied |= _subset(_zero_sets(op, _repeat_last(stack, n), config), target)
                    if satisfied.all():
                        break
                if not satisfied.all():
                    row = int((~satisfied).argmax())
                    lists, knowledge = items.witness_lists(idx[row, :-1], idx[row, -1:])
                    witness = Witness(
                        lists, n=horizon[k], knowledge=knowledge,
                        note=f"no n <= {horizon[k]} works; the merged order is fixed from n = "
                             f"{maj_stabilization(op, k - 1, items.max_rank)} on",
                    )
                    return _verdict("maj", op, bounds, lifting, witness, instances)
    except SpaceTooLargeError as exc:
        return Verdict("maj", op, bounds, Status.UNKNOWN, None, instances, lifting, str(exc))
    return _verdict("maj", op, bounds, lifting, None, instances)
