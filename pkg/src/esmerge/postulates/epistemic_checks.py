"""Bounded exhaustive checks of the epistemic-level postulates.

All checkers enumerate instances in a fixed order and report the least
violating instance, so repeated runs give identical verdicts.

E2-E6 and Unit are *pair-local*: whether an instance ``(lists, u, v)``
violates them depends only on the rank columns at ``u`` and ``v``, because
every operator compares two interpretations through a key of their columns
alone (normalisation and dense ranking preserve that comparison).  E5/E6
therefore enumerate lists of states over the two points ``{u, v}``, which
covers every vocabulary with at least one atom; pass ``local=False`` to
enumerate full states instead.
"""

from __future__ import annotations

import itertools

import numpy as np

from ..errors import SpaceTooLargeError
from ..kernels import batch_merge
from ..operators import OperatorId
from .core import (
    FirstHit,
    SearchBounds,
    SearchConfig,
    Status,
    Verdict,
    Witness,
    embed_pair_states,
    lex_compare,
    list_index_chunks,
    state_array,
    to_states,
)


def _pairs(n: int) -> list[tuple[int, int]]:
    return [(u, v) for u in range(n) for v in range(n) if u != v]


def _universe(bounds: SearchBounds, local: bool) -> np.ndarray:
    n = 2 if local else bounds.vocabulary().size
    return state_array(n, bounds.max_rank)


def _states_of(bounds: SearchBounds, rows, local: bool):
    vocab = bounds.vocabulary()
    if local:
        return embed_pair_states(vocab, rows)
    return to_states(vocab, rows)


def _lengths(stack: np.ndarray) -> np.ndarray:
    return np.full(len(stack), stack.shape[1], dtype=np.int64)


def _merge(op, stack, config):
    return batch_merge(op, stack, _lengths(stack), seq_limit=config.seq_limit)


# --- single-list postulates ---------------------------------------------------

def _violates_e2(cu, cv, du, dv):
    uniform = (cu == cu[:, :1]).all(axis=1)
    below = lex_compare(np.sort(cu, axis=1), np.sort(cv, axis=1)) < 0
    return uniform & below & ~(du < dv)


def _violates_e3(cu, cv, du, dv):
    return (cu <= cv).all(axis=1) & ~(du <= dv)


def _violates_e4(cu, cv, du, dv):
    return (du <= dv) & ~(cu <= cv).any(axis=1)


def _violates_unit(cu, cv, du, dv):
    return (cu == cv).all(axis=1) & (du != dv)


_SINGLE = {"E2": _violates_e2, "E3": _violates_e3, "E4": _violates_e4, "Unit": _violates_unit}


def _scan_single(name, op, bounds, config, local):
    items = _universe(bounds, local)
    n_items, n = items.shape
    pairs = _pairs(n)
    ks = range(1, bounds.list_len + 1)
    instances = config.charge(sum(n_items**k for k in ks) * n * n, name)
    violates = _SINGLE[name]
    hit = FirstHit()
    for k in ks:
        for offset, idx in list_index_chunks(n_items, k):
            stack = items[idx]
            merged = _merge(op, stack, config)
            for p, (u, v) in enumerate(pairs):
                bad = violates(stack[:, :, u], stack[:, :, v], merged[:, u], merged[:, v])
                if bad.any():
                    row = int(bad.argmax())
                    hit.offer((k, offset + row, p), (stack[row], u, v))
            if hit.found:
                rows, u, v = hit.payload
                witness = Witness((_states_of(bounds, rows, local),), u=u, v=v)
                return Verdict(name, op, bounds, Status.VIOLATED, witness, instances)
    return Verdict(name, op, bounds, Status.HOLDS, None, instances)


def _check_e1(op, bounds, config):
    items = _universe(bounds, False)
    n_items = len(items)
    ks = range(1, bounds.list_len + 1)
    instances = config.charge(sum(n_items**k for k in ks), "E1")
    for k in ks:
        for offset, idx in list_index_chunks(n_items, k):
            stack = items[idx]
            merged = _merge(op, stack, config)
            bad = merged.min(axis=1) != 0
            if bad.any():
                row = int(bad.argmax())
                witness = Witness((_states_of(bounds, stack[row], False),))
                return Verdict("E1", op, bounds, Status.VIOLATED, witness, instances)
    return Verdict("E1", op, bounds, Status.HOLDS, None, instances)


# --- meta-lists: E5, E6 ------------------------------------------------------

def _scan_meta(name, op, bounds, config, local):
    items = _universe(bounds, local)
    n_items, n = items.shape
    pairs = _pairs(n)
    ks = range(1, bounds.list_len + 1)
    # smallest concatenations first, so cheap witnesses are found before
    # the budget is spent on large shapes
    shapes = sorted(
        (
            shape
            for m in range(2, bounds.meta_list_len + 1)
            for shape in itertools.product(ks, repeat=m)
        ),
        key=lambda s: (sum(s), len(s), s),
    )
    instances = 0
    # merged result of every single list, per length, indexed by flat list index
    singles = {}
    for k in ks:
        parts = [_merge(op, items[idx], config) for _, idx in list_index_chunks(n_items, k)]
        singles[k] = np.concatenate(parts)
    hit = FirstHit()
    for s_no, shape in enumerate(shapes):
        total = sum(shape)
        instances = config.charge(instances + n_items**total * n * n, name)
        cuts = np.cumsum((0,) + shape)
        for offset, idx in list_index_chunks(n_items, total):
            merged = _merge(op, items[idx], config)
            parts = []
            for i, k in enumerate(shape):
                seg = idx[:, cuts[i]:cuts[i + 1]]
                flat = np.ravel_multi_index(tuple(seg.T), (n_items,) * k)
                parts.append(singles[k][flat])
            for p, (u, v) in enumerate(pairs):
                each = np.stack([d[:, u] <= d[:, v] for d in parts], axis=1)
                joint = merged[:, u] <= merged[:, v]
                if name == "E5":
                    bad = each.all(axis=1) & ~joint
                else:
                    bad = joint & ~each.any(axis=1)
                if bad.any():
                    row = int(bad.argmax())
                    hit.offer((s_no, offset + row, p), (idx[row], shape, u, v))
            if hit.found:
                row_idx, shape, u, v = hit.payload
                lists = []
                for i in range(len(shape)):
                    rows = items[row_idx[cuts[i]:cuts[i + 1]]]
                    lists.append(_states_of(bounds, rows, local))
                witness = Witness(tuple(lists), u=u, v=v)
                return Verdict(name, op, bounds, Status.VIOLATED, witness, instances)
    return Verdict(name, op, bounds, Status.HOLDS, None, instances)


def check_E(k: int, op: OperatorId, bounds: SearchBounds, config: SearchConfig | None = None,
            local: bool | None = None) -> Verdict:
    """Check postulate E``k`` (1 to 6) for ``op`` over every list within ``bounds``."""
    config = config or SearchConfig()
    if k == 1:
        return _check_e1(op, bounds, config)
    if k in (2, 3, 4):
        return _scan_single(f"E{k}", op, bounds, config, bool(local))
    if k in (5, 6):
        return _scan_meta(f"E{k}", op, bounds, config, True if local is None else local)
    raise ValueError(f"no postulate E{k}")


def check_unit(op: OperatorId, bounds: SearchBounds, config: SearchConfig | None = None,
               local: bool = False) -> Verdict:
    return _scan_single("Unit", op, bounds, config or SearchConfig(), local)


def check_comm(op: OperatorId, bounds: SearchBounds, config: SearchConfig | None = None) -> Verdict:
    """Merging must not depend on the order of the list (multiset equality)."""
    config = config or SearchConfig()
    items = _universe(bounds, False)
    n_items = len(items)
    ks = range(2, bounds.list_len + 1)
    perms = {k: list(itertools.permutations(range(k)))[1:] for k in ks}
    instances = config.charge(sum(n_items**k * len(perms[k]) for k in ks), "Comm")
    for k in ks:
        for offset, idx in list_index_chunks(n_items, k):
            stack = items[idx]
            merged = _merge(op, stack, config)
            for perm in perms[k]:
                shuffled = stack[:, list(perm), :]
                bad = (_merge(op, shuffled, config) != merged).any(axis=1)
                if bad.any():
                    row = int(bad.argmax())
                    witness = Witness(
                        (_states_of(bounds, stack[row], False), _states_of(bounds, shuffled[row], False))
                    )
                    return Verdict("Comm", op, bounds, Status.VIOLATED, witness, instances)
    return Verdict("Comm", op, bounds, Status.HOLDS, None, instances)


# --- repetition postulates ----------------------------------------------------

def _repeat_last(stack: np.ndarray, n: int) -> np.ndarray:
    """Replace the last state ``Phi`` of every list by ``n`` copies of it."""
    last = stack[:, -1:, :]
    return np.concatenate([stack[:, :-1, :]] + [last] * n, axis=1)


def check_arb(op: OperatorId, bounds: SearchBounds, config: SearchConfig | None = None) -> Verdict:
    """Merging ``E + [Phi]`` and ``E + [Phi]*n`` must give identical ranks.

    ``E`` ranges over lists of length 0..list_len and ``n`` over
    2..rep_bound (``n = 1`` is the identity).
    """
    config = config or SearchConfig()
    items = _universe(bounds, False)
    n_items, n_u = items.shape
    ks = range(1, bounds.list_len + 2)
    reps = range(2, bounds.rep_bound + 1)
    instances = config.charge(sum(n_items**k for k in ks) * len(reps) * n_u, "Arb")
    for k in ks:
        for offset, idx in list_index_chunks(n_items, k):
            stack = items[idx]
            once = _merge(op, stack, config)
            for n in reps:
                bad = _merge(op, _repeat_last(stack, n), config) != once
                rows = bad.any(axis=1)
                if rows.any():
                    row = int(rows.argmax())
                    u = int(bad[row].argmax())
                    states = _states_of(bounds, stack[row], False)
                    witness = Witness((states[:-1], states[-1:]), u=u, n=n)
                    return Verdict("Arb", op, bounds, Status.VIOLATED, witness, instances)
    return Verdict("Arb", op, bounds, Status.HOLDS, None, instances)


def _dmax(k: int, r: int) -> int:
    """Largest pairwise disagreement of a length-``k`` sequence over ``0..r``."""
    return (k // 2) * ((k + 1) // 2) * r


def maj_stabilization(op: OperatorId, k: int, r: int) -> int:
    """Repetition count after which adding copies of ``Phi`` changes no comparison.

    For a list ``E`` of length ``k`` with ranks in ``0..r`` and any ``Phi``,
    every comparison ``Delta(E + Phi^n)(u) <= Delta(E + Phi^n)(v)`` is the
    same for all ``n`` at or beyond the returned value.  The reason per
    operator, writing ``a = Phi(u)`` and ``b = Phi(v)``:

    * ls, max, lex: the comparison does not depend on ``n >= 1``.
    * rls, gmax: sorted-lex order on multisets is decided by the extreme
      value whose multiplicity differs; the multiplicities of ``a`` and
      ``b`` move by ``n`` and stop flipping once ``n > k``.
    * sigma: the sum difference is ``c + n(a - b)`` with ``|c| <= k r``.
    * cons: ``d`` grows by ``n * sum|s_i - a|``, a linear function of ``n``
      whose constant is bounded by the largest ``d`` of the prefix.
    * rsigma, rcons: lexicographic combinations of the cases above.
    """
    if op in (OperatorId.LS, OperatorId.MAX, OperatorId.LEX):
        return 1
    if op in (OperatorId.RLS, OperatorId.GMAX):
        return k + 1
    if op is OperatorId.SIGMA:
        return k * r + 1
    if op is OperatorId.CONS:
        return _dmax(k, r) + 1
    if op is OperatorId.RCONS:
        return max(_dmax(k, r), k) + 1
    if op is OperatorId.RSIGMA:
        return max(k * r, _dmax(k, r)) + 1
    raise ValueError(op)


def _maj_failures(op, stack, n, config):
    """Per row, the index of the first pair (u, v) breaking Maj at ``n`` copies, or -1."""
    phi = stack[:, -1, :]
    merged = _merge(op, _repeat_last(stack, n), config)
    n_u = stack.shape[2]
    first = np.full(len(stack), -1, dtype=np.int64)
    for p, (u, v) in enumerate(_pairs(n_u)):
        bad = (merged[:, u] <= merged[:, v]) & (phi[:, u] > phi[:, v]) & (first < 0)
        first[bad] = p
    return first


def check_maj(op: OperatorId, bounds: SearchBounds, config: SearchConfig | None = None) -> Verdict:
    """Some number of copies of ``Phi`` must make the merge respect ``Phi``'s order.

    Repetition counts are searched up to ``max(rep_bound, N0)`` where ``N0``
    is :func:`maj_stabilization`; no comparison changes after ``N0``, so an
    instance still failing there fails for every ``n`` and the verdict is
    exact.  The result is ``unknown`` only when the needed tables exceed the
    sequence limit.
    """
    config = config or SearchConfig()
    items = _universe(bounds, False)
    n_items, n_u = items.shape
    ks = range(1, bounds.list_len + 2)
    horizon = {k: max(bounds.rep_bound, maj_stabilization(op, k - 1, bounds.max_rank)) for k in ks}
    instances = config.charge(sum(n_items**k * horizon[k] * n_u * n_u for k in ks), "Maj")
    try:
        for k in ks:
            top = horizon[k]
            for offset, idx in list_index_chunks(n_items, k):
                stack = items[idx]
                satisfied = np.zeros(len(stack), dtype=bool)
                for n in range(1, top + 1):
                    failing = _maj_failures(op, stack, n, config)
                    satisfied |= failing < 0
                    if satisfied.all():
                        break
                if not satisfied.all():
                    row = int((~satisfied).argmax())
                    p = int(failing[row])
                    u, v = _pairs(n_u)[p]
                    states = _states_of(bounds, stack[row], False)
                    witness = Witness(
                        (states[:-1], states[-1:]), u=u, v=v, n=top,
                        note=f"fails for every n <= {top}; comparisons are fixed from n = "
                             f"{maj_stabilization(op, k - 1, bounds.max_rank)} on",
                    )
                    return Verdict("Maj", op, bounds, Status.VIOLATED, witness, instances)
    except SpaceTooLargeError as exc:
        return Verdict("Maj", op, bounds, Status.UNKNOWN, None, instances, note=str(exc))
    return Verdict("Maj", op, bounds, Status.HOLDS, None, instances)
