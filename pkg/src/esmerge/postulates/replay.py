"""Re-evaluate a counterexample through the public merging API.

:func:`replay` recomputes every merge a witness needs with
:func:`esmerge.operators.merge` (never the batch kernels) and returns
whether the instance really violates the postulate.
"""

from __future__ import annotations

from ..epistemic import EpistemicState, from_models, zero_set
from ..logic import ModelSet
from ..operators import merge
from .core import Verdict
from .epistemic_checks import maj_stabilization


def _sorted_column(states, u):
    return sorted(s(u) for s in states)


def _zero(op, states) -> int:
    return zero_set(merge(op, list(states))).mask


def _subset(a: int, b: int) -> bool:
    return a & ~b == 0


def _epistemic(name, op, w) -> bool:
    if name == "E1":
        return min(merge(op, list(w.lists[0])).ranks) != 0
    if name in ("E2", "E3", "E4", "Unit"):
        (states,) = w.lists
        d = merge(op, list(states))
        u, v = w.u, w.v
        cu = [s(u) for s in states]
        cv = [s(v) for s in states]
        if name == "E2":
            return len(set(cu)) == 1 and sorted(cu) < sorted(cv) and not d(u) < d(v)
        if name == "E3":
            return all(a <= b for a, b in zip(cu, cv)) and not d(u) <= d(v)
        if name == "E4":
            return d(u) <= d(v) and not any(a <= b for a, b in zip(cu, cv))
        return cu == cv and d(u) != d(v)
    if name in ("E5", "E6"):
        parts = [merge(op, list(e)) for e in w.lists]
        joint = merge(op, [s for e in w.lists for s in e])
        each = [p(w.u) <= p(w.v) for p in parts]
        together = joint(w.u) <= joint(w.v)
        if name == "E5":
            return all(each) and not together
        return together and not any(each)
    if name == "Comm":
        first, second = w.lists
        return sorted(first, key=lambda s: s.ranks) == sorted(second, key=lambda s: s.ranks) and (
            merge(op, list(first)).ranks != merge(op, list(second)).ranks
        )
    if name == "Arb":
        e, (phi,) = w.lists
        return merge(op, list(e) + [phi]).ranks != merge(op, list(e) + [phi] * w.n).ranks
    if name == "Maj":
        e, (phi,) = w.lists
        n_u = phi.vocab.size
        for n in range(1, w.n + 1):
            d = merge(op, list(e) + [phi] * n)
            if all(phi(u) <= phi(v) for u in range(n_u) for v in range(n_u) if d(u) <= d(v)):
                return False
        return w.n >= maj_stabilization(op, len(e), max(max(s.ranks) for s in list(e) + [phi]))
    raise ValueError(f"no epistemic postulate {name}")


def _knowledge(name, op, w) -> bool:
    if name == "KP1":
        return _zero(op, w.lists[0]) == 0
    if name == "KP2":
        (e,) = w.lists
        conj = (1 << e[0].vocab.size) - 1
        for s in e:
            conj &= zero_set(s).mask
        return conj != 0 and _zero(op, e) != conj
    if name == "KP3":
        first, second = w.lists
        same = sorted(zero_set(s).mask for s in first) == sorted(zero_set(s).mask for s in second)
        return same and _zero(op, first) != _zero(op, second)
    if name == "KP4":
        (e,) = w.lists
        a, b = (zero_set(s).mask for s in e)
        return a & b == 0 and _subset(_zero(op, e), a)
    if name in ("KP5", "KP6"):
        e1, e2 = w.lists
        both = _zero(op, e1) & _zero(op, e2)
        joint = _zero(op, list(e1) + list(e2))
        if name == "KP5":
            return not _subset(both, joint)
        return both != 0 and not _subset(joint, both)
    if name == "arb":
        e, (phi,) = w.lists
        return _zero(op, list(e) + [phi]) != _zero(op, list(e) + [phi] * w.n)
    if name == "maj":
        e, (phi,) = w.lists
        target = zero_set(phi).mask
        if any(_subset(_zero(op, list(e) + [phi] * n), target) for n in range(1, w.n + 1)):
            return False
        return w.n >= maj_stabilization(op, len(e), max(max(s.ranks) for s in list(e) + [phi]))
    raise ValueError(f"no knowledge-base postulate {name}")


def _dalal_consistent(w) -> bool:
    """Dalal-lifted witnesses must list exactly the Dalal states of their bases."""
    for states, masks in zip(w.lists, w.knowledge):
        for s, mask in zip(states, masks):
            if s.ranks != from_models(ModelSet(s.vocab, mask)).ranks:
                return False
    return True


def replay(verdict: Verdict) -> bool:
    """True when the verdict's witness violates its postulate under :func:`merge`."""
    w = verdict.witness
    if w is None:
        raise ValueError("only violated verdicts carry a witness")
    if verdict.lifting is None:
        return _epistemic(verdict.postulate, verdict.operator, w)
    if verdict.lifting == "dalal" and not _dalal_consistent(w):
        return False
    return _knowledge(verdict.postulate, verdict.operator, w)
