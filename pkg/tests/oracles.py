"""Slow, literal re-implementations used as independent references in tests.

Nothing here shares code with the package beyond the value types.
"""

from __future__ import annotations

import itertools


def truth_table_models(f, atoms):
    """Model indices of ``f`` by evaluating it on every row (first atom is the MSB)."""
    from esmerge.logic import And, Atom, Const, Iff, Implies, Not, Or

    def ev(g, row):
        if isinstance(g, Const):
            return g.value
        if isinstance(g, Atom):
            return row[g.name]
        if isinstance(g, Not):
            return not ev(g.arg, row)
        if isinstance(g, And):
            return ev(g.left, row) and ev(g.right, row)
        if isinstance(g, Or):
            return ev(g.left, row) or ev(g.right, row)
        if isinstance(g, Implies):
            return (not ev(g.left, row)) or ev(g.right, row)
        if isinstance(g, Iff):
            return ev(g.left, row) == ev(g.right, row)
        raise TypeError(g)

    out = set()
    for idx, values in enumerate(itertools.product((False, True), repeat=len(atoms))):
        if ev(f, dict(zip(atoms, values))):
            out.add(idx)
    return out


def space(kind: str, length: int, bound: int) -> list[tuple[int, ...]]:
    seqs = itertools.product(range(bound + 1), repeat=length)
    if kind == "all":
        return list(seqs)
    if kind == "up":
        return [s for s in seqs if list(s) == sorted(s)]
    return [s for s in seqs if list(s) == sorted(s, reverse=True)]


def d(s) -> int:
    return sum(abs(s[i] - s[j]) for i in range(len(s)) for j in range(i + 1, len(s)))


def omega(seqs, key, s) -> int:
    """Dense rank: 0 for the lowest class, consecutive numbers upwards."""
    classes = sorted({key(t) for t in seqs})
    return classes.index(key(s))


def lex_rank(seqs, s) -> int:
    return omega(seqs, lambda t: t, s)


def merge(op: str, rank_lists) -> tuple[int, ...]:
    """Merge lists of rank tuples by the two-step definitions, enumerating seq(E)."""
    k = len(rank_lists)
    n = len(rank_lists[0])
    bound = max(max(r) for r in rank_lists)
    cols = [tuple(r[u] for r in rank_lists) for u in range(n)]
    if op == "ls":
        pre = [2 * min(c) + (0 if len(set(c)) == 1 else 1) for c in cols]
    elif op == "max":
        pre = [max(c) for c in cols]
    elif op == "sigma":
        pre = [sum(c) for c in cols]
    elif op == "rls":
        sp = space("up", k, bound)
        pre = [lex_rank(sp, tuple(sorted(c))) for c in cols]
    elif op == "gmax":
        sp = space("down", k, bound)
        pre = [lex_rank(sp, tuple(sorted(c, reverse=True))) for c in cols]
    elif op == "lex":
        sp = space("all", k, bound)
        pre = [lex_rank(sp, c) for c in cols]
    elif op == "cons":
        sp = space("all", k, bound)
        pre = [omega(sp, d, c) for c in cols]
    elif op == "rcons":
        sp = space("up", k, bound)
        pre = [omega(sp, lambda t: (d(t), t), tuple(sorted(c))) for c in cols]
    elif op == "rsigma":
        sp = space("all", k, bound)
        pre = [omega(sp, lambda t: (sum(t), d(t)), c) for c in cols]
    else:
        raise ValueError(op)
    low = min(pre)
    return tuple(p - low for p in pre)
