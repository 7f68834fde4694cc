"""Batch merging of many epistemic lists at once.

A batch is a ``(L, K, N)`` int64 array holding ``L`` lists of up to ``K``
states over ``N`` interpretations; ``lengths[l]`` says how many leading
states of row ``l`` are real (the rest must be zero).  Each list is merged
by looking its columns up in :func:`esmerge.operators.pre_rank_table`.

Two backends implement the kernel: a compiled Cython extension and a numpy
fallback.  The compiled one is used when it imports, unless the environment
variable ``ESMERGE_PURE`` is set to a non-empty value.
"""

from __future__ import annotations

import contextlib
import os

import numpy as np

from ..operators import OperatorId, pre_rank_table
from ..seqrank import DEFAULT_SEQ_LIMIT
from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

COMPILED_AVAILABLE = _ckernels is not None
_backend = _ckernels if COMPILED_AVAILABLE and not os.environ.get("ESMERGE_PURE") else _pykernels


def backend_name() -> str:
    return "compiled" if _backend is _ckernels else "python"


def set_backend(name: str) -> None:
    global _backend
    if name == "compiled":
        if not COMPILED_AVAILABLE:
            raise RuntimeError("compiled kernels are not built")
        _backend = _ckernels
    elif name == "python":
        _backend = _pykernels
    else:
        raise ValueError(f"unknown backend {name!r}")


@contextlib.contextmanager
def using_backend(name: str):
    previous = backend_name()
    set_backend(name)
    try:
        yield
    finally:
        set_backend(previous)


class _TableSet:
    """All pre-rank tables of one operator concatenated into one flat array."""

    def __init__(self, op: OperatorId, seq_limit: int):
        self.op = op
        self.seq_limit = seq_limit
        self.parts: dict[tuple[int, int], int] = {}
        self.flat = np.zeros(0, dtype=np.int64)
        self.offsets = np.full((1, 1), -1, dtype=np.int64)

    def ensure(self, pairs) -> None:
        new = [p for p in pairs if p not in self.parts]
        if not new:
            return
        chunks = [self.flat]
        size = len(self.flat)
        for k, b in new:
            table = pre_rank_table(self.op, int(k), int(b), self.seq_limit)
            self.parts[(k, b)] = size
            chunks.append(table)
            size += len(table)
        self.flat = np.ascontiguousarray(np.concatenate(chunks))
        kmax = max(k for k, _ in self.parts)
        bmax = max(b for _, b in self.parts)
        offsets = np.full((kmax + 1, bmax + 1), -1, dtype=np.int64)
        for (k, b), off in self.parts.items():
            offsets[k, b] = off
        self.offsets = offsets


_tables: dict[tuple[OperatorId, int], _TableSet] = {}


def _table_set(op: OperatorId, seq_limit: int) -> _TableSet:
    key = (op, seq_limit)
    if key not in _tables:
        _tables[key] = _TableSet(op, seq_limit)
    return _tables[key]


def batch_merge(
    op: OperatorId,
    stack: np.ndarray,
    lengths: np.ndarray,
    normalize: bool = True,
    seq_limit: int = DEFAULT_SEQ_LIMIT,
) -> np.ndarray:
    """Merge every list of the batch; returns an ``(L, N)`` array of ranks."""
    stack = np.ascontiguousarray(stack, dtype=np.int64)
    lengths = np.ascontiguousarray(lengths, dtype=np.int64)
    L = stack.shape[0]
    if L == 0:
        return np.zeros((0, stack.shape[2]), dtype=np.int64)
    if lengths.min() < 1:
        raise ValueError("every list in a batch needs at least one state")
    bounds = np.ascontiguousarray(stack.reshape(L, -1).max(axis=1), dtype=np.int64)
    # one flat key per (length, bound) pair; row-wise unique is far slower
    width = int(bounds.max()) + 1
    pairs = {divmod(int(c), width) for c in np.unique(lengths * width + bounds)}
    tables = _table_set(op, seq_limit)
    tables.ensure(pairs)
    return _backend.merge_many(stack, lengths, bounds, tables.flat, tables.offsets, normalize)
