"""Search bounds, verdicts and the enumeration machinery shared by all checkers."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field, replace
from typing import Iterator

import numpy as np

from ..epistemic import EpistemicState
from ..errors import BudgetExceededError
from ..logic import Vocabulary
from ..operators import OperatorId
from ..seqrank import DEFAULT_SEQ_LIMIT

DEFAULT_BUDGET = 10**8
CHUNK_ROWS = 1 << 16


@dataclass(frozen=True)
class SearchBounds:
    n_atoms: int = 2
    max_rank: int = 2
    list_len: int = 2
    rep_bound: int = 4
    meta_list_len: int = 2

    def __post_init__(self):
        for name in ("n_atoms", "list_len", "rep_bound", "meta_list_len"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be at least 1")
        if self.max_rank < 0:
            raise ValueError("max_rank must be non-negative")

    def vocabulary(self) -> Vocabulary:
        return default_vocabulary(self.n_atoms)

    def with_(self, **changes) -> "SearchBounds":
        return replace(self, **changes)

    def as_dict(self) -> dict:
        return {
            "n_atoms": self.n_atoms,
            "max_rank": self.max_rank,
            "list_len": self.list_len,
            "rep_bound": self.rep_bound,
            "meta_list_len": self.meta_list_len,
        }


def default_vocabulary(n_atoms: int) -> Vocabulary:
    if n_atoms <= 3:
        return Vocabulary(("p", "q", "r")[:n_atoms])
    return Vocabulary(tuple(f"p{i}" for i in range(1, n_atoms + 1)))


@dataclass
class SearchConfig:
    """Resource limits of one checker run."""

    budget: int = DEFAULT_BUDGET
    seq_limit: int = DEFAULT_SEQ_LIMIT

    def charge(self, instances: int, what: str) -> int:
        if instances > self.budget:
            raise BudgetExceededError(
                f"{what}: {instances} primitive checks exceed the budget of {self.budget}"
            )
        return instances


class Status(enum.Enum):
    HOLDS = "holds-in-bounds"
    VIOLATED = "violated"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Witness:
    """A concrete counterexample, replayable through the public API.

    ``lists`` holds the epistemic lists of the instance.  Their meaning
    depends on the postulate: ``(E,)`` for E1-E4 and Unit, ``(E1, E2)`` for
    Comm, the meta-list ``(E_1, ..., E_m)`` for E5/E6, and ``(E, [Phi])``
    for Arb/Maj and their knowledge-base forms.  KB-level witnesses also
    carry the model sets (as bitmasks) of the listed knowledge bases.
    """

    lists: tuple[tuple[EpistemicState, ...], ...]
    u: int | None = None
    v: int | None = None
    n: int | None = None
    knowledge: tuple[tuple[int, ...], ...] | None = None
    note: str = ""


@dataclass(frozen=True)
class Verdict:
    postulate: str
    operator: OperatorId
    bounds: SearchBounds
    status: Status
    witness: Witness | None = None
    instances: int = 0
    lifting: str | None = None
    note: str = ""

    def __post_init__(self):
        if (self.status is Status.VIOLATED) != (self.witness is not None):
            raise ValueError("a verdict carries a witness exactly when it is violated")

    @property
    def holds(self) -> bool:
        return self.status is Status.HOLDS

    @property
    def violated(self) -> bool:
        return self.status is Status.VIOLATED


def combine(verdicts):
    """Violated beats unknown beats holds; the first violation wins."""
    verdicts = list(verdicts)
    for status in (Status.VIOLATED, Status.UNKNOWN):
        for v in verdicts:
            if v.status is status:
                return v
    return verdicts[0]


# --- enumeration ------------------------------------------------------------

def state_array(n_interpretations: int, max_rank: int) -> np.ndarray:
    """Every rank function on ``n_interpretations`` points with ranks ``<= max_rank``.

    Rows come in lexicographic order of the rank tuples.
    """
    values = np.arange(max_rank + 1, dtype=np.int64)
    grids = np.meshgrid(*([values] * n_interpretations), indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=1)


def enumerate_states(bounds: SearchBounds, config: SearchConfig | None = None) -> Iterator[EpistemicState]:
    config = config or SearchConfig()
    vocab = bounds.vocabulary()
    count = (bounds.max_rank + 1) ** vocab.size
    config.charge(count, "state enumeration")
    for ranks in itertools.product(range(bounds.max_rank + 1), repeat=vocab.size):
        yield EpistemicState(vocab, ranks)


def count_lists(n_items: int, length: int) -> int:
    return n_items**length


def list_index_chunks(n_items: int, length: int, rows: int = CHUNK_ROWS) -> Iterator[tuple[int, np.ndarray]]:
    """Index tuples of all length-``length`` lists over ``n_items`` items, in order.

    Yields ``(offset, idx)`` where ``idx`` has shape ``(m, length)`` and
    ``offset`` is the rank of its first row in the full enumeration.
    """
    total = n_items**length
    shape = (n_items,) * length
    for start in range(0, total, rows):
        flat = np.arange(start, min(start + rows, total), dtype=np.int64)
        if length == 0:
            yield start, np.zeros((len(flat), 0), dtype=np.int64)
        else:
            yield start, np.stack(np.unravel_index(flat, shape), axis=1).astype(np.int64)


def to_states(vocab: Vocabulary, rows) -> tuple[EpistemicState, ...]:
    return tuple(EpistemicState(vocab, tuple(int(x) for x in r)) for r in rows)


def embed_pair_states(vocab: Vocabulary, rows, u: int = 0, v: int = 1) -> tuple[EpistemicState, ...]:
    """Lift states on the two points {u, v} to the full vocabulary (rank 0 elsewhere)."""
    out = []
    for r in rows:
        ranks = [0] * vocab.size
        ranks[u], ranks[v] = int(r[0]), int(r[1])
        out.append(EpistemicState(vocab, tuple(ranks)))
    return tuple(out)


def lex_compare(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Row-wise lexicographic comparison of two ``(L, k)`` arrays: -1, 0 or 1."""
    diff = a != b
    has = diff.any(axis=1)
    first = diff.argmax(axis=1)
    rows = np.arange(len(a))
    sign = np.sign(a[rows, first] - b[rows, first])
    return np.where(has, sign, 0)


@dataclass
class FirstHit:
    """Tracks the least violating instance seen so far in enumeration order."""

    key: tuple | None = None
    payload: object = None
    instances: int = 0

    def offer(self, key: tuple, payload) -> None:
        if self.key is None or key < self.key:
            self.key = key
            self.payload = payload

    @property
    def found(self) -> bool:
        return self.key is not None
