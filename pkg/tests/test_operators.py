import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from esmerge.epistemic import EpistemicState, knowledge_base, normalize
from esmerge.errors import EmptyListError, SpaceTooLargeError, VocabularyMismatchError
from esmerge.kernels import batch_merge
from esmerge.logic import Vocabulary
from esmerge.operators import ALL_OPERATORS, OperatorId, merge, pre_rank_table, pre_ranks
import oracles

PQ = Vocabulary(("p", "q"))
# interpretation order 00, 01, 10, 11
IB1 = EpistemicState(PQ, (2, 1, 1, 0))
IB2 = EpistemicState(PQ, (0, 1, 1, 2))
STOCK = [IB1, IB2]

# frozen from the enumeration oracle (tests/oracles.py) on the stock list
STOCK_PRE = {
    "ls": (1, 2, 2, 1),
    "rls": (2, 3, 3, 2),
    "max": (2, 1, 1, 2),
    "gmax": (3, 2, 2, 3),
    "cons": (2, 0, 0, 2),
    "rcons": (5, 1, 1, 5),
    "sigma": (2, 2, 2, 2),
    "rsigma": (3, 2, 2, 3),
    "lex": (6, 4, 4, 2),
}


@pytest.mark.parametrize("op", ALL_OPERATORS, ids=lambda o: o.value)
def test_stock_pre_ranks(op):
    assert pre_ranks(op, STOCK) == STOCK_PRE[op.value]
    low = min(STOCK_PRE[op.value])
    assert merge(op, STOCK).ranks == tuple(r - low for r in STOCK_PRE[op.value])


def test_stock_kb_for_max_gmax_rsigma():
    for op in (OperatorId.MAX, OperatorId.GMAX, OperatorId.RSIGMA):
        assert merge(op, STOCK).as_mapping() == {"00": 1, "01": 0, "10": 0, "11": 1}
        assert knowledge_base(merge(op, STOCK)).model_set.to_bits() == ["01", "10"]


def test_singleton_and_duplicate_lists():
    phi = EpistemicState(PQ, (3, 1, 2, 1))
    for op in ALL_OPERATORS:
        if op is OperatorId.CONS:
            continue
        expected = normalize(phi).ranks
        if op is OperatorId.LS:
            expected = tuple(2 * r for r in expected)
        assert merge(op, [phi]).ranks == expected
    assert merge(OperatorId.LS, [phi, phi]).ranks == merge(OperatorId.LS, [phi]).ranks
    assert merge(OperatorId.SIGMA, [phi, phi]).ranks == (4, 0, 2, 0)
    assert merge(OperatorId.MAX, [phi, EpistemicState.constant(PQ)]).ranks == (2, 0, 1, 0)
    for op in (OperatorId.CONS, OperatorId.RCONS, OperatorId.GMAX, OperatorId.RSIGMA):
        const = EpistemicState.constant(PQ, 2)
        assert merge(op, [const, const]).ranks == (0, 0, 0, 0)
    assert merge(OperatorId.CONS, [phi]).ranks == (0, 0, 0, 0)


def test_lex_is_order_sensitive():
    assert merge(OperatorId.LEX, [IB1, IB2]).ranks != merge(OperatorId.LEX, [IB2, IB1]).ranks


def test_errors():
    with pytest.raises(EmptyListError):
        merge(OperatorId.MAX, [])
    with pytest.raises(VocabularyMismatchError):
        merge(OperatorId.MAX, [IB1, EpistemicState(Vocabulary(("p", "r")), (0, 0, 0, 0))])
    with pytest.raises(SpaceTooLargeError):
        merge(OperatorId.CONS, [EpistemicState(PQ, (0, 0, 0, 9))] * 8, seq_limit=10**4)
    with pytest.raises(ValueError):
        OperatorId.parse("median")
    assert OperatorId.parse(" GMax ") is OperatorId.GMAX


STATES = st.lists(st.integers(0, 3), min_size=4, max_size=4).map(lambda r: EpistemicState(PQ, tuple(r)))
LISTS = st.lists(STATES, min_size=1, max_size=3)


@settings(max_examples=300)
@given(st.sampled_from(ALL_OPERATORS), LISTS)
def test_merge_matches_literal_definition(op, states):
    assert merge(op, states).ranks == oracles.merge(op.value, [s.ranks for s in states])


@given(st.sampled_from([op for op in ALL_OPERATORS if op.commutative]), LISTS, st.randoms())
def test_commutative_operators_ignore_order(op, states, rnd):
    shuffled = list(states)
    rnd.shuffle(shuffled)
    assert merge(op, states) == merge(op, shuffled)


@given(st.sampled_from(ALL_OPERATORS), LISTS)
def test_unit_and_normalisation(op, states):
    out = merge(op, states)
    assert min(out.ranks) == 0
    cols = [tuple(s(u) for s in states) for u in range(4)]
    for u, v in itertools.combinations(range(4), 2):
        if cols[u] == cols[v]:
            assert out(u) == out(v)


def test_rls_refines_ls():
    """Everything ls ranks strictly lower, Rls ranks strictly lower too."""
    values = range(3)
    states = [EpistemicState(PQ, r) for r in itertools.product(values, repeat=4)]
    for a, b in itertools.product(states, repeat=2):
        ls, rls = merge(OperatorId.LS, [a, b]), merge(OperatorId.RLS, [a, b])
        for u, v in itertools.permutations(range(4), 2):
            if ls(u) < ls(v):
                assert rls(u) < rls(v)


def test_pre_rank_table_is_frozen_and_indexed_by_code():
    t = pre_rank_table(OperatorId.LEX, 2, 2)
    assert list(t) == list(range(9))
    assert not t.flags.writeable
    with pytest.raises(SpaceTooLargeError):
        pre_rank_table(OperatorId.SIGMA, 10, 9, 1000)


@pytest.mark.parametrize("op", ALL_OPERATORS, ids=lambda o: o.value)
def test_batch_kernel_matches_merge(op, backend):
    rng = np.random.default_rng(7)
    for k in (1, 2, 3):
        stack = rng.integers(0, 4, size=(200, k, 4))
        got = batch_merge(op, stack, np.full(200, k))
        for row in range(200):
            states = [EpistemicState(PQ, tuple(int(x) for x in r)) for r in stack[row]]
            assert tuple(got[row]) == merge(op, states).ranks


def test_batch_kernel_ragged_lengths(backend):
    stack = np.zeros((2, 3, 4), dtype=np.int64)
    stack[0, :2] = [IB1.ranks, IB2.ranks]
    stack[1, :3] = [IB1.ranks, IB2.ranks, IB2.ranks]
    got = batch_merge(OperatorId.SIGMA, stack, np.array([2, 3]))
    assert tuple(got[0]) == merge(OperatorId.SIGMA, STOCK).ranks
    assert tuple(got[1]) == merge(OperatorId.SIGMA, STOCK + [IB2]).ranks
    pre = batch_merge(OperatorId.SIGMA, stack, np.array([2, 3]), normalize=False)
    assert tuple(pre[0]) == (2, 2, 2, 2)
