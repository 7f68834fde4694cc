import itertools

import pytest
from hypothesis import given, strategies as st

from esmerge.epistemic import EpistemicState
from esmerge.errors import EmptyListError, SequenceNotInSpaceError, SpaceTooLargeError
from esmerge.logic import Vocabulary
from esmerge.seqrank import (
    SequenceOrder, SequenceSpace, SpaceKind, Variant, d_measure, lex_rank_closed_form,
    omega_rank, realized_sequence, sum_measure,
)
import oracles

KINDS = {SpaceKind.ALL: "all", SpaceKind.NONDECREASING: "up", SpaceKind.NONINCREASING: "down"}
PQ = Vocabulary(("p", "q"))
STOCK = [
    EpistemicState.from_mapping(PQ, {"11": 0, "10": 1, "01": 1, "00": 2}),
    EpistemicState.from_mapping(PQ, {"00": 0, "10": 1, "01": 1, "11": 2}),
]


def test_realized_sequences():
    u = PQ.parse_bits("11")
    assert realized_sequence(STOCK, u) == (0, 2)
    assert realized_sequence(STOCK, u, Variant.SORTED_UP) == (0, 2)
    assert realized_sequence(STOCK, u, Variant.SORTED_DOWN) == (2, 0)
    one = STOCK[:1]
    assert len({realized_sequence(one, 0, v) for v in Variant}) == 1
    with pytest.raises(EmptyListError):
        realized_sequence([], 0)


def test_measures():
    assert d_measure((0, 1, 3)) == 6
    assert d_measure((2, 2, 2)) == 0
    assert d_measure((0, 2)) == 2
    assert sum_measure((1, 1)) == 2 and sum_measure((0, 0, 0)) == 0 and sum_measure((2, 0)) == 2


def test_omega_examples():
    all22 = SequenceSpace(SpaceKind.ALL, 2, 2)
    assert omega_rank(all22, SequenceOrder.LEX, (1, 2)) == 5
    assert omega_rank(all22, SequenceOrder.SUM_D, (1, 1)) == 2
    for kind in SpaceKind:
        assert omega_rank(SequenceSpace(kind, 3, 2), SequenceOrder.D_LEX, (0, 0, 0)) == 0


def test_closed_form_examples():
    assert lex_rank_closed_form(SequenceSpace(SpaceKind.ALL, 2, 2), (1, 2)) == 5
    assert lex_rank_closed_form(SequenceSpace(SpaceKind.NONINCREASING, 2, 2), (2, 0)) == 3
    for kind in SpaceKind:
        assert lex_rank_closed_form(SequenceSpace(kind, 3, 4), (0, 0, 0)) == 0


def test_space_membership_errors():
    with pytest.raises(SequenceNotInSpaceError):
        lex_rank_closed_form(SequenceSpace(SpaceKind.NONDECREASING, 2, 2), (2, 0))
    with pytest.raises(SequenceNotInSpaceError):
        omega_rank(SequenceSpace(SpaceKind.ALL, 2, 2), SequenceOrder.D, (3, 0))
    with pytest.raises(SpaceTooLargeError):
        omega_rank(SequenceSpace(SpaceKind.ALL, 5, 9), SequenceOrder.D, (0,) * 5, limit=1000)


@pytest.mark.parametrize("kind", list(SpaceKind))
def test_space_enumeration_matches_oracle(kind):
    for k, b in itertools.product(range(1, 5), range(0, 4)):
        sp = SequenceSpace(kind, k, b)
        listed = list(sp)
        assert listed == oracles.space(KINDS[kind], k, b)
        assert len(listed) == sp.size


@pytest.mark.parametrize("order", list(SequenceOrder))
def test_omega_matches_oracle(order):
    keys = {
        SequenceOrder.LEX: lambda t: t,
        SequenceOrder.D: oracles.d,
        SequenceOrder.D_LEX: lambda t: (oracles.d(t), t),
        SequenceOrder.SUM_D: lambda t: (sum(t), oracles.d(t)),
    }
    for kind in SpaceKind:
        for k, b in itertools.product(range(1, 4), range(0, 4)):
            seqs = oracles.space(KINDS[kind], k, b)
            sp = SequenceSpace(kind, k, b)
            for s in seqs:
                assert omega_rank(sp, order, s) == oracles.omega(seqs, keys[order], s)


@given(st.sampled_from(list(SpaceKind)), st.integers(1, 12), st.integers(0, 20), st.data())
def test_closed_form_is_order_preserving(kind, k, b, data):
    sp = SequenceSpace(kind, k, b)
    draw = st.lists(st.integers(0, b), min_size=k, max_size=k)
    s, t = tuple(data.draw(draw)), tuple(data.draw(draw))
    if kind is SpaceKind.NONDECREASING:
        s, t = tuple(sorted(s)), tuple(sorted(t))
    elif kind is SpaceKind.NONINCREASING:
        s, t = tuple(sorted(s, reverse=True)), tuple(sorted(t, reverse=True))
    rs, rt = lex_rank_closed_form(sp, s), lex_rank_closed_form(sp, t)
    assert 0 <= rs < sp.size
    assert (rs < rt) == (s < t) and (rs == rt) == (s == t)
