import pytest
from hypothesis import given, strategies as st

from esmerge.epistemic import (
    RANK_MAX, EpistemicState, checked_add, checked_mul, from_dalal, from_models,
    induced_preorder_equal, knowledge_base, max_rank, min_rank, normalize, same_vocabulary,
    states_equal, zero_set,
)
from esmerge.errors import InconsistentKnowledgeBaseError, RankOverflowError, VocabularyMismatchError
from esmerge.logic import BOTTOM, TOP, ModelSet, Vocabulary, models, parse, to_text

PQ = Vocabulary(("p", "q"))


def st_(ranks):
    return EpistemicState(PQ, tuple(ranks))


def test_min_max():
    assert (min_rank(st_([0, 1, 1, 2])), max_rank(st_([0, 1, 1, 2]))) == (0, 2)
    assert (min_rank(st_([3] * 4)), max_rank(st_([3] * 4))) == (3, 3)


def test_normalize_examples():
    assert normalize(st_([1, 2, 3, 1])).ranks == (0, 1, 2, 0)
    s = st_([0, 2, 1, 0])
    assert normalize(s) == s
    assert normalize(st_([5] * 4)).ranks == (0, 0, 0, 0)


def test_knowledge_base_examples():
    assert zero_set(st_([0, 1, 1, 2])).to_bits() == ["00"]
    kb = knowledge_base(st_([1, 1, 2, 3]))
    assert kb.model_set.empty and kb.canonical_formula == BOTTOM and not kb.consistent
    stock = EpistemicState.from_mapping(PQ, {"10": 0, "01": 0, "11": 1, "00": 1})
    assert knowledge_base(stock).model_set.to_bits() == ["01", "10"]
    assert to_text(knowledge_base(stock).canonical_formula) == "~p & q | p & ~q"


def test_dalal_examples():
    s = from_dalal(parse("p & q", PQ), PQ)
    assert s.as_mapping() == {"00": 2, "01": 1, "10": 1, "11": 0}
    assert from_dalal(TOP, PQ).ranks == (0, 0, 0, 0)
    s = from_dalal(parse("~p & ~q", PQ), PQ)
    assert s.as_mapping() == {"00": 0, "01": 1, "10": 1, "11": 2}
    with pytest.raises(InconsistentKnowledgeBaseError):
        from_dalal(BOTTOM, PQ)


def test_equality():
    s = st_([0, 1, 1, 2])
    assert states_equal(s, s)
    p = Vocabulary(("p",))
    a, b = EpistemicState(p, (0, 1)), EpistemicState(p, (0, 2))
    assert not states_equal(a, b)
    assert induced_preorder_equal(a, b)


def test_validation_and_overflow():
    with pytest.raises(ValueError):
        EpistemicState(PQ, (0, 1, 2))
    with pytest.raises(RankOverflowError):
        EpistemicState(PQ, (0, 0, 0, RANK_MAX + 1))
    with pytest.raises(RankOverflowError):
        checked_add(RANK_MAX, 1)
    with pytest.raises(RankOverflowError):
        checked_mul(2, RANK_MAX)
    with pytest.raises(VocabularyMismatchError):
        same_vocabulary([st_([0] * 4), EpistemicState(Vocabulary(("p",)), (0, 0))])


RANKS = st.lists(st.integers(0, 6), min_size=4, max_size=4).map(st_)


@given(RANKS)
def test_normalize_idempotent_and_order_preserving(s):
    n = normalize(s)
    assert normalize(n) == n
    assert min(n.ranks) == 0 and knowledge_base(n).consistent
    assert all((s(u) <= s(v)) == (n(u) <= n(v)) for u in range(4) for v in range(4))
    assert induced_preorder_equal(s, n)


@given(st.integers(1, 15))
def test_dalal_zero_set_is_the_model_set(mask):
    ms = ModelSet(PQ, mask)
    assert knowledge_base(from_models(ms)).model_set == ms
