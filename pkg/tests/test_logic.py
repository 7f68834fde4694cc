import pytest
from hypothesis import given, strategies as st

from esmerge.errors import FormulaSyntaxError, UnknownAtomError, VocabularyError, VocabularyMismatchError, InconsistentKnowledgeBaseError
from esmerge.logic import (
    BOTTOM, TOP, And, Atom, Iff, Implies, ModelSet, Not, Or, Vocabulary,
    canonical_formula, dist, dist_kb, entails, evaluate, is_tautology, models, parse, to_text,
)
from oracles import truth_table_models

PQ = Vocabulary(("p", "q"))
PQR = Vocabulary(("p", "q", "r"))


def test_parse_examples():
    assert parse("p & q", PQ) == And(Atom("p"), Atom("q"))
    assert parse("~p | (q -> p)", PQ) == Or(Not(Atom("p")), Implies(Atom("q"), Atom("p")))
    with pytest.raises(FormulaSyntaxError):
        parse("p &", PQ)


def test_precedence_and_associativity():
    assert parse("p | q & p", PQ) == Or(Atom("p"), And(Atom("q"), Atom("p")))
    assert parse("p -> q -> p", PQ) == Implies(Atom("p"), Implies(Atom("q"), Atom("p")))
    assert parse("p <-> q -> p", PQ) == Iff(Atom("p"), Implies(Atom("q"), Atom("p")))
    assert parse("~~p", PQ) == Not(Not(Atom("p")))
    assert parse("true", PQ) == TOP and parse("false", PQ) == BOTTOM


@pytest.mark.parametrize("text", ["", "p q", "(p", "p)", "&p", "p $ q", "p ->"])
def test_syntax_errors(text):
    with pytest.raises(FormulaSyntaxError):
        parse(text, PQ)


def test_unknown_atom():
    with pytest.raises(UnknownAtomError):
        parse("p & r", PQ)


def test_vocabulary_validation():
    for atoms in [(), ("p", "p"), ("1p",), ("true",)]:
        with pytest.raises(VocabularyError):
            Vocabulary(atoms)
    with pytest.raises(VocabularyError):
        Vocabulary(tuple(f"a{i}" for i in range(17)))
    with pytest.raises(VocabularyMismatchError):
        PQ.check_same(PQR)
    assert Vocabulary.of("p, q") == PQ


def test_interpretation_bits_msb_first():
    assert PQ.bits(2) == "10" and PQ.value(2, 0) and not PQ.value(2, 1)
    assert PQ.parse_bits("01") == 1


def test_models_examples():
    assert models(parse("p & q", PQ), PQ).to_bits() == ["11"]
    assert len(models(TOP, PQ)) == 4
    assert models(parse("p <-> q", PQ), PQ).to_bits() == ["00", "11"]


def test_entails_examples():
    pq, p = parse("p & q", PQ), parse("p", PQ)
    assert entails(pq, p, PQ)
    assert not entails(p, pq, PQ)
    assert entails(BOTTOM, p, PQ)
    assert is_tautology(parse("p | ~p", PQ), PQ)


def test_distances():
    assert dist(PQ.parse_bits("11"), PQ.parse_bits("00")) == 2
    assert dist(3, 3) == 0
    assert dist(PQ.parse_bits("10"), PQ.parse_bits("11")) == 1
    f = parse("p & q", PQ)
    assert [dist_kb(f, PQ, PQ.parse_bits(b)) for b in ("00", "10", "11")] == [2, 1, 0]
    with pytest.raises(InconsistentKnowledgeBaseError):
        dist_kb(BOTTOM, PQ, 0)


ATOMS = st.sampled_from([Atom("p"), Atom("q"), Atom("r")])
FORMULAS = st.recursive(
    ATOMS | st.sampled_from([TOP, BOTTOM]),
    lambda sub: st.one_of(
        sub.map(Not),
        st.tuples(sub, sub).map(lambda t: And(*t)),
        st.tuples(sub, sub).map(lambda t: Or(*t)),
        st.tuples(sub, sub).map(lambda t: Implies(*t)),
        st.tuples(sub, sub).map(lambda t: Iff(*t)),
    ),
    max_leaves=12,
)


@given(FORMULAS)
def test_printing_round_trips(f):
    assert parse(to_text(f), PQR) == f


@given(FORMULAS)
def test_bitset_models_match_truth_table(f):
    ms = models(f, PQR)
    assert set(ms) == truth_table_models(f, PQR.atoms)
    assert all(evaluate(f, PQR, u) == (u in ms) for u in range(PQR.size))


@given(st.integers(0, 255))
def test_canonical_formula_has_the_model_set(mask):
    ms = ModelSet(PQR, mask)
    assert models(canonical_formula(ms), PQR).mask == mask
