import json

import pytest
from hypothesis import given, strategies as st

from esmerge.epistemic import EpistemicState, from_dalal
from esmerge.errors import FormatError, FormulaSyntaxError, UnknownAtomError, VocabularyMismatchError
from esmerge.formats import (
    dump_kb, dump_state, kb_summary, parse_document, parse_state, render_verdict, verdict_to_dict,
)
from esmerge.logic import ModelSet, Vocabulary, parse
from esmerge.operators import OperatorId
from esmerge.postulates import SearchBounds, check_comm

PQ = Vocabulary(("p", "q"))


def test_rank_lines_any_order_with_comments():
    text = "# stock\natoms: p q\n11: 0\n00: 2  # worst\n\n10: 1\n01: 1\n"
    assert parse_state(text).ranks == (2, 1, 1, 0)


@pytest.mark.parametrize("text, where", [
    ("", None),
    ("p q\n00: 0", 1),
    ("atoms:\n0: 0", 1),
    ("atoms: p\n", 1),
    ("atoms: p\n0: 0\n0: 1\n", 3),
    ("atoms: p\n0: 0\n", None),
    ("atoms: p\n0: x\n1: 0\n", 2),
    ("atoms: p\n00: 0\n1: 0\n", 2),
    ("atoms: p\n0: -1\n1: 0\n", 2),
    (f"atoms: p\n0: {2**64}\n1: 0\n", 2),
    ("atoms: p\n0 = 1\n", 2),
    ("atoms: p\nkb: p\n0: 1\n", 3),
    ("atoms: p\nkb: p & ~p\n", 2),
    ("atoms: p\ninfobase: p;;p\n", 2),
])
def test_malformed_documents(text, where):
    with pytest.raises(FormatError) as info:
        parse_document(text)
    assert info.value.line == where


def test_formula_errors_pass_through():
    with pytest.raises(FormulaSyntaxError):
        parse_document("atoms: p q\nkb: p &\n")
    with pytest.raises(UnknownAtomError):
        parse_document("atoms: p q\nkb: r\n")


def test_vocabulary_must_match():
    with pytest.raises(VocabularyMismatchError):
        parse_document("atoms: q p\n00: 0\n01: 0\n10: 0\n11: 0\n", PQ)


def test_kb_and_infobase_documents():
    doc = parse_document("atoms: p q\nkb: p & q\n")
    assert doc.kind == "kb" and doc.state == from_dalal(parse("p & q", PQ), PQ)
    doc = parse_document("atoms: p q\ninfobase: p; q\n")
    assert doc.kind == "infobase" and doc.state.ranks == (2, 1, 1, 0)
    assert parse_document("atoms: p q\ninfobase:\n").state.ranks == (0, 0, 0, 0)


def test_dump_kb_reads_back():
    for m in range(1, 16):
        ms = ModelSet(PQ, m)
        zero = {u for u, r in enumerate(parse_state(dump_kb(ms)).ranks) if r == 0}
        assert zero == set(ms)


@given(st.lists(st.integers(0, 2**64 - 1), min_size=4, max_size=4))
def test_state_round_trip(values):
    s = EpistemicState(PQ, tuple(values))
    assert parse_state(dump_state(s)) == s


def test_kb_summary():
    s = EpistemicState(PQ, (1, 0, 0, 1))
    assert kb_summary(s)["models"] == ["01", "10"]


def test_structured_verdict_round_trips():
    v = check_comm(OperatorId.LEX, SearchBounds(n_atoms=2, max_rank=1, list_len=2))
    doc = json.loads(render_verdict(v, "structured"))
    assert doc == json.loads(json.dumps(verdict_to_dict(v)))
    assert doc["status"] == "violated"
    lists = [[parse_state(t) for t in lst] for lst in doc["witness"]["lists"]]
    assert lists == [list(lst) for lst in v.witness.lists]
    human = render_verdict(v)
    assert human.startswith("Comm for ") and "witness:" in human
