"""Text formats for states, knowledge bases and infobases, plus verdict reports.

A document starts with an ``atoms:`` header and then holds exactly one of

* one ``bits: rank`` line per interpretation (``10: 1``), any order;
* a single ``kb: <formula>`` line, read through the Dalal lifting;
* a single ``infobase: <formula>; <formula>; ...`` line.

``#`` starts a comment; blank lines are ignored.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass

from .epistemic import RANK_MAX, EpistemicState, from_dalal, knowledge_base
from .errors import FormatError, MergeError
from .infobase import Infobase, state_from_infobase
from .logic import Formula, ModelSet, Vocabulary, canonical_formula, models, parse, to_text

_RANK_LINE = re.compile(r"([01]+)\s*:\s*(\S+)\Z")


@dataclass(frozen=True)
class Document:
    """A parsed input file; ``state`` is always set, the rest by kind."""

    kind: str  # "state", "kb" or "infobase"
    vocab: Vocabulary
    state: EpistemicState
    formula: Formula | None = None
    infobase: Infobase | None = None


def _content_lines(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def parse_document(text: str, vocab: Vocabulary | None = None) -> Document:
    lines = list(_content_lines(text))
    if not lines:
        raise FormatError("empty input")
    no, header = lines[0]
    key, sep, rest = header.partition(":")
    if key.strip() != "atoms" or not sep:
        raise FormatError("expected an 'atoms:' header", no)
    if not rest.strip():
        raise FormatError("the 'atoms:' header lists no atoms", no)
    try:
        declared = Vocabulary.of(rest)
    except MergeError as exc:
        raise FormatError(str(exc), no) from None
    if vocab is not None:
        vocab.check_same(declared)
    body = lines[1:]
    if not body:
        raise FormatError("no ranks, 'kb:' or 'infobase:' line after the header", no)
    first = body[0][1]
    if first.startswith("kb:") or first.startswith("infobase:"):
        if len(body) > 1:
            raise FormatError("a 'kb:' or 'infobase:' document holds a single line", body[1][0])
        kind, _, payload = first.partition(":")
        if kind == "kb":
            f = parse(payload.strip(), declared)
            if models(f, declared).empty:
                raise FormatError("the knowledge base is inconsistent", body[0][0])
            return Document("kb", declared, from_dalal(f, declared), formula=f)
        parts = [p.strip() for p in payload.split(";")]
        if parts == [""]:
            parts = []
        if any(not p for p in parts):
            raise FormatError("empty formula in infobase", body[0][0])
        ib = Infobase(declared, tuple(parse(p, declared) for p in parts))
        return Document("infobase", declared, state_from_infobase(ib), infobase=ib)
    return Document("state", declared, _parse_ranks(body, declared))


def _parse_ranks(body, vocab: Vocabulary) -> EpistemicState:
    ranks: dict[int, int] = {}
    for no, line in body:
        m = _RANK_LINE.match(line)
        if not m:
            raise FormatError(f"expected 'bits: rank', got {line!r}", no)
        bits, value = m.groups()
        if len(bits) != vocab.n:
            raise FormatError(f"{bits!r} does not have {vocab.n} digits", no)
        if not value.isdigit():
            raise FormatError(f"rank {value!r} is not a natural number", no)
        rank = int(value)
        if rank > RANK_MAX:
            raise FormatError(f"rank {rank} does not fit in 64 bits", no)
        u = int(bits, 2)
        if u in ranks:
            raise FormatError(f"interpretation {bits} listed twice", no)
        ranks[u] = rank
    missing = [vocab.bits(u) for u in range(vocab.size) if u not in ranks]
    if missing:
        raise FormatError(f"missing ranks for {', '.join(missing)}")
    return EpistemicState(vocab, tuple(ranks[u] for u in range(vocab.size)))


def parse_state(text: str, vocab: Vocabulary | None = None) -> EpistemicState:
    return parse_document(text, vocab).state


def dump_state(state: EpistemicState) -> str:
    lines = [f"atoms: {' '.join(state.vocab.atoms)}"]
    lines += [f"{state.vocab.bits(u)}: {r}" for u, r in enumerate(state.ranks)]
    return "\n".join(lines) + "\n"


def dump_kb(ms: ModelSet) -> str:
    return f"atoms: {' '.join(ms.vocab.atoms)}\nkb: {to_text(canonical_formula(ms))}\n"


def kb_summary(state: EpistemicState) -> dict:
    view = knowledge_base(state)
    return {
        "formula": to_text(view.canonical_formula),
        "models": view.model_set.to_bits(),
    }


# --- verdict reports -----------------------------------------------------------

def witness_to_dict(verdict) -> dict | None:
    w = verdict.witness
    if w is None:
        return None
    vocab = next(s.vocab for lst in w.lists for s in lst)
    out = {"lists": [[dump_state(s) for s in lst] for lst in w.lists]}
    if w.knowledge is not None:
        out["knowledge"] = [[dump_kb(ModelSet(vocab, m)) for m in masks] for masks in w.knowledge]
    if w.u is not None:
        out["u"] = vocab.bits(w.u)
    if w.v is not None:
        out["v"] = vocab.bits(w.v)
    if w.n is not None:
        out["n"] = w.n
    if w.note:
        out["note"] = w.note
    return out


def verdict_to_dict(verdict) -> dict:
    out = {
        "postulate": verdict.postulate,
        "operator": verdict.operator.value,
        "bounds": verdict.bounds.as_dict(),
        "status": verdict.status.value,
        "instances": verdict.instances,
    }
    if verdict.lifting is not None:
        out["lifting"] = verdict.lifting
    if verdict.note:
        out["note"] = verdict.note
    out["witness"] = witness_to_dict(verdict)
    return out


def _state_inline(s: EpistemicState) -> str:
    return " ".join(f"{s.vocab.bits(u)}:{r}" for u, r in enumerate(s.ranks))


def render_verdict(verdict, fmt: str = "human") -> str:
    if fmt == "structured":
        return json.dumps(verdict_to_dict(verdict), indent=2, sort_keys=True)
    b = verdict.bounds
    head = f"{verdict.postulate} for {verdict.operator.label}: {verdict.status.value}"
    lines = [
        head,
        f"  bounds: atoms={b.n_atoms} max_rank={b.max_rank} list_len={b.list_len} "
        f"reps={b.rep_bound} meta_list_len={b.meta_list_len}",
        f"  instances checked: {verdict.instances}",
    ]
    if verdict.lifting:
        lines.append(f"  lifting: {verdict.lifting}")
    if verdict.note:
        lines.append(f"  note: {verdict.note}")
    w = verdict.witness
    if w is not None:
        lines.append("  witness:")
        for i, lst in enumerate(w.lists, start=1):
            lines.append(f"    list {i}:")
            for j, s in enumerate(lst):
                extra = ""
                if w.knowledge is not None:
                    ms = ModelSet(s.vocab, w.knowledge[i - 1][j])
                    extra = f"   kb: {to_text(canonical_formula(ms))}"
                lines.append(f"      {_state_inline(s)}{extra}")
            if not lst:
                lines.append("      (empty)")
        vocab = next(s.vocab for lst in w.lists for s in lst)
        if w.u is not None:
            lines.append(f"    u = {vocab.bits(w.u)}")
        if w.v is not None:
            lines.append(f"    v = {vocab.bits(w.v)}")
        if w.n is not None:
            lines.append(f"    n = {w.n}")
        if w.note:
            lines.append(f"    {w.note}")
    return "\n".join(lines)
