"""Command-line front end.

Exit codes: 0 success or holds-in-bounds, 1 violated, 2 unreadable input,
3 semantic error, 4 unknown, 5 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import (
    BudgetExceededError,
    FormatError,
    FormulaSyntaxError,
    MergeError,
    UnknownAtomError,
    VocabularyError,
)
from .formats import dump_state, kb_summary, parse_document, render_verdict
from .logic import Vocabulary, canonical_formula, models, parse, to_text
from .operators import OperatorId, merge, pre_ranks
from .postulates import (
    ACCEPTANCE_BOUNDS,
    DEFAULT_BUDGET,
    LIFTINGS,
    SearchBounds,
    SearchConfig,
    Status,
    check,
    normalize_postulate,
    render_matrix,
    satisfaction_matrix,
)
from .seqrank import DEFAULT_SEQ_LIMIT

EXIT_OK, EXIT_VIOLATED, EXIT_PARSE, EXIT_SEMANTIC, EXIT_UNKNOWN, EXIT_BUDGET = range(6)
_PARSE_ERRORS = (FormatError, FormulaSyntaxError, UnknownAtomError, VocabularyError)


class UsageError(Exception):
    """Bad arguments detected after parsing (reported with exit code 2)."""


def _global_options(parser: argparse.ArgumentParser, suppress: bool) -> None:
    default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--format", choices=("human", "structured"), default=default("human"),
                        help="output style (default: human)")
    parser.add_argument("--seq-limit", type=int, default=default(DEFAULT_SEQ_LIMIT),
                        help="largest candidate space enumerated for dense ranking")
    parser.add_argument("--budget", type=int, default=default(DEFAULT_BUDGET),
                        help="largest number of primitive checks a search may perform")


def _bound_options(parser: argparse.ArgumentParser, base: SearchBounds) -> None:
    parser.add_argument("--atoms", type=int, default=base.n_atoms, dest="n_atoms")
    parser.add_argument("--max-rank", type=int, default=base.max_rank)
    parser.add_argument("--list-len", type=int, default=base.list_len)
    parser.add_argument("--reps", type=int, default=base.rep_bound)
    parser.add_argument("--meta-list-len", type=int, default=base.meta_list_len)


def _operator(text: str) -> OperatorId:
    try:
        return OperatorId.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="esmerge", description="Merge epistemic states and check merging postulates.")
    _global_options(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name, help_text):
        p = sub.add_parser(name, help=help_text)
        _global_options(p, suppress=True)
        return p

    p = command("merge", "merge the states in the given files")
    p.add_argument("--op", type=_operator, required=True)
    p.add_argument("files", nargs="+")

    p = command("kb", "print the knowledge base associated with each file")
    p.add_argument("files", nargs="+")

    p = command("check", "check one postulate for one operator")
    p.add_argument("--postulate", required=True)
    p.add_argument("--op", type=_operator, required=True)
    p.add_argument("--lifting", choices=LIFTINGS, default=None,
                   help="how knowledge bases become states (knowledge-base postulates only)")
    _bound_options(p, SearchBounds())

    p = command("matrix", "check every postulate for every operator")
    p.add_argument("--op", type=_operator, action="append", help="restrict to an operator (repeatable)")
    p.add_argument("--no-escalate", action="store_true",
                   help="do not search larger bounds for claimed violations")
    _bound_options(p, ACCEPTANCE_BOUNDS)

    p = command("cells", "tabulate an operator on the cells of two states")
    p.add_argument("--op", type=_operator, required=True)
    p.add_argument("files", nargs="+")

    p = command("parse", "parse a formula and list its models")
    p.add_argument("--atoms", required=True, help="atom names, e.g. 'p q'")
    p.add_argument("formula")
    return parser


def _bounds(args) -> SearchBounds:
    try:
        return SearchBounds(args.n_atoms, args.max_rank, args.list_len, args.reps, args.meta_list_len)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None


def _load_states(paths):
    docs = [parse_document(_read(p)) for p in paths]
    return [d.state for d in docs]


def _emit(out, payload, fmt: str, human: str) -> None:
    if fmt == "structured":
        out.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        out.write(human.rstrip("\n") + "\n")


def cmd_merge(args, out) -> int:
    states = _load_states(args.files)
    result = merge(args.op, states, seq_limit=args.seq_limit)
    kb = kb_summary(result)
    human = (
        f"# {args.op.label} of {len(states)} state(s)\n"
        + dump_state(result)
        + f"# kb: {kb['formula']}\n# models: {' '.join(kb['models']) or '(none)'}\n"
    )
    _emit(out, {"operator": args.op.value, "state": dump_state(result), "kb": kb}, args.format, human)
    return EXIT_OK


def cmd_kb(args, out) -> int:
    entries = []
    for path in args.files:
        state = parse_document(_read(path)).state
        entries.append({"file": path, **kb_summary(state)})
    human = "\n".join(
        f"{e['file']}: {e['formula']}  (models: {' '.join(e['models']) or 'none'})" for e in entries
    )
    _emit(out, entries, args.format, human)
    return EXIT_OK


def _status_exit(status: Status) -> int:
    return {Status.HOLDS: EXIT_OK, Status.VIOLATED: EXIT_VIOLATED, Status.UNKNOWN: EXIT_UNKNOWN}[status]


def cmd_check(args, out) -> int:
    try:
        postulate = normalize_postulate(args.postulate)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.lifting and not (postulate.startswith("KP") or postulate in ("arb", "maj")):
        raise UsageError("--lifting applies to knowledge-base postulates only")
    config = SearchConfig(args.budget, args.seq_limit)
    verdict = check(postulate, args.op, _bounds(args), config, args.lifting)
    out.write(render_verdict(verdict, args.format) + "\n")
    return _status_exit(verdict.status)


def cmd_matrix(args, out) -> int:
    config = SearchConfig(args.budget, args.seq_limit)
    ops = tuple(dict.fromkeys(args.op)) if args.op else tuple(OperatorId)
    matrix = satisfaction_matrix(_bounds(args), config, operators=ops, escalate=not args.no_escalate)
    out.write(render_matrix(matrix, args.format) + "\n")
    return EXIT_OK


def cmd_cells(args, out) -> int:
    if len(args.files) != 2:
        raise MergeError(f"cells needs exactly two states, got {len(args.files)}")
    states = _load_states(args.files)
    pre = pre_ranks(args.op, states, args.seq_limit)
    post = merge(args.op, states, seq_limit=args.seq_limit)
    vocab = states[0].vocab
    cells: dict[tuple[int, int], dict] = {}
    for u in range(vocab.size):
        key = (states[0](u), states[1](u))
        cell = cells.setdefault(key, {"pre": pre[u], "post": post(u), "interpretations": []})
        cell["interpretations"].append(vocab.bits(u))
    rows = [
        {"cell": list(k), **v} for k, v in sorted(cells.items())
    ]
    lines = [f"# {args.op.label}: cell (first, second) -> pre-normalisation, normalised"]
    for r in rows:
        lines.append(
            f"({r['cell'][0]},{r['cell'][1]})  pre {r['pre']}  post {r['post']}  "
            f"[{' '.join(r['interpretations'])}]"
        )
    _emit(out, {"operator": args.op.value, "cells": rows}, args.format, "\n".join(lines))
    return EXIT_OK


def cmd_parse(args, out) -> int:
    vocab = Vocabulary.of(args.atoms)
    f = parse(args.formula, vocab)
    ms = models(f, vocab)
    payload = {
        "formula": to_text(f),
        "models": ms.to_bits(),
        "canonical": to_text(canonical_formula(ms)),
    }
    human = (
        f"formula:   {payload['formula']}\n"
        f"models:    {' '.join(payload['models']) or '(none)'}\n"
        f"canonical: {payload['canonical']}"
    )
    _emit(out, payload, args.format, human)
    return EXIT_OK


_COMMANDS = {
    "merge": cmd_merge,
    "kb": cmd_kb,
    "check": cmd_check,
    "matrix": cmd_matrix,
    "cells": cmd_cells,
    "parse": cmd_parse,
}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    try:
        return _COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"esmerge: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except _PARSE_ERRORS as exc:
        print(f"esmerge: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except BudgetExceededError as exc:
        print(f"esmerge: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except MergeError as exc:
        print(f"esmerge: {exc}", file=sys.stderr)
        return EXIT_SEMANTIC


if __name__ == "__main__":
    sys.exit(main())
