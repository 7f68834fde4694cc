"""The operator by postulate satisfaction grid and its comparison with the claims."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from ..errors import BudgetExceededError
from ..formats import verdict_to_dict
from ..operators import ALL_OPERATORS, OperatorId
from .core import SearchBounds, SearchConfig, Status, Verdict
from .epistemic_checks import check_arb, check_comm, check_E, check_maj, check_unit
from .kb_checks import check_KP, check_kp_arb_maj

EPISTEMIC_POSTULATES = ("E1", "E2", "E3", "E4", "E5", "E6", "Unit", "Comm", "Arb", "Maj")
KB_POSTULATES = ("KP1", "KP2", "KP3", "KP4", "KP5", "KP6", "arb", "maj")
POSTULATES = EPISTEMIC_POSTULATES + KB_POSTULATES

ACCEPTANCE_BOUNDS = SearchBounds(n_atoms=2, max_rank=2, list_len=2, rep_bound=3, meta_list_len=2)
# searched in order when a claimed violation has no witness at the base bounds
ESCALATION = (
    SearchBounds(n_atoms=2, max_rank=2, list_len=2, rep_bound=4, meta_list_len=2),
    SearchBounds(n_atoms=2, max_rank=3, list_len=2, rep_bound=4, meta_list_len=2),
    SearchBounds(n_atoms=2, max_rank=2, list_len=3, rep_bound=4, meta_list_len=2),
    SearchBounds(n_atoms=2, max_rank=3, list_len=3, rep_bound=4, meta_list_len=2),
)


def check(postulate: str, op: OperatorId, bounds: SearchBounds,
          config: SearchConfig | None = None, lifting: str | None = None) -> Verdict:
    """Run the checker of any postulate by name (case-sensitive for arb/maj vs Arb/Maj)."""
    config = config or SearchConfig()
    if postulate in ("E1", "E2", "E3", "E4", "E5", "E6"):
        return check_E(int(postulate[1]), op, bounds, config)
    if postulate == "Unit":
        return check_unit(op, bounds, config)
    if postulate == "Comm":
        return check_comm(op, bounds, config)
    if postulate == "Arb":
        return check_arb(op, bounds, config)
    if postulate == "Maj":
        return check_maj(op, bounds, config)
    if postulate.startswith("KP") and postulate[2:].isdigit():
        return check_KP(int(postulate[2:]), op, bounds, config, lifting)
    if postulate in ("arb", "maj"):
        return check_kp_arb_maj(postulate, op, bounds, config, lifting or "dalal")
    raise ValueError(f"unknown postulate {postulate!r} (expected one of {', '.join(POSTULATES)})")


def normalize_postulate(name: str) -> str:
    """Accept any capitalisation except where it distinguishes the two levels."""
    if name in POSTULATES:
        return name
    for p in POSTULATES:
        if p.lower() == name.lower() and p.lower() not in ("arb", "maj"):
            return p
    raise ValueError(f"unknown postulate {name!r} (expected one of {', '.join(POSTULATES)})")


# --- claims ---------------------------------------------------------------------

@dataclass(frozen=True)
class Claim:
    """``expected`` holds for every listed postulate, or (``any_of``) for at least one."""

    operator: OperatorId
    postulates: tuple[str, ...]
    expected: Status
    any_of: bool = False

    @property
    def label(self) -> str:
        joined = ("/" if self.any_of else ",").join(self.postulates)
        word = "holds" if self.expected is Status.HOLDS else "violated"
        prefix = "some of " if self.any_of else ""
        return f"{self.operator.label}: {prefix}{joined} {word}"


def _claims() -> tuple[Claim, ...]:
    O, H, V = OperatorId, Status.HOLDS, Status.VIOLATED
    e16 = ("E1", "E2", "E3", "E4", "E5", "E6")
    out = []
    for op, arb in ((O.LS, H), (O.RLS, V)):
        out += [Claim(op, e16 + ("Comm",), H), Claim(op, ("Maj",), V), Claim(op, ("Arb",), arb)]
    out += [Claim(O.LS, ("KP6",), V), Claim(O.RLS, ("KP6",), H)]
    for op, arb, kp6 in ((O.MAX, H, V), (O.GMAX, V, H)):
        out += [Claim(op, e16, H), Claim(op, ("Arb",), arb), Claim(op, ("KP6",), kp6)]
    for op in (O.CONS, O.RCONS):
        out += [Claim(op, ("E3", "E4"), V), Claim(op, ("Unit",), H)]
    out += [
        Claim(O.SIGMA, e16 + ("Comm", "Maj", "KP5", "KP6"), H),
        Claim(O.SIGMA, ("Arb",), V),
        Claim(O.RSIGMA, ("E1", "E2", "E3", "E4", "Comm", "Maj"), H),
        Claim(O.RSIGMA, ("Arb",), V),
        Claim(O.RSIGMA, ("E5", "E6"), V, any_of=True),
        Claim(O.RSIGMA, ("KP5", "KP6"), V, any_of=True),
        Claim(O.LEX, e16 + ("KP5", "KP6"), H),
        Claim(O.LEX, ("Comm",), V),
    ]
    out += [Claim(op, ("KP4",), V) for op in ALL_OPERATORS]
    return tuple(out)


CLAIMS = _claims()


@dataclass
class ClaimResult:
    claim: Claim
    passed: bool
    verdicts: tuple[Verdict, ...]  # the verdicts that decide the claim


@dataclass
class Matrix:
    bounds: SearchBounds
    cells: dict[tuple[OperatorId, str], Verdict]
    escalated: dict[tuple[OperatorId, str], Verdict] = field(default_factory=dict)
    claims: list[ClaimResult] = field(default_factory=list)

    def status(self, op: OperatorId, postulate: str) -> Status:
        return self.cells[(op, postulate)].status


def satisfaction_matrix(
    bounds: SearchBounds = ACCEPTANCE_BOUNDS,
    config: SearchConfig | None = None,
    operators=ALL_OPERATORS,
    postulates=POSTULATES,
    escalate: bool = True,
) -> Matrix:
    """Check every postulate for every operator at ``bounds``.

    With ``escalate`` set, a claimed violation without a witness is searched
    again at each of :data:`ESCALATION` until one turns up; claims are then
    judged on the base verdicts plus any escalation witnesses.
    """
    config = config or SearchConfig()
    cells = {(op, p): check(p, op, bounds, config) for op in operators for p in postulates}
    matrix = Matrix(bounds, cells)
    for claim in CLAIMS:
        if claim.operator not in operators or not set(claim.postulates) <= set(postulates):
            continue
        matrix.claims.append(_judge(claim, matrix, config, escalate))
    return matrix


def _escalate(matrix, op, postulate, config) -> Verdict | None:
    key = (op, postulate)
    if key not in matrix.escalated:
        found = None
        for b in ESCALATION:
            try:
                v = check(postulate, op, b, config)
            except BudgetExceededError:
                continue
            if v.violated:
                found = v
                break
        matrix.escalated[key] = found
    return matrix.escalated[key]


def _judge(claim: Claim, matrix: Matrix, config, escalate: bool) -> ClaimResult:
    base = [matrix.cells[(claim.operator, p)] for p in claim.postulates]
    if claim.expected is Status.HOLDS:
        return ClaimResult(claim, all(v.holds for v in base), tuple(base))
    deciding = []
    for v in base:
        if not v.violated and escalate:
            v = _escalate(matrix, claim.operator, v.postulate, config) or v
        deciding.append(v)
    hits = [v.violated for v in deciding]
    passed = any(hits) if claim.any_of else all(hits)
    return ClaimResult(claim, passed, tuple(deciding))


# --- rendering -------------------------------------------------------------------

_MARK = {Status.HOLDS: "+", Status.VIOLATED: "x", Status.UNKNOWN: "?"}


def render_matrix(matrix: Matrix, fmt: str = "human") -> str:
    ops = sorted({op for op, _ in matrix.cells}, key=ALL_OPERATORS.index)
    posts = [p for p in POSTULATES if any((op, p) in matrix.cells for op in ops)]
    if fmt == "structured":
        doc = {
            "bounds": matrix.bounds.as_dict(),
            "cells": [verdict_to_dict(matrix.cells[(op, p)]) for op in ops for p in posts],
            "claims": [
                {
                    "claim": r.claim.label,
                    "passed": r.passed,
                    "verdicts": [verdict_to_dict(v) for v in r.verdicts],
                }
                for r in matrix.claims
            ],
        }
        return json.dumps(doc, indent=2, sort_keys=True)
    header = "operator ".ljust(9) + " ".join(p.rjust(4) for p in posts)
    lines = [header]
    for op in ops:
        marks = " ".join(_MARK[matrix.cells[(op, p)].status].rjust(4) for p in posts)
        lines.append(op.label.ljust(9) + marks)
    lines.append("")
    lines.append("+ holds within bounds, x violated (witness found), ? unknown")
    if matrix.claims:
        lines.append("")
        for r in matrix.claims:
            mark = "PASS" if r.passed else "FAIL"
            where = ""
            escalated = [v for v in r.verdicts if v.violated and v.bounds != matrix.bounds]
            if escalated:
                b = escalated[0].bounds
                where = f" (witness at max_rank={b.max_rank}, list_len={b.list_len})"
            lines.append(f"{mark}  {r.claim.label}{where}")
    return "\n".join(lines)
