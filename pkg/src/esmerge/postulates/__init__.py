"""Bounded exhaustive checking of merging postulates at both levels."""

from .core import DEFAULT_BUDGET, SearchBounds, SearchConfig, Status, Verdict, Witness, combine
from .epistemic_checks import (
    check_arb,
    check_comm,
    check_E,
    check_maj,
    check_unit,
    maj_stabilization,
)
from .kb_checks import LIFTINGS, check_KP, check_kp_arb_maj, default_lifting, induced_kb_merge
from .matrix import (
    ACCEPTANCE_BOUNDS,
    CLAIMS,
    ESCALATION,
    POSTULATES,
    Claim,
    Matrix,
    check,
    normalize_postulate,
    render_matrix,
    satisfaction_matrix,
)
from .replay import replay

__all__ = [
    "ACCEPTANCE_BOUNDS", "CLAIMS", "DEFAULT_BUDGET", "ESCALATION", "LIFTINGS", "POSTULATES",
    "Claim", "Matrix", "SearchBounds", "SearchConfig", "Status", "Verdict", "Witness",
    "check", "check_E", "check_KP", "check_arb", "check_comm", "check_kp_arb_maj", "check_maj",
    "check_unit", "combine", "default_lifting", "induced_kb_merge", "maj_stabilization",
    "normalize_postulate", "render_matrix", "replay", "satisfaction_matrix",
]
