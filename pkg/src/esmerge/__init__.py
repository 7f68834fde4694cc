"""Merging of epistemic states represented as ranking functions."""

from .epistemic import (
    EpistemicState,
    KnowledgeBaseView,
    from_dalal,
    knowledge_base,
    max_rank,
    min_rank,
    normalize,
    states_equal,
)
from .logic import Vocabulary, entails, models, parse
from .operators import ALL_OPERATORS, OperatorId, merge

__all__ = [
    "ALL_OPERATORS",
    "EpistemicState",
    "KnowledgeBaseView",
    "OperatorId",
    "Vocabulary",
    "entails",
    "from_dalal",
    "knowledge_base",
    "max_rank",
    "merge",
    "min_rank",
    "models",
    "normalize",
    "parse",
    "states_equal",
]
