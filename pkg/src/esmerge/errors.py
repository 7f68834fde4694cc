"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class MergeError(Exception):
    """Base class for all errors raised by esmerge."""


class FormulaSyntaxError(MergeError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnknownAtomError(MergeError):
    def __init__(self, atom: str):
        super().__init__(f"unknown atom {atom!r}")
        self.atom = atom


class VocabularyError(MergeError):
    """Invalid vocabulary declaration (duplicate atoms, too many atoms, ...)."""


class VocabularyMismatchError(MergeError):
    pass


class InconsistentKnowledgeBaseError(MergeError):
    pass


class EmptyListError(MergeError):
    pass


class RankOverflowError(MergeError):
    pass


class SequenceNotInSpaceError(MergeError):
    pass


class SpaceTooLargeError(MergeError):
    pass


class BudgetExceededError(MergeError):
    pass


class FormatError(MergeError):
    """Malformed state, knowledge-base or infobase file."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
