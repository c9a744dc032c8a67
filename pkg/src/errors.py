"""Exception hierarchy shared by the library, the verification harness and the CLI.

The CLI maps these onto exit codes: precondition and file-format problems exit with 2,
exhausted budgets exit with 3.
"""

from __future__ import annotations

from pathlib import Path
from typing import Optional


class SymAvoidError(Exception):
    """Base class for every error raised on purpose by this package."""


class PreconditionError(SymAvoidError, ValueError):
    """An operation was called outside the hypotheses it is defined for."""


class DegreeMismatchError(PreconditionError):
    """Two objects that must live in the same degree do not."""

    def __init__(self, expected: int, actual: int, what: str = "degree") -> None:
        self.expected = expected
        self.actual = actual
        super().__init__(f"{what} mismatch: expected {expected}, got {actual}")


class NotSymmetricError(PreconditionError):
    """A quasisymmetric element was treated as symmetric but is not."""


class ProfileMismatchError(PreconditionError):
    """A set family does not have the intersection profile an operation requires."""


class BudgetExceededError(SymAvoidError):
    """An enumeration cap or a search/candidate budget would be exceeded."""

    def __init__(self, required: int, budget: int, what: str = "candidates") -> None:
        self.required = required
        self.budget = budget
        self.what = what
        super().__init__(f"{what} budget exceeded: need {required:,}, budget is {budget:,}")


class FileFormatError(SymAvoidError, ValueError):
    """A pattern or family file could not be parsed."""

    def __init__(self, message: str, path: Optional[Path] = None, line: Optional[int] = None):
        self.path = path
        self.line = line
        location = ""
        if path is not None:
            location = f"{path}"
            if line is not None:
                location += f":{line}"
            location += ": "
        elif line is not None:
            location = f"line {line}: "
        super().__init__(f"{location}{message}")
