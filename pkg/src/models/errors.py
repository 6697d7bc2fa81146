"""
Exception hierarchy for the correlated-knowledge prover.
"""
from typing import List, Optional


class LCKError(Exception):
    """Base class for every error raised by the prover."""


class StructureError(LCKError, ValueError):
    """
    Raised when an observation structure violates one of its invariants.

    Attributes:
        problems (List[str]): Every violated condition, in detection order
    """

    def __init__(self, message: str, problems: Optional[List[str]] = None):
        super().__init__(message)
        self.problems = problems or []


class CompositionError(StructureError):
    """Raised when the composition operation gets an empty or foreign input."""


class ParseError(LCKError):
    """
    Raised for lexical and grammar errors in formula or sequent text.

    Attributes:
        line (Optional[int]): 1-based line of the offending token
        column (Optional[int]): 1-based column of the offending token
    """

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        if line is not None and column is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column


class FormulaValidationError(ParseError):
    """Raised when a parsed formula names an unknown agent, observation or result."""


class RuleApplicationError(LCKError):
    """Raised when a rule instance does not apply to the given sequent."""


class ModelError(LCKError):
    """Raised for malformed correlation models or states outside a model."""


class BudgetExceededError(LCKError):
    """Raised when an exhaustive oracle sweep would exceed its configured budget."""


class ResourceLimitExceeded(LCKError):
    """Raised inside proof search when the node or time cap is hit."""
