"""
Printer for formulas and sequents.
Output re-parses to the same tree and uses the fewest parentheses the precedence
rules allow: ``~`` and ``K{..}`` bind tightest, then ``&``, ``|`` and ``->``.
"""
from ..models.formula import (
    And, Atom, Bottom, Formula, Implies, Know, Not, ObsAtom, Or, Sequent, Top
)
from ..models.structure import format_group

IMPLIES_LEVEL = 1
OR_LEVEL = 2
AND_LEVEL = 3
UNARY_LEVEL = 4
ATOMIC_LEVEL = 5

TOP_SYMBOL = "⊤"
BOTTOM_SYMBOL = "⊥"
TURNSTILE = "|-"


def _level(formula: Formula) -> int:
    if isinstance(formula, Implies):
        return IMPLIES_LEVEL
    if isinstance(formula, Or):
        return OR_LEVEL
    if isinstance(formula, And):
        return AND_LEVEL
    if isinstance(formula, (Not, Know)):
        return UNARY_LEVEL
    return ATOMIC_LEVEL


def _wrap(formula: Formula, minimum: int) -> str:
    rendered = formula.text
    return f"({rendered})" if _level(formula) < minimum else rendered


def print_formula(formula: Formula) -> str:
    """
    Render a formula in the concrete syntax.

    Args:
        formula: Formula to print

    Returns:
        Text that parses back to the same formula
    """
    if isinstance(formula, Atom):
        return formula.name
    if isinstance(formula, ObsAtom):
        values = ",".join(formula.observation.values)
        return f"obs{format_group(formula.group)}({values})^{formula.result}"
    if isinstance(formula, Top):
        return TOP_SYMBOL
    if isinstance(formula, Bottom):
        return BOTTOM_SYMBOL
    if isinstance(formula, Not):
        return "~" + _wrap(formula.body, UNARY_LEVEL)
    if isinstance(formula, Know):
        return f"K{format_group(formula.group)} " + _wrap(formula.body, UNARY_LEVEL)
    if isinstance(formula, And):
        return _wrap(formula.left, AND_LEVEL) + " & " + _wrap(formula.right, AND_LEVEL + 1)
    if isinstance(formula, Or):
        return _wrap(formula.left, OR_LEVEL) + " | " + _wrap(formula.right, OR_LEVEL + 1)
    if isinstance(formula, Implies):
        return _wrap(formula.left, IMPLIES_LEVEL + 1) + " -> " + _wrap(formula.right, IMPLIES_LEVEL)
    raise TypeError(f"Not a formula: {formula!r}")


def print_sequent(sequent: Sequent) -> str:
    """Render ``Γ |- Δ`` with each side in sorted text order."""
    left = ", ".join(sorted(member.text for member in sequent.antecedent))
    right = ", ".join(sorted(member.text for member in sequent.succedent))
    return f"{left} {TURNSTILE} {right}".strip()
