"""
Extended syntax for reading a labelled sequent as a single formula.
"""
from dataclasses import dataclass
from typing import Tuple, Union

from ..models.formula import Bottom, LabelledFormula, RelationalAtom, Sequent, Top

DEFAULT_LABEL = "s"


@dataclass(frozen=True)
class SequentFormula:
    """
    ``(Γ conjoined) -> (Δ disjoined)`` over labelled formulas and relational atoms.

    Attributes:
        premises (Tuple[...]): Conjuncts; labelled formulas and relational atoms
        conclusions (Tuple[LabelledFormula, ...]): Disjuncts
    """
    premises: Tuple[Union[LabelledFormula, RelationalAtom], ...]
    conclusions: Tuple[LabelledFormula, ...]

    def __str__(self) -> str:
        left = " & ".join(member.text for member in self.premises)
        right = " | ".join(member.text for member in self.conclusions)
        if len(self.premises) > 1:
            left = f"({left})"
        if len(self.conclusions) > 1:
            right = f"({right})"
        return f"{left} -> {right}"


def formula_of_sequent(sequent: Sequent) -> SequentFormula:
    """
    The formula of a sequent.

    An empty antecedent becomes ``s: ⊤`` and an empty succedent ``s: ⊥``, where ``s``
    is the first label of the sequent.
    """
    label = sequent.labels[0] if sequent.labels else DEFAULT_LABEL
    premises = tuple(sorted(sequent.antecedent, key=lambda member: member.text))
    conclusions = sequent.right_formulas
    if not premises:
        premises = (LabelledFormula(label, Top()),)
    if not conclusions:
        conclusions = (LabelledFormula(label, Bottom()),)
    return SequentFormula(premises, conclusions)
