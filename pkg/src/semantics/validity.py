"""
Validity checking by exhaustive model enumeration.
"""
import itertools
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np
from loguru import logger

from ..models.errors import BudgetExceededError
from ..models.formula import Formula, LabelledFormula, RelationalAtom, Sequent
from ..models.structure import ObservationStructure
from ..syntax.polarity import atoms_of
from .enumeration import OracleBudget, check_budget, enumerate_frames
from .evaluation import evaluate_batch, valuation_tensor
from .extended import formula_of_sequent
from .model import CorrelationModel, State


def _valuation_of(index: int, atoms: List[str], truth: Dict[str, np.ndarray]) -> Dict[str, np.ndarray]:
    return {atom: truth[atom][index] for atom in atoms}


def find_countermodel(
    formula: Formula,
    structure: ObservationStructure,
    atoms: Optional[Iterable[str]] = None,
    budget: Optional[OracleBudget] = None
) -> Optional[Tuple[CorrelationModel, State]]:
    """
    Search for a model and state falsifying a formula.

    Args:
        formula: Formula to refute
        structure: Observation structure of the models
        atoms: Atoms to range the valuation over (defaults to the formula's atoms)
        budget: Enumeration limits

    Returns:
        The first (model, state) in enumeration order where the formula is false,
        or None if the formula is valid

    Raises:
        BudgetExceededError: If the sweep exceeds the budget
    """
    budget = budget or OracleBudget()
    atoms = sorted(set(atoms) if atoms is not None else atoms_of(formula))
    check_budget(structure, len(atoms), budget)
    for frame in enumerate_frames(structure, budget):
        count, truth = valuation_tensor(atoms, len(frame))
        value = evaluate_batch(frame, formula, truth, count)
        failures = np.argwhere(~value)
        if len(failures):
            valuation_index, state_index = failures[0]
            model = frame.with_valuation(_valuation_of(valuation_index, atoms, truth))
            return model, model.states[state_index]
    return None


def check_validity(
    formula: Formula,
    structure: ObservationStructure,
    atoms: Optional[Iterable[str]] = None,
    budget: Optional[OracleBudget] = None
) -> bool:
    """True iff the formula holds at every state of every enumerated model."""
    return find_countermodel(formula, structure, atoms, budget) is None


def find_sequent_countermodel(
    sequent: Sequent,
    structure: ObservationStructure,
    budget: Optional[OracleBudget] = None
) -> Optional[Tuple[CorrelationModel, Dict[str, State]]]:
    """
    Search for a model and label assignment falsifying the formula of a sequent.

    Returns:
        (model, label → state) for the first refutation, or None if the sequent is valid

    Raises:
        BudgetExceededError: If the state sets or label assignments exceed the budget
    """
    budget = budget or OracleBudget()
    atoms = sorted(atoms_of(sequent))
    check_budget(structure, len(atoms), budget)
    sequent_formula = formula_of_sequent(sequent)
    labels = sorted(
        {m.label for m in sequent_formula.premises + sequent_formula.conclusions if isinstance(m, LabelledFormula)}
        | {label for m in sequent_formula.premises if isinstance(m, RelationalAtom) for label in (m.left, m.right)}
    )
    column = {label: index for index, label in enumerate(labels)}

    for frame in enumerate_frames(structure, budget):
        size = len(frame)
        assignments_count = size ** len(labels)
        if assignments_count > budget.max_label_assignments:
            raise BudgetExceededError(
                f"{assignments_count} label assignments, budget allows {budget.max_label_assignments}"
            )
        assignments = np.array(list(itertools.product(range(size), repeat=len(labels))), dtype=np.int64)
        assignments = assignments.reshape(assignments_count, len(labels))
        count, truth = valuation_tensor(atoms, size)
        cache = {}

        def member_truth(member) -> np.ndarray:
            """Truth of one member as an array of shape (valuations, assignments)."""
            if isinstance(member, RelationalAtom):
                relation = frame.relation(member.group)
                holds = relation[assignments[:, column[member.left]], assignments[:, column[member.right]]]
                return np.broadcast_to(holds[None, :], (count, assignments_count))
            value = evaluate_batch(frame, member.formula, truth, count, cache)
            return value[:, assignments[:, column[member.label]]]

        antecedent = np.ones((count, assignments_count), dtype=bool)
        for member in sequent_formula.premises:
            antecedent &= member_truth(member)
        succedent = np.zeros((count, assignments_count), dtype=bool)
        for member in sequent_formula.conclusions:
            succedent |= member_truth(member)
        failures = np.argwhere(antecedent & ~succedent)
        if len(failures):
            valuation_index, assignment_index = failures[0]
            model = frame.with_valuation(_valuation_of(valuation_index, atoms, truth))
            mapping = {
                label: model.states[assignments[assignment_index, column[label]]] for label in labels
            }
            logger.debug(f"Sequent {sequent.text} refuted over {size} state(s)")
            return model, mapping
    return None


def sequent_valid(sequent: Sequent, structure: ObservationStructure,
                  budget: Optional[OracleBudget] = None) -> bool:
    """
    True iff the formula of the sequent holds in every enumerated model under every
    assignment of its labels to states.
    """
    return find_sequent_countermodel(sequent, structure, budget) is None
