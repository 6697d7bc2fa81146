"""
Exhaustive enumeration of correlation models over small structures.
"""
import itertools
from dataclasses import dataclass
from math import comb
from typing import Dict, Iterable, Iterator

from loguru import logger

from ..models.errors import BudgetExceededError
from ..models.structure import ObservationStructure
from .evaluation import valuation_tensor
from .model import CorrelationModel, function_space


@dataclass
class OracleBudget:
    """
    Limits on exhaustive sweeps.

    Attributes:
        max_function_space (int): Largest admissible number of outcome tables
        max_models (int): Largest admissible number of (state set, valuation) pairs
        max_label_assignments (int): Largest number of label → state maps per state set
    """
    max_function_space: int = 64
    max_models: int = 5_000_000
    max_label_assignments: int = 100_000

    @classmethod
    def from_config(cls, config: Dict) -> 'OracleBudget':
        """Build from the ``oracle`` section of the prover configuration."""
        section = config.get("oracle", config) or {}
        defaults = cls()
        return cls(
            max_function_space=int(section.get("max_function_space", defaults.max_function_space)),
            max_models=int(section.get("max_models", defaults.max_models)),
            max_label_assignments=int(section.get("max_label_assignments", defaults.max_label_assignments))
        )


def model_count(space_size: int, atom_count: int) -> int:
    """Number of models over a function space of the given size: Σ_k C(F,k)·2^(k·atoms)."""
    return sum(comb(space_size, k) * (1 << (k * atom_count)) for k in range(1, space_size + 1))


def check_budget(structure: ObservationStructure, atom_count: int, budget: OracleBudget) -> int:
    """
    Returns:
        Size of the function space

    Raises:
        BudgetExceededError: If the sweep is larger than the budget allows
    """
    space = len(structure.results) ** len(structure.joint_observations(structure.full_group))
    if space > budget.max_function_space:
        raise BudgetExceededError(
            f"Function space has {space} states, budget allows {budget.max_function_space}"
        )
    total = model_count(space, atom_count)
    if total > budget.max_models:
        raise BudgetExceededError(f"{total} models to enumerate, budget allows {budget.max_models}")
    return space


def enumerate_frames(structure: ObservationStructure, budget: OracleBudget = None) -> Iterator[CorrelationModel]:
    """
    Every nonempty state set with empty valuation, by size and then lexicographically.

    Raises:
        BudgetExceededError: If the function space exceeds the budget
    """
    budget = budget or OracleBudget()
    check_budget(structure, 0, budget)
    space = function_space(structure)
    for size in range(1, len(space) + 1):
        for subset in itertools.combinations(space, size):
            yield CorrelationModel(structure, subset)


def enumerate_models(structure: ObservationStructure, atoms: Iterable[str],
                     budget: OracleBudget = None) -> Iterator[CorrelationModel]:
    """
    Every correlation model over the structure and the given atoms.

    Models come ordered by state set (size, then lexicographic) and then by
    valuation index.

    Raises:
        BudgetExceededError: If the sweep exceeds the budget
    """
    budget = budget or OracleBudget()
    atoms = sorted(set(atoms))
    check_budget(structure, len(atoms), budget)
    logger.debug(f"Enumerating models over {len(atoms)} atom(s)")
    for frame in enumerate_frames(structure, budget):
        count, truth = valuation_tensor(atoms, len(frame))
        for index in range(count):
            yield frame.with_valuation({atom: truth[atom][index] for atom in atoms})
