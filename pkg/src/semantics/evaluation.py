"""
Formula evaluation over correlation models.
Truth values are numpy arrays of shape (valuations, states), so one pass evaluates a
formula over every valuation of a state set at once.
"""
from typing import Dict, Iterable, Optional, Tuple

import numpy as np

from ..models.formula import (
    And, Atom, Bottom, Formula, Implies, Know, Not, ObsAtom, Or, Top
)
from .model import CorrelationModel, State


def valuation_tensor(atoms: Iterable[str], size: int) -> Tuple[int, Dict[str, np.ndarray]]:
    """
    Truth arrays for every valuation of ``atoms`` over ``size`` states.

    Valuation ``v`` makes atom number ``a`` true at state ``i`` iff bit
    ``a * size + i`` of ``v`` is set.

    Returns:
        (number of valuations, atom → boolean array of shape (valuations, size))
    """
    atoms = sorted(atoms)
    count = 1 << (len(atoms) * size)
    indices = np.arange(count, dtype=np.int64)[:, None]
    truth = {}
    for position, atom in enumerate(atoms):
        shifts = np.arange(size, dtype=np.int64)[None, :] + position * size
        truth[atom] = ((indices >> shifts) & 1).astype(bool)
    return count, truth


def evaluate_batch(
    frame: CorrelationModel,
    formula: Formula,
    atom_truth: Dict[str, np.ndarray],
    count: int,
    cache: Optional[Dict[Formula, np.ndarray]] = None
) -> np.ndarray:
    """
    Evaluate a formula over a frame for a batch of valuations.

    Args:
        frame: Model supplying states, relations and observation truth
        formula: Formula to evaluate
        atom_truth: Atom → array of shape (count, states); missing atoms are false
        count: Number of valuations in the batch
        cache: Optional memo shared between calls on the same batch

    Returns:
        Boolean array of shape (count, states)
    """
    cache = {} if cache is None else cache
    size = len(frame)

    def run(node: Formula) -> np.ndarray:
        cached = cache.get(node)
        if cached is not None:
            return cached
        if isinstance(node, Atom):
            value = atom_truth.get(node.name)
            if value is None:
                value = np.zeros((count, size), dtype=bool)
        elif isinstance(node, ObsAtom):
            value = np.broadcast_to(frame.observation_truth(node), (count, size))
        elif isinstance(node, Top):
            value = np.ones((count, size), dtype=bool)
        elif isinstance(node, Bottom):
            value = np.zeros((count, size), dtype=bool)
        elif isinstance(node, Not):
            value = ~run(node.body)
        elif isinstance(node, And):
            value = run(node.left) & run(node.right)
        elif isinstance(node, Or):
            value = run(node.left) | run(node.right)
        elif isinstance(node, Implies):
            value = ~run(node.left) | run(node.right)
        elif isinstance(node, Know):
            # failures[v, i] counts related states j where the body is false
            relation = frame.relation(node.group).astype(np.int64)
            failures = (~run(node.body)).astype(np.int64) @ relation.T
            value = failures == 0
        else:
            raise TypeError(f"Not a formula: {node!r}")
        cache[node] = value
        return value

    return run(formula)


def evaluate(model: CorrelationModel, formula: Formula) -> np.ndarray:
    """Truth vector of a formula over the states of a model."""
    truth = {atom: vector[None, :] for atom, vector in model.valuation.items()}
    return evaluate_batch(model, formula, truth, 1)[0]


def satisfies(model: CorrelationModel, state: State, formula: Formula) -> bool:
    """
    Whether ``model, state ⊨ formula``.

    Raises:
        ModelError: If the state is not in the model
    """
    position = model.index(state)
    return bool(evaluate(model, formula)[position])
