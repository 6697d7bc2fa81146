"""
Polarity and occurrence analysis.
Counts negative knowledge-operator occurrences (the chain bound of the right
knowledge rule), formula complexity and atom sets.
"""
from typing import Dict, FrozenSet, Iterator, Tuple, Union

from ..models.formula import (
    And, Atom, Formula, Implies, Know, LabelledFormula, Not, Or, RelationalAtom, Sequent
)
from ..models.structure import Group


def _k_occurrences(formula: Formula, positive: bool) -> Iterator[Tuple[Group, bool]]:
    """Yield (group, positive) for every K node, with polarity flipping under ~ and left of ->."""
    stack = [(formula, positive)]
    while stack:
        node, polarity = stack.pop()
        if isinstance(node, Know):
            yield node.group, polarity
            stack.append((node.body, polarity))
        elif isinstance(node, Not):
            stack.append((node.body, not polarity))
        elif isinstance(node, Implies):
            stack.append((node.left, not polarity))
            stack.append((node.right, polarity))
        elif isinstance(node, (And, Or)):
            stack.append((node.left, polarity))
            stack.append((node.right, polarity))


def _sequent_occurrences(sequent: Sequent) -> Iterator[Tuple[Group, bool]]:
    for member in sequent.antecedent:
        if isinstance(member, LabelledFormula):
            yield from _k_occurrences(member.formula, positive=False)
    for member in sequent.succedent:
        yield from _k_occurrences(member.formula, positive=True)


def k_occurrence_counts(sequent: Sequent) -> Dict[Group, int]:
    """
    Negative K occurrences per group.

    Every group with at least one K occurrence (of either polarity) has an entry,
    so the keys are exactly the modalities of the sequent.
    """
    counts: Dict[Group, int] = {}
    for group, positive in _sequent_occurrences(sequent):
        counts[group] = counts.get(group, 0) + (0 if positive else 1)
    return counts


def negative_k_occurrences(sequent: Sequent, group) -> int:
    """
    Number of negative occurrences of ``K_group`` in a sequent.

    Antecedent formulas start negative, succedent formulas positive; polarity flips
    under negation and in the left argument of an implication. Relational atoms
    contribute nothing.
    """
    group = frozenset(group)
    return sum(1 for g, positive in _sequent_occurrences(sequent) if g == group and not positive)


def formula_complexity(formula: Formula) -> int:
    """Number of connectives and modalities; atoms count zero."""
    count = 0
    stack = [formula]
    while stack:
        node = stack.pop()
        if isinstance(node, (Not, Know)):
            count += 1
            stack.append(node.body)
        elif isinstance(node, (And, Or, Implies)):
            count += 1
            stack.extend((node.left, node.right))
    return count


def subformulas(formula: Formula) -> Iterator[Formula]:
    stack = [formula]
    while stack:
        node = stack.pop()
        yield node
        if isinstance(node, (Not, Know)):
            stack.append(node.body)
        elif isinstance(node, (And, Or, Implies)):
            stack.extend((node.right, node.left))


def atoms_of(item: Union[Formula, Sequent]) -> FrozenSet[str]:
    """Names of the propositional atoms in a formula or sequent."""
    if isinstance(item, Sequent):
        formulas = [m.formula for m in item.antecedent if not isinstance(m, RelationalAtom)]
        formulas.extend(m.formula for m in item.succedent)
    else:
        formulas = [item]
    return frozenset(
        node.name for formula in formulas for node in subformulas(formula) if isinstance(node, Atom)
    )


def total_negative_occurrences(sequent: Sequent) -> int:
    """Aggregate of :func:`k_occurrence_counts` over all groups."""
    return sum(k_occurrence_counts(sequent).values())
