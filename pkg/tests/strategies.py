"""
Hypothesis strategies over formula trees.
"""
from hypothesis import strategies as st

from src.models.formula import And, Atom, Implies, Know, Not, Or
from src.models.structure import ObservationStructure
from src.utils.formula_generator import observation_leaves


def formulas(structure: ObservationStructure, atoms=("p", "q"), max_leaves: int = 6,
             with_observations: bool = True):
    """Formulas over ``atoms`` (and the structure's observation atoms) with every connective."""
    leaf_pool = [Atom(name) for name in atoms]
    if with_observations:
        leaf_pool += observation_leaves(structure)
    leaves = st.sampled_from(leaf_pool)
    groups = st.sampled_from(structure.groups())

    def extend(children):
        return st.one_of(
            children.map(Not),
            st.builds(Know, groups, children),
            st.builds(And, children, children),
            st.builds(Or, children, children),
            st.builds(Implies, children, children),
        )

    return st.recursive(leaves, extend, max_leaves=max_leaves)


def propositional(atoms=("p", "q", "r"), max_leaves: int = 6):
    """Formulas without knowledge operators or observation atoms."""
    leaves = st.sampled_from([Atom(name) for name in atoms])

    def extend(children):
        return st.one_of(
            children.map(Not),
            st.builds(And, children, children),
            st.builds(Or, children, children),
            st.builds(Implies, children, children),
        )

    return st.recursive(leaves, extend, max_leaves=max_leaves)
