"""
Formula and sequent model.
This module defines the abstract syntax of the correlated-knowledge language: formulas,
labelled formulas, relational atoms and labelled sequents. All values are immutable.
"""
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, Tuple, Union

from .structure import Group, JointObservation, format_group


class Formula:
    """Base class of every formula node."""

    @cached_property
    def text(self) -> str:
        from ..syntax.printer import print_formula
        return print_formula(self)

    def __str__(self) -> str:
        return self.text


@dataclass(frozen=True)
class Atom(Formula):
    name: str


@dataclass(frozen=True)
class ObsAtom(Formula):
    """
    Observation atom ``o^r``: observation ``o`` over its group yields result ``r``.

    Attributes:
        observation (JointObservation): Joint observation over a nonempty group
        result (str): Result identifier from R
    """
    observation: JointObservation
    result: str

    @property
    def group(self) -> Group:
        return self.observation.group


@dataclass(frozen=True)
class Not(Formula):
    body: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Know(Formula):
    """``K_I A``: group ``I`` knows ``A``. The group may be empty."""
    group: Group
    body: Formula


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class Bottom(Formula):
    pass


@dataclass(frozen=True)
class LabelledFormula:
    """
    Labelled formula ``s: A``.

    Attributes:
        label (str): State label
        formula (Formula): The formula holding at that state
    """
    label: str
    formula: Formula

    @cached_property
    def text(self) -> str:
        return f"{self.label}: {self.formula.text}"

    def __str__(self) -> str:
        return self.text


@dataclass(frozen=True)
class RelationalAtom:
    """
    Relational atom ``s ~_I t``.

    Attributes:
        left (str): Label s
        right (str): Label t
        group (FrozenSet[str]): Agent group I
    """
    left: str
    right: str
    group: Group

    @cached_property
    def text(self) -> str:
        return f"{self.left} ~{format_group(self.group)} {self.right}"

    def __str__(self) -> str:
        return self.text


Member = Union[LabelledFormula, RelationalAtom]


def _text_key(member) -> str:
    return member.text


@dataclass(frozen=True)
class Sequent:
    """
    Labelled sequent ``Γ ⇒ Δ`` over sets of members.

    Attributes:
        antecedent (FrozenSet[Member]): Labelled formulas and relational atoms (Γ)
        succedent (FrozenSet[LabelledFormula]): Labelled formulas (Δ)
    """
    antecedent: FrozenSet[Member] = frozenset()
    succedent: FrozenSet[LabelledFormula] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "antecedent", frozenset(self.antecedent))
        object.__setattr__(self, "succedent", frozenset(self.succedent))
        if any(isinstance(member, RelationalAtom) for member in self.succedent):
            raise ValueError("relational atoms may only occur in the antecedent")

    @classmethod
    def of(cls, antecedent: Iterable[Member] = (), succedent: Iterable[LabelledFormula] = ()) -> 'Sequent':
        return cls(frozenset(antecedent), frozenset(succedent))

    def extend(
        self,
        left: Iterable[Member] = (),
        right: Iterable[LabelledFormula] = (),
        drop_left: Iterable[Member] = (),
        drop_right: Iterable[LabelledFormula] = ()
    ) -> 'Sequent':
        """Return a new sequent with members removed and then added on either side."""
        return Sequent(
            (self.antecedent - frozenset(drop_left)) | frozenset(left),
            (self.succedent - frozenset(drop_right)) | frozenset(right)
        )

    @cached_property
    def relations(self) -> FrozenSet[RelationalAtom]:
        return frozenset(m for m in self.antecedent if isinstance(m, RelationalAtom))

    @cached_property
    def left_formulas(self) -> Tuple[LabelledFormula, ...]:
        """Labelled formulas of Γ in canonical order."""
        return tuple(sorted(
            (m for m in self.antecedent if isinstance(m, LabelledFormula)), key=_text_key
        ))

    @cached_property
    def right_formulas(self) -> Tuple[LabelledFormula, ...]:
        return tuple(sorted(self.succedent, key=_text_key))

    @cached_property
    def relation_pairs(self) -> Dict[Group, FrozenSet[Tuple[str, str]]]:
        """Group → set of (left, right) label pairs related in Γ."""
        pairs: Dict[Group, set] = {}
        for relation in self.relations:
            pairs.setdefault(relation.group, set()).add((relation.left, relation.right))
        return {group: frozenset(found) for group, found in pairs.items()}

    @cached_property
    def observation_results(self) -> Dict[Tuple[str, JointObservation], Tuple[str, ...]]:
        """(label, observation) → results asserted for it in Γ, sorted."""
        found: Dict[Tuple[str, JointObservation], set] = {}
        for member in self.left_formulas:
            if isinstance(member.formula, ObsAtom):
                key = (member.label, member.formula.observation)
                found.setdefault(key, set()).add(member.formula.result)
        return {key: tuple(sorted(results)) for key, results in found.items()}

    @cached_property
    def labels(self) -> Tuple[str, ...]:
        """Every label occurring in the sequent, sorted."""
        found = set()
        for member in self.antecedent:
            if isinstance(member, RelationalAtom):
                found.update((member.left, member.right))
            else:
                found.add(member.label)
        found.update(member.label for member in self.succedent)
        return tuple(sorted(found))

    @cached_property
    def text(self) -> str:
        from ..syntax.printer import print_sequent
        return print_sequent(self)

    def __str__(self) -> str:
        return self.text

