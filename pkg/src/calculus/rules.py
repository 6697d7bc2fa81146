"""
Rule inventory of the labelled sequent calculus.
Axiom recognition, per-rule instance generators with their side conditions, and rule
application. Generators yield instances in canonical order: rule order first, then the
printed text of the principal members.
"""
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import TYPE_CHECKING, Callable, Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

from ..models.errors import RuleApplicationError
from ..models.formula import (
    And, Atom, Implies, Know, LabelledFormula, Member, Not, ObsAtom, Or, RelationalAtom, Sequent
)
from ..models.structure import Group, JointObservation, ObservationStructure

if TYPE_CHECKING:
    from ..engine.tables import LoopTables

FRESH_PREFIX = "w"


class RuleId(Enum):
    """Enum of the calculus rules; values are the names printed in proof trees."""
    NEG_L = "~=>"
    NEG_R = "=>~"
    OR_L = "v=>"
    OR_R = "=>v"
    AND_L = "&=>"
    AND_R = "=>&"
    IMP_L = "->=>"
    IMP_R = "=>->"
    KI_L = "K_I=>"
    KI_R = "=>K_I"
    KN_L = "K_N=>"
    KN_R = "=>K_N"
    OE = "OE"
    OYR = "OYR"
    CR = "CR"
    SUB_P = "Sub(p)=>"
    SUB_O = "Sub(o^r)=>"
    REF = "Ref"
    TRANS = "Trans"
    EUCL = "Eucl"
    MON = "Mon"


class AxiomKind(Enum):
    """Enum of the three axiom shapes."""
    IDENTITY_ATOM = 1
    IDENTITY_OBSERVATION = 2
    CONFLICTING_RESULTS = 3


# Search priority: non-branching propositional, branching propositional, left knowledge,
# right knowledge, observation branching, then the saturating rules.
PRIORITY_STEPS: Tuple[Tuple[RuleId, ...], ...] = (
    (RuleId.NEG_L, RuleId.NEG_R, RuleId.OR_R, RuleId.AND_L, RuleId.IMP_R),
    (RuleId.OR_L, RuleId.AND_R, RuleId.IMP_L),
    (RuleId.KI_L, RuleId.KN_L),
    (RuleId.KI_R,),
    (RuleId.OYR,),
    (RuleId.KN_R, RuleId.OE, RuleId.CR, RuleId.SUB_P, RuleId.SUB_O,
     RuleId.REF, RuleId.TRANS, RuleId.EUCL, RuleId.MON),
)


@dataclass(frozen=True)
class RuleInstance:
    """
    One application of a rule to a sequent.

    Attributes:
        rule (RuleId): The rule
        principal (Tuple[Member, ...]): Principal members of the conclusion
        label (Optional[str]): Fresh label (right K_I) or target label (OYR)
        groups (Tuple[FrozenSet[str], ...]): Groups involved; (I, J) for Mon
        observation (Optional[JointObservation]): Observation for OYR and CR
        introduced (Tuple[Member, ...]): Members added to the antecedent of the premise
    """
    rule: RuleId
    principal: Tuple[Member, ...] = ()
    label: Optional[str] = None
    groups: Tuple[Group, ...] = ()
    observation: Optional[JointObservation] = None
    introduced: Tuple[Member, ...] = ()

    def describe(self) -> str:
        """Printed principal members; observation saturation names its target instead."""
        if self.principal:
            return ", ".join(member.text for member in self.principal)
        if self.rule == RuleId.OYR and self.observation is not None:
            return f"{self.label}: {self.observation}"
        return ", ".join(member.text for member in self.introduced)


@dataclass
class RuleContext:
    """
    What the generators need besides the sequent.

    Attributes:
        structure (ObservationStructure): Active signature
        tables (Optional[LoopTables]): Loop-check tables; None disables the gates
    """
    structure: ObservationStructure
    tables: Optional['LoopTables'] = None


# ---------------------------------------------------------------------- axioms

def find_axiom(sequent: Sequent) -> Optional[Tuple[AxiomKind, Tuple[LabelledFormula, ...]]]:
    """
    Find an axiom instance in a sequent.

    Returns:
        (kind, witnessing members) for the first axiom in canonical order, or None
    """
    for member in sequent.left_formulas:
        if isinstance(member.formula, Atom) and member in sequent.succedent:
            return AxiomKind.IDENTITY_ATOM, (member,)
    for member in sequent.left_formulas:
        if isinstance(member.formula, ObsAtom) and member in sequent.succedent:
            return AxiomKind.IDENTITY_OBSERVATION, (member,)
    for (label, observation), results in sorted(
        sequent.observation_results.items(), key=lambda item: (item[0][0], str(item[0][1]))
    ):
        if len(results) > 1:
            witnesses = tuple(LabelledFormula(label, ObsAtom(observation, r)) for r in results[:2])
            return AxiomKind.CONFLICTING_RESULTS, witnesses
    return None


def is_axiom(sequent: Sequent) -> Tuple[bool, Optional[AxiomKind]]:
    """Whether the sequent is an axiom, and of which kind."""
    found = find_axiom(sequent)
    return (True, found[0]) if found else (False, None)


def fresh_label(sequent: Sequent) -> str:
    """First label ``w0, w1, ...`` not occurring in the sequent."""
    used = set(sequent.labels)
    index = 0
    while f"{FRESH_PREFIX}{index}" in used:
        index += 1
    return f"{FRESH_PREFIX}{index}"


# ------------------------------------------------------ propositional rules

def _left_of(sequent: Sequent, kind) -> Iterator[LabelledFormula]:
    return (m for m in sequent.left_formulas if isinstance(m.formula, kind))


def _right_of(sequent: Sequent, kind) -> Iterator[LabelledFormula]:
    return (m for m in sequent.right_formulas if isinstance(m.formula, kind))


def _propositional(rule: RuleId, side: Callable, kind) -> Callable:
    def generate(sequent: Sequent, context: RuleContext) -> Iterator[RuleInstance]:
        for member in side(sequent, kind):
            yield RuleInstance(rule, (member,))
    return generate


def _apply_neg_left(inst: RuleInstance, sequent: Sequent, structure) -> List[Sequent]:
    member = inst.principal[0]
    return [sequent.extend(drop_left=[member], right=[LabelledFormula(member.label, member.formula.body)])]


def _apply_neg_right(inst: RuleInstance, sequent: Sequent, structure) -> List[Sequent]:
    member = inst.principal[0]
    return [sequent.extend(left=[LabelledFormula(member.label, member.formula.body)], drop_right=[member])]


def _halves(member: LabelledFormula) -> Tuple[LabelledFormula, LabelledFormula]:
    return (LabelledFormula(member.label, member.formula.left),
            LabelledFormula(member.label, member.formula.right))


def _apply_or_right(inst, sequent, structure) -> List[Sequent]:
    member = inst.principal[0]
    return [sequent.extend(right=_halves(member), drop_right=[member])]


def _apply_and_left(inst, sequent, structure) -> List[Sequent]:
    member = inst.principal[0]
    return [sequent.extend(left=_halves(member), drop_left=[member])]


def _apply_imp_right(inst, sequent, structure) -> List[Sequent]:
    member = inst.principal[0]
    left, right = _halves(member)
    return [sequent.extend(left=[left], right=[right], drop_right=[member])]


def _apply_or_left(inst, sequent, structure) -> List[Sequent]:
    member = inst.principal[0]
    return [sequent.extend(left=[half], drop_left=[member]) for half in _halves(member)]


def _apply_and_right(inst, sequent, structure) -> List[Sequent]:
    member = inst.principal[0]
    return [sequent.extend(right=[half], drop_right=[member]) for half in _halves(member)]


def _apply_imp_left(inst, sequent, structure) -> List[Sequent]:
    member = inst.principal[0]
    left, right = _halves(member)
    return [
        sequent.extend(right=[left], drop_left=[member]),
        sequent.extend(left=[right], drop_left=[member])
    ]


# ---------------------------------------------------------- knowledge rules

def _know_left(sequent: Sequent, context: RuleContext) -> Iterator[RuleInstance]:
    full = context.structure.full_group
    for member in _left_of(sequent, Know):
        group = member.formula.group
        if group == full:
            continue
        for left, right in sorted(sequent.relation_pairs.get(group, ())):
            if left != member.label:
                continue
            target = LabelledFormula(right, member.formula.body)
            if target in sequent.antecedent:
                continue
            relation = RelationalAtom(left, right, group)
            if context.tables is not None and context.tables.left_applied(member, relation):
                continue
            yield RuleInstance(RuleId.KI_L, (member, relation), groups=(group,), introduced=(target,))


def _know_full_left(sequent: Sequent, context: RuleContext) -> Iterator[RuleInstance]:
    full = context.structure.full_group
    for member in _left_of(sequent, Know):
        if member.formula.group != full:
            continue
        relation = RelationalAtom(member.label, member.label, full)
        target = LabelledFormula(member.label, member.formula.body)
        if relation not in sequent.relations or target in sequent.antecedent:
            continue
        if context.tables is not None and context.tables.left_applied(member, relation):
            continue
        yield RuleInstance(RuleId.KN_L, (member, relation), groups=(full,), introduced=(target,))


def _know_right(sequent: Sequent, context: RuleContext) -> Iterator[RuleInstance]:
    full = context.structure.full_group
    fresh = None
    for member in _right_of(sequent, Know):
        group = member.formula.group
        if group == full:
            continue
        if context.tables is not None and not context.tables.right_allows(group, member.formula.body, member.label):
            continue
        fresh = fresh or fresh_label(sequent)
        yield RuleInstance(
            RuleId.KI_R, (member,), label=fresh, groups=(group,),
            introduced=(RelationalAtom(member.label, fresh, group),)
        )


def _apply_know_right(inst, sequent, structure) -> List[Sequent]:
    member = inst.principal[0]
    return [sequent.extend(
        left=inst.introduced,
        right=[LabelledFormula(inst.label, member.formula.body)],
        drop_right=[member]
    )]


def _know_full_right(sequent: Sequent, context: RuleContext) -> Iterator[RuleInstance]:
    full = context.structure.full_group
    for member in _right_of(sequent, Know):
        if member.formula.group != full:
            continue
        relation = RelationalAtom(member.label, member.label, full)
        if relation not in sequent.relations:
            continue
        if LabelledFormula(member.label, member.formula.body) in sequent.succedent:
            continue
        yield RuleInstance(RuleId.KN_R, (member, relation), groups=(full,))


def _apply_know_full_right(inst, sequent, structure) -> List[Sequent]:
    member = inst.principal[0]
    return [sequent.extend(right=[LabelledFormula(member.label, member.formula.body)], drop_right=[member])]


# -------------------------------------------------------- observation rules

def _observational_equivalence(sequent: Sequent, context: RuleContext) -> Iterator[RuleInstance]:
    structure = context.structure
    results = sequent.observation_results
    labels = sequent.labels
    for group in structure.nonempty_groups():
        observations = structure.joint_observations(group)
        views = {}
        for label in labels:
            view = tuple(results.get((label, o), (None,))[0] for o in observations)
            if None not in view:
                views[label] = view
        pairs = sequent.relation_pairs.get(group, frozenset())
        ordered = sorted(views)
        for i, left in enumerate(ordered):
            for right in ordered[i + 1:]:
                if views[left] != views[right] or (left, right) in pairs or (right, left) in pairs:
                    continue
                principal = tuple(
                    LabelledFormula(label, ObsAtom(o, r))
                    for label in (left, right) for o, r in zip(observations, views[label])
                )
                yield RuleInstance(
                    RuleId.OE, principal, groups=(group,),
                    introduced=(RelationalAtom(left, right, group),)
                )


def _observation_yields_result(sequent: Sequent, context: RuleContext) -> Iterator[RuleInstance]:
    seen = set()
    for member in _right_of(sequent, ObsAtom):
        key = (member.label, member.formula.observation)
        if key in seen or key in sequent.observation_results:
            continue
        seen.add(key)
        yield RuleInstance(
            RuleId.OYR, (member,), label=member.label,
            groups=(member.formula.group,), observation=member.formula.observation
        )


def saturation_instances(sequent: Sequent, context: RuleContext) -> Iterator[RuleInstance]:
    """
    OYR at every label for every full joint observation without a result in Γ.

    This makes every state label carry a complete outcome table, so local states,
    and through them observational equivalence, are determined.
    """
    structure = context.structure
    full = structure.full_group
    for label in sequent.labels:
        for observation in structure.joint_observations(full):
            if (label, observation) not in sequent.observation_results:
                yield RuleInstance(RuleId.OYR, (), label=label, groups=(full,), observation=observation)


def _apply_observation_yields_result(inst, sequent, structure) -> List[Sequent]:
    return [
        sequent.extend(left=[LabelledFormula(inst.label, ObsAtom(inst.observation, result))])
        for result in structure.results
    ]


@lru_cache(maxsize=4096)
def composition_candidates(
    structure: ObservationStructure,
    outcomes: FrozenSet[Tuple[JointObservation, str]]
) -> Tuple[Tuple[Group, JointObservation, Tuple[Tuple[JointObservation, str], ...], str], ...]:
    """
    Composable observations of one label's outcome table.

    Args:
        structure: Active signature
        outcomes: (observation, result) pairs asserted at the label, one result per observation

    Returns:
        (group, observation, extension outcomes, composed result) in canonical group order
    """
    table = dict(outcomes)
    found = []
    for group in structure.nonempty_groups():
        for observation in structure.joint_observations(group):
            extension = structure.extension_set(observation)
            if any(o not in table for o in extension):
                continue
            parts = tuple((o, table[o]) for o in extension)
            found.append((group, observation, parts, structure.compose_results(r for _, r in parts)))
    return tuple(found)


def _composition(sequent: Sequent, context: RuleContext) -> Iterator[RuleInstance]:
    structure = context.structure
    tables: Dict[str, Dict[JointObservation, str]] = {}
    for (label, observation), results in sequent.observation_results.items():
        tables.setdefault(label, {})[observation] = results[0]
    for label in sequent.labels:
        outcomes = frozenset(tables.get(label, {}).items())
        for group, observation, parts, composed in composition_candidates(structure, outcomes):
            target = LabelledFormula(label, ObsAtom(observation, composed))
            if target in sequent.antecedent:
                continue
            principal = tuple(LabelledFormula(label, ObsAtom(o, r)) for o, r in parts)
            yield RuleInstance(
                RuleId.CR, principal, label=label, groups=(group,),
                observation=observation, introduced=(target,)
            )


# ------------------------------------------------------- substitution rules

def _substitute_atom(sequent: Sequent, context: RuleContext) -> Iterator[RuleInstance]:
    full = context.structure.full_group
    pairs = sorted(sequent.relation_pairs.get(full, ()))
    for member in _left_of(sequent, Atom):
        for left, right in pairs:
            target = LabelledFormula(left, member.formula)
            if right == member.label and target not in sequent.antecedent:
                yield RuleInstance(
                    RuleId.SUB_P, (member, RelationalAtom(left, right, full)),
                    groups=(full,), introduced=(target,)
                )


def _substitute_observation(sequent: Sequent, context: RuleContext) -> Iterator[RuleInstance]:
    for member in _left_of(sequent, ObsAtom):
        group = member.formula.group
        for left, right in sorted(sequent.relation_pairs.get(group, ())):
            target = LabelledFormula(left, member.formula)
            if right == member.label and target not in sequent.antecedent:
                yield RuleInstance(
                    RuleId.SUB_O, (member, RelationalAtom(left, right, group)),
                    groups=(group,), introduced=(target,)
                )


# --------------------------------------------------------- relational rules

def _reflexivity(sequent: Sequent, context: RuleContext) -> Iterator[RuleInstance]:
    groups = context.structure.groups()
    for label in sequent.labels:
        for group in groups:
            if (label, label) not in sequent.relation_pairs.get(group, ()):
                yield RuleInstance(
                    RuleId.REF, label=label, groups=(group,),
                    introduced=(RelationalAtom(label, label, group),)
                )


def _transitivity(sequent: Sequent, context: RuleContext) -> Iterator[RuleInstance]:
    for group in context.structure.groups():
        pairs = sequent.relation_pairs.get(group, frozenset())
        for left, middle in sorted(pairs):
            for start, right in sorted(pairs):
                if start == middle and (left, right) not in pairs:
                    yield RuleInstance(
                        RuleId.TRANS,
                        (RelationalAtom(left, middle, group), RelationalAtom(middle, right, group)),
                        groups=(group,), introduced=(RelationalAtom(left, right, group),)
                    )


def _euclideanness(sequent: Sequent, context: RuleContext) -> Iterator[RuleInstance]:
    for group in context.structure.groups():
        pairs = sequent.relation_pairs.get(group, frozenset())
        for left, middle in sorted(pairs):
            for start, right in sorted(pairs):
                if start == left and (middle, right) not in pairs:
                    yield RuleInstance(
                        RuleId.EUCL,
                        (RelationalAtom(left, middle, group), RelationalAtom(left, right, group)),
                        groups=(group,), introduced=(RelationalAtom(middle, right, group),)
                    )


def _monotonicity(sequent: Sequent, context: RuleContext) -> Iterator[RuleInstance]:
    groups = context.structure.groups()
    for larger in groups:
        for left, right in sorted(sequent.relation_pairs.get(larger, ())):
            for smaller in groups:
                if smaller < larger and (left, right) not in sequent.relation_pairs.get(smaller, ()):
                    yield RuleInstance(
                        RuleId.MON, (RelationalAtom(left, right, larger),),
                        groups=(smaller, larger), introduced=(RelationalAtom(left, right, smaller),)
                    )


def _apply_adding(inst: RuleInstance, sequent: Sequent, structure) -> List[Sequent]:
    return [sequent.extend(left=inst.introduced)]


_GENERATORS: Dict[RuleId, Callable[[Sequent, RuleContext], Iterator[RuleInstance]]] = {
    RuleId.NEG_L: _propositional(RuleId.NEG_L, _left_of, Not),
    RuleId.NEG_R: _propositional(RuleId.NEG_R, _right_of, Not),
    RuleId.OR_L: _propositional(RuleId.OR_L, _left_of, Or),
    RuleId.OR_R: _propositional(RuleId.OR_R, _right_of, Or),
    RuleId.AND_L: _propositional(RuleId.AND_L, _left_of, And),
    RuleId.AND_R: _propositional(RuleId.AND_R, _right_of, And),
    RuleId.IMP_L: _propositional(RuleId.IMP_L, _left_of, Implies),
    RuleId.IMP_R: _propositional(RuleId.IMP_R, _right_of, Implies),
    RuleId.KI_L: _know_left,
    RuleId.KI_R: _know_right,
    RuleId.KN_L: _know_full_left,
    RuleId.KN_R: _know_full_right,
    RuleId.OE: _observational_equivalence,
    RuleId.OYR: _observation_yields_result,
    RuleId.CR: _composition,
    RuleId.SUB_P: _substitute_atom,
    RuleId.SUB_O: _substitute_observation,
    RuleId.REF: _reflexivity,
    RuleId.TRANS: _transitivity,
    RuleId.EUCL: _euclideanness,
    RuleId.MON: _monotonicity,
}

_APPLIERS: Dict[RuleId, Callable[[RuleInstance, Sequent, ObservationStructure], List[Sequent]]] = {
    RuleId.NEG_L: _apply_neg_left,
    RuleId.NEG_R: _apply_neg_right,
    RuleId.OR_L: _apply_or_left,
    RuleId.OR_R: _apply_or_right,
    RuleId.AND_L: _apply_and_left,
    RuleId.AND_R: _apply_and_right,
    RuleId.IMP_L: _apply_imp_left,
    RuleId.IMP_R: _apply_imp_right,
    RuleId.KI_L: _apply_adding,
    RuleId.KI_R: _apply_know_right,
    RuleId.KN_L: _apply_adding,
    RuleId.KN_R: _apply_know_full_right,
    RuleId.OE: _apply_adding,
    RuleId.OYR: _apply_observation_yields_result,
    RuleId.CR: _apply_adding,
    RuleId.SUB_P: _apply_adding,
    RuleId.SUB_O: _apply_adding,
    RuleId.REF: _apply_adding,
    RuleId.TRANS: _apply_adding,
    RuleId.EUCL: _apply_adding,
    RuleId.MON: _apply_adding,
}


def iter_instances(sequent: Sequent, rules: Sequence[RuleId], context: RuleContext) -> Iterator[RuleInstance]:
    """Lazily yield the applicable instances of the given rules, in the given rule order."""
    for rule in rules:
        yield from _GENERATORS[rule](sequent, context)


def applicable_instances(
    sequent: Sequent,
    tables: Optional['LoopTables'],
    structure: ObservationStructure,
    saturation: bool = False
) -> List[RuleInstance]:
    """
    Every applicable rule instance in search priority order.

    Args:
        sequent: Conclusion sequent
        tables: Loop-check tables gating the knowledge rules (None disables the gates)
        structure: Active signature
        saturation: Also list observation-saturation instances, after all others
    """
    context = RuleContext(structure, tables)
    found = [inst for step in PRIORITY_STEPS for inst in iter_instances(sequent, step, context)]
    if saturation:
        found.extend(saturation_instances(sequent, context))
    return found


def premises_of(inst: RuleInstance, sequent: Sequent, structure: ObservationStructure) -> List[Sequent]:
    """Premises of an instance known to apply; no applicability check."""
    return _APPLIERS[inst.rule](inst, sequent, structure)


def apply_rule(
    inst: RuleInstance,
    sequent: Sequent,
    structure: ObservationStructure,
    tables: Optional['LoopTables'] = None
) -> List[Sequent]:
    """
    Premises of a rule application.

    Raises:
        RuleApplicationError: If the instance does not apply to the sequent
    """
    context = RuleContext(structure, tables)
    candidates = iter_instances(sequent, (inst.rule,), context)
    if inst.rule == RuleId.OYR and not inst.principal:
        candidates = saturation_instances(sequent, context)
    if inst not in set(candidates):
        raise RuleApplicationError(f"{inst.rule.value} on [{inst.describe()}] does not apply to {sequent.text}")
    return premises_of(inst, sequent, structure)
