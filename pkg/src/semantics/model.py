"""
Correlation model semantics.
States are outcome tables over the full joint observations; a group's local state is
the composition of the outcomes agreeing with each of its joint observations, and two
states are observationally equivalent for a group when their local states coincide.
"""
import itertools
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from ..models.errors import ModelError
from ..models.formula import ObsAtom
from ..models.structure import Group, JointObservation, ObservationStructure, format_group, group_key


@dataclass(frozen=True)
class State:
    """
    A state of the system.

    Attributes:
        name (str): State name, unique within a model
        outcomes (Tuple[str, ...]): Result of every full joint observation, in the
            canonical order of ``structure.joint_observations(N)``
    """
    name: str
    outcomes: Tuple[str, ...]

    @classmethod
    def from_mapping(cls, name: str, outcomes: Dict[JointObservation, str],
                     structure: ObservationStructure) -> 'State':
        full = structure.joint_observations(structure.full_group)
        missing = [str(o) for o in full if o not in outcomes]
        if missing:
            raise ModelError(f"State {name!r} has no outcome for {', '.join(missing)}")
        return cls(name, tuple(outcomes[o] for o in full))

    def outcome(self, observation: JointObservation, structure: ObservationStructure) -> str:
        return self.outcomes[structure.position(observation)]


def function_space(structure: ObservationStructure) -> List[State]:
    """Every outcome table over the structure, named ``s0, s1, ...`` in lexicographic order."""
    size = len(structure.joint_observations(structure.full_group))
    return [
        State(f"s{index}", outcomes)
        for index, outcomes in enumerate(itertools.product(structure.results, repeat=size))
    ]


def local_state(state: State, group: Iterable[str], observation: JointObservation,
                structure: ObservationStructure) -> str:
    """
    Local result of a group observation at a state.

    Args:
        state: State whose outcomes are composed
        group: Group the observation belongs to
        observation: Joint observation over ``group``

    Returns:
        Σ of the state's outcomes over the extension set of the observation
    """
    group = structure.check_group(group)
    if observation.group != group:
        raise ModelError(f"Observation {observation} is not over group {format_group(group)}")
    return structure.compose_results(
        state.outcomes[structure.position(o)] for o in structure.extension_set(observation)
    )


def local_view(state: State, group: Iterable[str], structure: ObservationStructure) -> Tuple[str, ...]:
    """The local state s_I as a tuple over ``joint_observations(group)``."""
    group = structure.check_group(group)
    return tuple(
        local_state(state, group, observation, structure)
        for observation in structure.joint_observations(group)
    )


def observationally_equivalent(s: State, t: State, group: Iterable[str],
                               structure: ObservationStructure) -> bool:
    """
    Whether ``s ~_group t``.

    The empty group relates every pair of states (vacuous information).
    """
    group = structure.check_group(group)
    if not group:
        return True
    return local_view(s, group, structure) == local_view(t, group, structure)


def parse_group_text(text: str) -> Group:
    """Inverse of :func:`format_group`."""
    inner = text.strip().strip("{}").strip()
    return frozenset(part.strip() for part in inner.split(",") if part.strip())


class CorrelationModel:
    """
    Finite correlation model over an observation structure.

    Attributes:
        structure (ObservationStructure): Signature of the model
        states (Tuple[State, ...]): The state set S
        valuation (Dict[str, np.ndarray]): Truth vector over ``states`` per atom;
            atoms without an entry are false everywhere
        explicit_relations (Dict[FrozenSet[str], np.ndarray]): Relation matrices given
            instead of the derived ones (only for models read from a file)
    """

    def __init__(
        self,
        structure: ObservationStructure,
        states: Sequence[State],
        valuation: Optional[Dict[str, Sequence[bool]]] = None,
        relations: Optional[Dict[Group, np.ndarray]] = None
    ):
        if not states:
            raise ModelError("A model needs at least one state")
        self.structure = structure
        self.states = tuple(states)
        self._index = {}
        width = len(structure.joint_observations(structure.full_group))
        for position, state in enumerate(self.states):
            if state.name in self._index:
                raise ModelError(f"Duplicate state name {state.name!r}")
            if len(state.outcomes) != width:
                raise ModelError(f"State {state.name!r} needs {width} outcomes, got {len(state.outcomes)}")
            foreign = [r for r in state.outcomes if not structure.is_result(r)]
            if foreign:
                raise ModelError(f"State {state.name!r} uses unknown result(s) {', '.join(foreign)}")
            self._index[state.name] = position
        self.valuation: Dict[str, np.ndarray] = {}
        for atom, truth in (valuation or {}).items():
            vector = np.asarray(truth, dtype=bool)
            if vector.shape != (len(self.states),):
                raise ModelError(f"Valuation of {atom!r} must have one entry per state")
            self.valuation[atom] = vector
        self.explicit_relations: Dict[Group, np.ndarray] = {}
        for group, matrix in (relations or {}).items():
            group = structure.check_group(group)
            matrix = np.asarray(matrix, dtype=bool)
            if matrix.shape != (len(self.states), len(self.states)):
                raise ModelError(f"Relation {format_group(group)} has the wrong shape")
            self.explicit_relations[group] = matrix
        self._relation_cache: Dict[Group, np.ndarray] = {}
        self._observation_cache: Dict[ObsAtom, np.ndarray] = {}

    def __len__(self) -> int:
        return len(self.states)

    def index(self, state) -> int:
        """
        Position of a state (or state name) in the model.

        Raises:
            ModelError: If the state is not in the model
        """
        name = state.name if isinstance(state, State) else state
        if name not in self._index or (isinstance(state, State) and self.states[self._index[name]] != state):
            raise ModelError(f"State {name!r} is not in the model")
        return self._index[name]

    def _views(self, group: Group) -> List[Tuple[str, ...]]:
        return [local_view(state, group, self.structure) for state in self.states]

    def derived_relation(self, group: Iterable[str]) -> np.ndarray:
        """Observational equivalence for ``group`` as a boolean matrix."""
        group = self.structure.check_group(group)
        cached = self._relation_cache.get(group)
        if cached is None:
            size = len(self.states)
            if not group:
                cached = np.ones((size, size), dtype=bool)
            else:
                views = self._views(group)
                cached = np.array(
                    [[views[i] == views[j] for j in range(size)] for i in range(size)], dtype=bool
                ).reshape(size, size)
            self._relation_cache[group] = cached
        return cached

    def relation(self, group: Iterable[str]) -> np.ndarray:
        """The accessibility matrix for ``group``; explicit relations take precedence."""
        group = frozenset(group)
        if group in self.explicit_relations:
            return self.explicit_relations[group]
        return self.derived_relation(group)

    def observation_truth(self, atom: ObsAtom) -> np.ndarray:
        """Truth vector of an observation atom over the states."""
        cached = self._observation_cache.get(atom)
        if cached is None:
            self.structure.check_joint_observation(atom.observation)
            cached = np.array([
                local_state(state, atom.group, atom.observation, self.structure) == atom.result
                for state in self.states
            ], dtype=bool)
            self._observation_cache[atom] = cached
        return cached

    def atom_truth(self, name: str) -> np.ndarray:
        vector = self.valuation.get(name)
        return vector if vector is not None else np.zeros(len(self.states), dtype=bool)

    def with_valuation(self, valuation: Dict[str, Sequence[bool]]) -> 'CorrelationModel':
        """Same frame, new valuation; relation caches are shared."""
        model = CorrelationModel(self.structure, self.states, valuation, self.explicit_relations)
        model._relation_cache = self._relation_cache
        model._observation_cache = self._observation_cache
        return model

    def to_dict(self, refuting_state: Optional[State] = None) -> Dict:
        """
        Convert the model to the dump format.

        Returns:
            Dictionary with states, valuation and, when present, explicit relations
            and the refuting state
        """
        full = self.structure.joint_observations(self.structure.full_group)
        data = {
            "states": [
                {"name": state.name, "outcomes": {str(o): r for o, r in zip(full, state.outcomes)}}
                for state in self.states
            ],
            "valuation": {
                state.name: {atom: bool(self.valuation[atom][i]) for atom in sorted(self.valuation)}
                for i, state in enumerate(self.states)
            }
        }
        if self.explicit_relations:
            data["relations"] = {
                format_group(group): [
                    [self.states[i].name, self.states[j].name]
                    for i, j in zip(*np.nonzero(self.explicit_relations[group]))
                ]
                for group in sorted(self.explicit_relations, key=group_key)
            }
        if refuting_state is not None:
            data["refuting_state"] = refuting_state.name
        return data

    @classmethod
    def from_dict(cls, data: Dict, structure: ObservationStructure) -> 'CorrelationModel':
        """
        Create a model from the dump format.

        Raises:
            ModelError: If the dump is malformed or inconsistent with the structure
        """
        if "states" not in data:
            raise ModelError("Model dump has no 'states' entry")
        by_text = {str(o): o for o in structure.joint_observations(structure.full_group)}
        states = []
        for entry in data["states"]:
            try:
                name, outcomes = str(entry["name"]), entry["outcomes"]
            except (KeyError, TypeError):
                raise ModelError("Every state needs 'name' and 'outcomes'")
            unknown = [key for key in outcomes if key not in by_text]
            if unknown:
                raise ModelError(f"State {name!r} names unknown observation(s) {', '.join(unknown)}")
            states.append(State.from_mapping(
                name, {by_text[key]: str(value) for key, value in outcomes.items()}, structure
            ))
        names = [state.name for state in states]
        valuation: Dict[str, List[bool]] = {}
        for state_name, atoms in (data.get("valuation") or {}).items():
            if state_name not in names:
                raise ModelError(f"Valuation names unknown state {state_name!r}")
            for atom, value in atoms.items():
                valuation.setdefault(atom, [False] * len(states))[names.index(state_name)] = bool(value)
        relations = {}
        for group_text, pairs in (data.get("relations") or {}).items():
            matrix = np.zeros((len(states), len(states)), dtype=bool)
            for left, right in pairs:
                if left not in names or right not in names:
                    raise ModelError(f"Relation {group_text} names an unknown state")
                matrix[names.index(left), names.index(right)] = True
            relations[parse_group_text(group_text)] = matrix
        return cls(structure, states, valuation, relations)


def validate_model(model: CorrelationModel) -> List[str]:
    """
    Check the four correlation-model conditions.

    Returns:
        Every violated condition (empty if the model is valid)
    """
    problems = []
    structure = model.structure
    groups = structure.groups()
    size = len(model)
    identity = np.eye(size, dtype=bool)
    for group in groups:
        relation = model.relation(group)
        name = format_group(group)
        if not relation[identity].all():
            problems.append(f"~{name} is not reflexive")
        if not np.array_equal(relation, relation.T):
            problems.append(f"~{name} is not symmetric")
        composed = (relation.astype(np.int64) @ relation.astype(np.int64)) > 0
        if (composed & ~relation).any():
            problems.append(f"~{name} is not transitive")
    for smaller, larger in itertools.permutations(groups, 2):
        if smaller < larger and (model.relation(larger) & ~model.relation(smaller)).any():
            problems.append(
                f"information is not monotonic: ~{format_group(larger)} is not contained in ~{format_group(smaller)}"
            )
    if (model.relation(structure.full_group) & ~identity).any():
        problems.append(f"observability fails: ~{format_group(structure.full_group)} relates distinct states")
    if not model.relation(frozenset()).all():
        problems.append("vacuous information fails: ~{} is not universal")
    return problems


def relation_differences(model: CorrelationModel) -> List[str]:
    """Pairs where explicit relations disagree with observational equivalence."""
    differences = []
    for group in sorted(model.explicit_relations, key=group_key):
        explicit = model.explicit_relations[group]
        derived = model.derived_relation(group)
        for i, j in zip(*np.nonzero(explicit != derived)):
            kind = "extra" if explicit[i, j] else "missing"
            differences.append(
                f"{kind} pair ({model.states[i].name}, {model.states[j].name}) in ~{format_group(group)}"
            )
    return differences
