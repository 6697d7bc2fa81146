"""
Observation structure model for the correlated-knowledge prover.
This module defines the ObservationStructure class which fixes the agents, their
observations, the result set and the composition operation every proof and every
correlation model is built over.
"""
import itertools
import re
from dataclasses import dataclass
from enum import Enum
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

from loguru import logger

from .errors import CompositionError, StructureError

Group = FrozenSet[str]

IDENTIFIER_PATTERN = re.compile(r"^[A-Za-z0-9_]+$")
RESULT_PATTERN = re.compile(r"^[A-Za-z0-9_+]+$")

UNION_SEPARATOR = "+"
EMPTY_UNION_RESULT = "_"

# Above this many results only two-block partitions are checked.
EXHAUSTIVE_PARTITION_LIMIT = 4


class CompositionOperator(Enum):
    """Enum representing the built-in result composition operations."""
    MAX = "max"
    MIN = "min"
    UNION = "union"


def group_key(group: Iterable[str]) -> Tuple[int, Tuple[str, ...]]:
    """Canonical sort key for agent groups: by size, then lexicographically."""
    members = tuple(sorted(group))
    return len(members), members


def format_group(group: Iterable[str]) -> str:
    """Render an agent group as ``{a,b}``."""
    return "{" + ",".join(sorted(group)) + "}"


def parse_union_result(result: str) -> FrozenSet[str]:
    """Read a union-domain result (``x+y``, ``_`` for the empty set) as a token set."""
    if result == EMPTY_UNION_RESULT:
        return frozenset()
    return frozenset(result.split(UNION_SEPARATOR))


def format_union_result(tokens: Iterable[str]) -> str:
    """Inverse of :func:`parse_union_result`."""
    members = sorted(tokens)
    return UNION_SEPARATOR.join(members) if members else EMPTY_UNION_RESULT


@dataclass(frozen=True)
class JointObservation:
    """
    A tuple of observations, one per agent of a group.

    Attributes:
        components (Tuple[Tuple[str, str], ...]): (agent, observation) pairs sorted by agent
    """
    components: Tuple[Tuple[str, str], ...]

    @classmethod
    def of(cls, mapping: Dict[str, str]) -> 'JointObservation':
        """Build a joint observation from an agent → observation map."""
        return cls(tuple(sorted(mapping.items())))

    @property
    def group(self) -> Group:
        return frozenset(agent for agent, _ in self.components)

    @property
    def values(self) -> Tuple[str, ...]:
        """Observations in canonical agent order."""
        return tuple(observation for _, observation in self.components)

    def component(self, agent: str) -> str:
        for member, observation in self.components:
            if member == agent:
                return observation
        raise KeyError(agent)

    def __str__(self) -> str:
        return "(" + ",".join(self.values) + ")"


class ObservationStructure:
    """
    Class representing the signature (N, O, R, Σ) of the logic.

    The structure is validated on construction and never changes afterwards, so a
    single instance can be shared by every proof branch and every model.

    Attributes:
        agents (Tuple[str, ...]): Agent identifiers in canonical order
        observations (Dict[str, Tuple[str, ...]]): Observation identifiers per agent
        results (Tuple[str, ...]): Result identifiers in canonical order
        compose (CompositionOperator): Built-in composition operation Σ
        full_group (FrozenSet[str]): The group N of all agents
    """

    def __init__(
        self,
        agents: Sequence[str],
        observations: Dict[str, Sequence[str]],
        results: Sequence[str],
        compose: str = "max"
    ):
        """
        Initialize and validate a new ObservationStructure.

        Args:
            agents: Agent identifiers
            observations: Map from agent to its observation identifiers
            results: Result identifiers
            compose: Name of the composition operation (max, min or union)

        Raises:
            StructureError: If any structural invariant or Σ law fails
        """
        self.agents = tuple(sorted(set(agents)))
        self.observations = {
            agent: tuple(sorted(set(observations.get(agent, ()))))
            for agent in self.agents
        }
        self._declared_observation_agents = set(observations)
        self.results = tuple(sorted(set(results)))
        try:
            self.compose = CompositionOperator(compose)
        except ValueError:
            raise StructureError(
                f"Unknown composition operation: {compose}",
                [f"compose must be one of {[op.value for op in CompositionOperator]}"]
            )
        self.full_group: Group = frozenset(self.agents)
        self._numeric = bool(self.results) and all(
            re.fullmatch(r"-?\d+", r) for r in self.results
        )
        self._result_set = frozenset(self.results)
        self._compose_cache: Dict[FrozenSet[str], str] = {}
        self._joint_cache: Dict[Group, Tuple[JointObservation, ...]] = {}
        self._extension_cache: Dict[JointObservation, Tuple[JointObservation, ...]] = {}
        self._positions: Optional[Dict[JointObservation, int]] = None

        problems = self.validate()
        if problems:
            raise StructureError("Invalid observation structure: " + "; ".join(problems), problems)

    # ------------------------------------------------------------------ groups

    def groups(self) -> List[Group]:
        """All agent subsets of N in canonical order (by size, then lexicographic)."""
        subsets = [
            frozenset(combo)
            for size in range(len(self.agents) + 1)
            for combo in itertools.combinations(self.agents, size)
        ]
        return sorted(subsets, key=group_key)

    def nonempty_groups(self) -> List[Group]:
        return [group for group in self.groups() if group]

    def check_group(self, group: Iterable[str]) -> Group:
        """
        Validate an agent group.

        Returns:
            The group as a frozenset

        Raises:
            StructureError: If the group names an unknown agent
        """
        group = frozenset(group)
        unknown = sorted(group - self.full_group)
        if unknown:
            raise StructureError(f"Unknown agent(s) in group: {', '.join(unknown)}")
        return group

    # ------------------------------------------------------- joint observations

    def joint_observations(self, group: Iterable[str]) -> Tuple[JointObservation, ...]:
        """
        Cartesian product of the observation sets of a group.

        Args:
            group: Agent subset I of N

        Returns:
            Every joint observation over the group; the empty group yields the
            single empty observation

        Raises:
            StructureError: If the group names an unknown agent
        """
        group = self.check_group(group)
        cached = self._joint_cache.get(group)
        if cached is None:
            members = sorted(group)
            cached = tuple(
                JointObservation(tuple(zip(members, combo)))
                for combo in itertools.product(*(self.observations[a] for a in members))
            )
            self._joint_cache[group] = cached
        return cached

    def position(self, observation: JointObservation) -> int:
        """Index of a full joint observation in ``joint_observations(N)``."""
        if self._positions is None:
            self._positions = {o: i for i, o in enumerate(self.joint_observations(self.full_group))}
        return self._positions[observation]

    def check_joint_observation(self, observation: JointObservation) -> None:
        """
        Raises:
            StructureError: If an agent or observation is unknown
        """
        self.check_group(observation.group)
        for agent, value in observation.components:
            if value not in self.observations[agent]:
                raise StructureError(f"Unknown observation {value!r} for agent {agent!r}")

    def extension_set(self, observation: JointObservation) -> Tuple[JointObservation, ...]:
        """
        Full joint observations agreeing with a group observation.

        Args:
            observation: Joint observation e over some group I

        Returns:
            Every o in O_N with o_i = e_i for all i in I
        """
        cached = self._extension_cache.get(observation)
        if cached is None:
            self.check_joint_observation(observation)
            fixed = dict(observation.components)
            cached = tuple(
                full for full in self.joint_observations(self.full_group)
                if all(full.component(agent) == value for agent, value in fixed.items())
            )
            self._extension_cache[observation] = cached
        return cached

    # -------------------------------------------------------------- composition

    def is_result(self, value: str) -> bool:
        return value in self._result_set

    def _rank(self, value: str):
        return int(value) if self._numeric else value

    def _fold(self, values: FrozenSet[str]) -> str:
        if self.compose == CompositionOperator.MAX:
            return max(values, key=self._rank)
        if self.compose == CompositionOperator.MIN:
            return min(values, key=self._rank)
        tokens = frozenset().union(*(parse_union_result(v) for v in values))
        return format_union_result(tokens)

    def compose_results(self, values: Iterable[str]) -> str:
        """
        Apply Σ to a multiset of results.

        Duplicates are collapsed first, since Σ is defined on sets.

        Args:
            values: Nonempty collection of results from R

        Returns:
            The composed result

        Raises:
            CompositionError: If the input is empty or contains a value outside R
        """
        value_set = frozenset(values)
        if not value_set:
            raise CompositionError("composition undefined on empty set")
        cached = self._compose_cache.get(value_set)
        if cached is None:
            foreign = sorted(v for v in value_set if v not in self._result_set)
            if foreign:
                raise CompositionError(f"Result(s) not in R: {', '.join(foreign)}")
            cached = self._fold(value_set)
            self._compose_cache[value_set] = cached
        return cached

    # --------------------------------------------------------------- validation

    def validate(self) -> List[str]:
        """
        Check every invariant of the structure.

        Returns:
            List of violated conditions (empty if the structure is valid)
        """
        problems = []
        if not self.agents:
            problems.append("at least one agent is required")
        for agent in self.agents:
            if not IDENTIFIER_PATTERN.match(agent):
                problems.append(f"agent identifier {agent!r} is not alphanumeric")
            if not self.observations[agent]:
                problems.append(f"agent {agent!r} has no observations")
            for observation in self.observations[agent]:
                if not IDENTIFIER_PATTERN.match(observation):
                    problems.append(f"observation identifier {observation!r} is not alphanumeric")
        owners: Dict[str, str] = {}
        for agent in self.agents:
            for observation in self.observations[agent]:
                if observation in owners:
                    problems.append(
                        f"observation {observation!r} belongs to both {owners[observation]!r} and {agent!r}"
                    )
                owners.setdefault(observation, agent)
        for agent in sorted(self._declared_observation_agents - set(self.agents)):
            problems.append(f"observations declared for unknown agent {agent!r}")
        if not self.results:
            problems.append("the result set R is empty")
        for result in self.results:
            if not RESULT_PATTERN.match(result):
                problems.append(f"result identifier {result!r} is not alphanumeric")
        if self.compose == CompositionOperator.UNION:
            seen = {}
            for result in self.results:
                tokens = parse_union_result(result)
                if tokens in seen:
                    problems.append(f"results {seen[tokens]!r} and {result!r} denote the same set")
                seen[tokens] = result
        if problems:
            return problems

        for result in self.results:
            composed = self._fold(frozenset([result]))
            if composed != result:
                problems.append(f"singleton law fails: Σ{{{result}}} = {composed}")
        problems.extend(self._partition_problems())
        return problems

    def _partition_problems(self) -> List[str]:
        problems = []
        exhaustive = len(self.results) <= EXHAUSTIVE_PARTITION_LIMIT
        if not exhaustive:
            logger.warning(
                f"{len(self.results)} results exceed the exhaustive partition limit; "
                "checking two-block partitions only"
            )
        for size in range(1, len(self.results) + 1):
            for subset in itertools.combinations(self.results, size):
                whole = self._fold(frozenset(subset))
                if whole not in self._result_set:
                    problems.append(f"Σ{format_group(subset)} = {whole} is not in R")
                    continue
                partitions = _set_partitions(list(subset)) if exhaustive else _two_block_partitions(subset)
                for blocks in partitions:
                    parts = frozenset(self._fold(frozenset(block)) for block in blocks)
                    if not parts <= self._result_set:
                        continue
                    if self._fold(parts) != whole:
                        rendered = ", ".join(format_group(block) for block in blocks)
                        problems.append(f"partition condition fails for [{rendered}]")
        return problems

    # ---------------------------------------------------------- serialization

    def to_dict(self) -> Dict:
        """
        Convert the structure to the configuration dictionary format.

        Returns:
            Dictionary with keys agents, observations, results, compose
        """
        return {
            "agents": list(self.agents),
            "observations": {agent: list(obs) for agent, obs in self.observations.items()},
            "results": list(self.results),
            "compose": self.compose.value
        }

    @classmethod
    def from_dict(cls, data: Dict) -> 'ObservationStructure':
        """
        Create a structure from its configuration dictionary.

        Raises:
            StructureError: If a key is missing or the structure is invalid
        """
        missing = [key for key in ("agents", "observations", "results", "compose") if key not in data]
        if missing:
            raise StructureError(f"Missing structure key(s): {', '.join(missing)}", missing)
        return cls(
            agents=[str(a) for a in data["agents"]],
            observations={str(a): [str(o) for o in obs] for a, obs in data["observations"].items()},
            results=[str(r) for r in data["results"]],
            compose=str(data["compose"])
        )

    def _signature(self):
        return self.agents, tuple(sorted(self.observations.items())), self.results, self.compose

    def __eq__(self, other) -> bool:
        return isinstance(other, ObservationStructure) and self._signature() == other._signature()

    def __hash__(self) -> int:
        return hash(self._signature())

    def __repr__(self) -> str:
        return (
            f"ObservationStructure(agents={list(self.agents)}, "
            f"observations={ {a: list(o) for a, o in self.observations.items()} }, "
            f"results={list(self.results)}, compose={self.compose.value!r})"
        )


def _set_partitions(items: List[str]) -> Iterator[List[List[str]]]:
    """Every partition of a list into nonempty blocks."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for partition in _set_partitions(rest):
        for index in range(len(partition)):
            yield partition[:index] + [[first] + partition[index]] + partition[index + 1:]
        yield [[first]] + partition


def _two_block_partitions(items: Sequence[str]) -> Iterator[List[List[str]]]:
    for size in range(1, len(items)):
        for left in itertools.combinations(items, size):
            right = [item for item in items if item not in left]
            yield [list(left), right]
