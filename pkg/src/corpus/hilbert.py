"""
Instances of the Hilbert-style axiom schemata H1-H14.
Metavariables A, B, C become the atoms p, q, r; group and observation parameters range
over everything the structure allows.
"""
import itertools
import time
from dataclasses import dataclass
from functools import reduce
from typing import Dict, List, Optional, Sequence

from loguru import logger

from ..engine.audit import audit_chain_lengths, audit_left_knowledge
from ..engine.prover import Prover, ProverOptions
from ..models.formula import And, Atom, Formula, Implies, Know, Not, ObsAtom, Or
from ..models.proof import Verdict
from ..models.structure import ObservationStructure
from ..syntax.parser import root_sequent

P, Q, R = Atom("p"), Atom("q"), Atom("r")


@dataclass
class CorpusSchema:
    """
    One axiom schema with its instances.

    Attributes:
        schema_id (str): H1 ... H14
        description (str): Name of the principle
        instances (List[Formula]): Instances over the structure
    """
    schema_id: str
    description: str
    instances: List[Formula]


def conjunction(formulas: Sequence[Formula]) -> Formula:
    return reduce(And, formulas)


def disjunction(formulas: Sequence[Formula]) -> Formula:
    return reduce(Or, formulas)


def hilbert_corpus(structure: ObservationStructure) -> List[CorpusSchema]:
    """
    Build H1-H14 over a structure.

    Returns:
        Schemas in order, each with at least one instance
    """
    groups = structure.groups()
    observed = structure.nonempty_groups()
    results = structure.results

    def observations(group):
        return structure.joint_observations(group)

    h10 = [
        conjunction([disjunction([ObsAtom(o, r) for r in results]) for o in observations(group)])
        for group in observed
    ]
    h11 = [
        Implies(ObsAtom(o, r1), Not(ObsAtom(o, r2)))
        for group in observed for o in observations(group)
        for r1, r2 in itertools.permutations(results, 2)
    ]
    h12 = [
        Implies(ObsAtom(o, r), Know(group, ObsAtom(o, r)))
        for group in observed for o in observations(group) for r in results
    ]
    h13 = []
    for group in observed:
        group_observations = observations(group)
        for outcome in itertools.product(results, repeat=len(group_observations)):
            premise = conjunction([ObsAtom(o, r) for o, r in zip(group_observations, outcome)])
            h13.append(Implies(
                And(premise, Know(group, P)),
                Know(frozenset(), Implies(premise, P))
            ))
    h14 = []
    for group in observed:
        for e in observations(group):
            extension = structure.extension_set(e)
            for outcome in itertools.product(results, repeat=len(extension)):
                composed = structure.compose_results(outcome)
                h14.append(Implies(
                    conjunction([ObsAtom(o, r) for o, r in zip(extension, outcome)]),
                    ObsAtom(e, composed)
                ))

    return [
        CorpusSchema("H1", "A -> (B -> A)", [Implies(P, Implies(Q, P))]),
        CorpusSchema("H2", "(A -> (B -> C)) -> ((A -> B) -> (A -> C))",
                     [Implies(Implies(P, Implies(Q, R)), Implies(Implies(P, Q), Implies(P, R)))]),
        CorpusSchema("H3", "(~A -> ~B) -> (B -> A)", [Implies(Implies(Not(P), Not(Q)), Implies(Q, P))]),
        CorpusSchema("H4", "Kripke's axiom", [
            Implies(Know(g, Implies(P, Q)), Implies(Know(g, P), Know(g, Q))) for g in groups
        ]),
        CorpusSchema("H5", "Truthfulness", [Implies(Know(g, P), P) for g in groups]),
        CorpusSchema("H6", "Positive introspection", [Implies(Know(g, P), Know(g, Know(g, P))) for g in groups]),
        CorpusSchema("H7", "Negative introspection", [
            Implies(Not(Know(g, P)), Know(g, Not(Know(g, P)))) for g in groups
        ]),
        CorpusSchema("H8", "Monotonicity of group knowledge", [
            Implies(Know(i, P), Know(j, P)) for j in groups for i in groups if i <= j
        ]),
        CorpusSchema("H9", "Observability", [Implies(P, Know(structure.full_group, P))]),
        CorpusSchema("H10", "Observations always yield results", h10),
        CorpusSchema("H11", "Observations have unique results", h11),
        CorpusSchema("H12", "Groups know the results of their joint observations", h12),
        CorpusSchema("H13", "Group knowledge is correlated knowledge", h13),
        CorpusSchema("H14", "Result composition axiom", h14),
    ]


@dataclass
class InstanceOutcome:
    """
    Result of proving one corpus instance.

    Attributes:
        formula (str): Printed instance
        verdict (Verdict): Prover verdict
        nodes (int): Nodes of the search tree
        violations (List[str]): Loop-check audit findings
    """
    formula: str
    verdict: Verdict
    nodes: int
    violations: List[str]

    @property
    def passed(self) -> bool:
        return self.verdict == Verdict.PROVABLE and not self.violations


@dataclass
class SchemaOutcome:
    schema_id: str
    description: str
    instances: List[InstanceOutcome]

    @property
    def passed(self) -> bool:
        return all(outcome.passed for outcome in self.instances)

    @property
    def nodes(self) -> int:
        return sum(outcome.nodes for outcome in self.instances)


@dataclass
class CorpusReport:
    """
    Per-schema results of a corpus run.

    Attributes:
        schemas (List[SchemaOutcome]): One entry per schema, in corpus order
        elapsed_ms (float): Wall time of the whole run
    """
    schemas: List[SchemaOutcome]
    elapsed_ms: float = 0.0

    @property
    def passed(self) -> bool:
        return all(schema.passed for schema in self.schemas)

    @property
    def pass_count(self) -> int:
        return sum(1 for schema in self.schemas if schema.passed)

    def to_dict(self, include_elapsed: bool = True) -> Dict:
        data = {
            "passed": self.passed,
            "pass_count": self.pass_count,
            "schemas": [
                {
                    "id": schema.schema_id,
                    "description": schema.description,
                    "passed": schema.passed,
                    "nodes": schema.nodes,
                    "instances": [
                        {
                            "formula": outcome.formula,
                            "verdict": outcome.verdict.value,
                            "nodes": outcome.nodes,
                            "violations": outcome.violations
                        }
                        for outcome in schema.instances
                    ]
                }
                for schema in self.schemas
            ]
        }
        if include_elapsed:
            data["elapsed_ms"] = round(self.elapsed_ms, 3)
        return data


def run_corpus(structure: ObservationStructure, options: Optional[ProverOptions] = None) -> CorpusReport:
    """
    Prove every corpus instance and audit each proof tree.

    Args:
        structure: Observation structure to instantiate the schemata over
        options: Search settings

    Returns:
        CorpusReport
    """
    options = options or ProverOptions()
    prover = Prover(structure, options)
    start = time.monotonic()
    schemas = []
    for schema in hilbert_corpus(structure):
        outcomes = []
        for formula in schema.instances:
            result = prover.prove(root_sequent(formula))
            violations = audit_left_knowledge(result.tree)
            violations += audit_chain_lengths(result.tree, options.aggregate_bound)
            outcomes.append(InstanceOutcome(str(formula), result.verdict, result.stats.nodes, violations))
        outcome = SchemaOutcome(schema.schema_id, schema.description, outcomes)
        if not outcome.passed:
            logger.warning(f"Schema {schema.schema_id} failed")
        schemas.append(outcome)
    report = CorpusReport(schemas, (time.monotonic() - start) * 1000.0)
    logger.info(f"Corpus finished: {report.pass_count}/{len(schemas)} schemata pass")
    return report
