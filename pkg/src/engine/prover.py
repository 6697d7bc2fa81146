"""
Terminating proof search for labelled sequents.
Each branch runs a priority loop: axiom check, non-branching propositional rules,
branching propositional rules, left knowledge rules under TableLK, the right K_I rule
under TableRK, observation branching, and the saturating rules. A branch where nothing
applies is an open leaf.
"""
import time
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from loguru import logger

from ..calculus.rules import (
    PRIORITY_STEPS, RuleContext, RuleId, RuleInstance, find_axiom, iter_instances,
    premises_of, saturation_instances
)
from ..models.errors import ResourceLimitExceeded
from ..models.proof import (
    AXIOM_PREFIX, OPEN, UNEXPLORED, ProofNode, ProofResult, ProofStats, Verdict
)
from ..models.formula import Sequent
from ..models.structure import ObservationStructure
from .tables import LoopTables, init_tables


@dataclass
class ProverOptions:
    """
    Search settings.

    Attributes:
        max_nodes (int): Node cap; reaching it makes the verdict inconclusive
        max_millis (Optional[int]): Wall-time cap in milliseconds
        observation_saturation (bool): Give every label a complete outcome table
        aggregate_bound (bool): Bound every TableRK chain by the total negative K count
        stop_on_open (bool): Stop searching once an open leaf is found
    """
    max_nodes: int = 1_000_000
    max_millis: Optional[int] = None
    observation_saturation: bool = True
    aggregate_bound: bool = False
    stop_on_open: bool = True

    @classmethod
    def from_config(cls, config: Dict) -> 'ProverOptions':
        """Build from the ``search`` section of the prover configuration."""
        section = config.get("search", config) or {}
        defaults = cls()
        max_millis = section.get("max_millis", defaults.max_millis)
        return cls(
            max_nodes=int(section.get("max_nodes", defaults.max_nodes)),
            max_millis=int(max_millis) if max_millis else None,
            observation_saturation=bool(section.get("observation_saturation", defaults.observation_saturation)),
            aggregate_bound=bool(section.get("aggregate_bound", defaults.aggregate_bound)),
            stop_on_open=bool(section.get("stop_on_open", defaults.stop_on_open))
        )


class Prover:
    """
    Proof search over one observation structure.

    Attributes:
        structure (ObservationStructure): Active signature
        options (ProverOptions): Search settings
    """

    def __init__(self, structure: ObservationStructure, options: Optional[ProverOptions] = None):
        self.structure = structure
        self.options = options or ProverOptions()
        self._nodes = 0
        self._deadline: Optional[float] = None
        self._lk_peak = 0
        self._rk_peak = 0

    def prove(self, sequent: Sequent) -> ProofResult:
        """
        Search for a proof of a sequent.

        Args:
            sequent: Root sequent

        Returns:
            ProofResult with the verdict, the search tree and statistics
        """
        start = time.monotonic()
        self._nodes = 0
        self._lk_peak = 0
        self._rk_peak = 0
        self._deadline = start + self.options.max_millis / 1000.0 if self.options.max_millis else None

        root = ProofNode(sequent)
        pending: List[Tuple[ProofNode, LoopTables]] = [
            (root, init_tables(sequent, self.options.aggregate_bound))
        ]
        open_found = False
        capped = False
        while pending:
            node, tables = pending.pop()
            if capped or (open_found and self.options.stop_on_open):
                node.rule = UNEXPLORED
                continue
            try:
                if self._run_branch(node, tables, pending):
                    open_found = True
            except ResourceLimitExceeded as e:
                logger.warning(f"Search capped: {e}")
                capped = True
            self._lk_peak = max(self._lk_peak, len(tables.lk))
            self._rk_peak = max(self._rk_peak, tables.rk.link_count())

        if open_found:
            verdict = Verdict.NOT_PROVABLE
        elif capped:
            verdict = Verdict.INCONCLUSIVE
        else:
            verdict = Verdict.PROVABLE
        stats = ProofStats(
            nodes=self._nodes,
            depth=root.depth(),
            table_lk_size=self._lk_peak,
            table_rk_chains=self._rk_peak,
            elapsed_ms=(time.monotonic() - start) * 1000.0
        )
        logger.info(f"Proof search finished: {verdict.value} ({stats.nodes} nodes, {stats.elapsed_ms:.1f} ms)")
        return ProofResult(verdict, root, stats)

    def _tick(self) -> None:
        self._nodes += 1
        if self._nodes > self.options.max_nodes:
            raise ResourceLimitExceeded(f"node cap of {self.options.max_nodes} reached")
        if self._deadline is not None and time.monotonic() > self._deadline:
            raise ResourceLimitExceeded(f"time cap of {self.options.max_millis} ms reached")

    def select(self, sequent: Sequent, tables: Optional[LoopTables]) -> Optional[RuleInstance]:
        """First applicable instance in priority order, or None if the sequent is saturated."""
        context = RuleContext(self.structure, tables)
        for step in PRIORITY_STEPS:
            for inst in iter_instances(sequent, step, context):
                return inst
        if self.options.observation_saturation:
            for inst in saturation_instances(sequent, context):
                return inst
        return None

    def _run_branch(self, node: ProofNode, tables: LoopTables,
                    pending: List[Tuple[ProofNode, LoopTables]]) -> bool:
        """
        Extend one branch until it closes, opens or splits.

        Returns:
            True if the branch ended in an open leaf
        """
        while True:
            try:
                self._tick()
            except ResourceLimitExceeded:
                node.rule = UNEXPLORED
                raise
            sequent = node.sequent
            axiom = find_axiom(sequent)
            if axiom is not None:
                kind, witnesses = axiom
                node.rule = f"{AXIOM_PREFIX}({kind.value})"
                node.principal = ", ".join(w.text for w in witnesses)
                return False

            inst = self.select(sequent, tables)
            if inst is None:
                node.rule = OPEN
                logger.debug(f"Open leaf: {sequent.text}")
                return True

            node.rule = inst.rule.value
            node.principal = inst.describe()
            node.instance = inst
            self._record(inst, tables)
            premises = premises_of(inst, sequent, self.structure)
            children = [ProofNode(premise) for premise in premises]
            node.premises = children
            if len(children) == 1:
                node = children[0]
                continue
            logger.debug(f"Branching on {inst.rule.value} into {len(children)} premises")
            self._lk_peak = max(self._lk_peak, len(tables.lk))
            self._rk_peak = max(self._rk_peak, tables.rk.link_count())
            for child in reversed(children):
                pending.append((child, tables.copy()))
            return False

    @staticmethod
    def _record(inst: RuleInstance, tables: LoopTables) -> None:
        if inst.rule in (RuleId.KI_L, RuleId.KN_L):
            formula, relation = inst.principal
            tables.lk.add(formula, relation)
        elif inst.rule == RuleId.KI_R:
            member = inst.principal[0]
            tables.rk.record(member.formula.group, member.formula.body, member.label, inst.label)


def prove(sequent: Sequent, structure: ObservationStructure,
          options: Optional[ProverOptions] = None) -> ProofResult:
    """Convenience wrapper around :class:`Prover`."""
    return Prover(structure, options).prove(sequent)
