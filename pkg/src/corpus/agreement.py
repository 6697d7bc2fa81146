"""
Prover/oracle agreement runs.
Every formula is proved from the root sequent and checked by exhaustive model
enumeration; the run records each case where the two disagree.
"""
import time
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional

from loguru import logger

from ..engine.audit import audit_chain_lengths, audit_left_knowledge
from ..engine.prover import Prover, ProverOptions
from ..models.formula import Formula
from ..models.proof import Verdict
from ..models.structure import ObservationStructure
from ..semantics.enumeration import OracleBudget
from ..semantics.validity import check_validity
from ..syntax.parser import root_sequent


@dataclass
class AgreementCase:
    """
    Prover and oracle verdicts for one formula.

    Attributes:
        formula (str): Printed formula
        verdict (Verdict): Prover verdict
        valid (bool): Oracle verdict
        violations (List[str]): Loop-check audit findings on the proof tree
    """
    formula: str
    verdict: Verdict
    valid: bool
    violations: List[str] = field(default_factory=list)

    @property
    def agrees(self) -> bool:
        return (self.verdict == Verdict.PROVABLE) == self.valid and self.verdict != Verdict.INCONCLUSIVE


@dataclass
class AgreementReport:
    cases: List[AgreementCase]
    elapsed_ms: float = 0.0

    @property
    def disagreements(self) -> List[AgreementCase]:
        return [case for case in self.cases if not case.agrees]

    @property
    def inconclusive(self) -> List[AgreementCase]:
        return [case for case in self.cases if case.verdict == Verdict.INCONCLUSIVE]

    @property
    def violations(self) -> List[str]:
        return [violation for case in self.cases for violation in case.violations]

    @property
    def agreement_rate(self) -> float:
        if not self.cases:
            return 1.0
        return 1.0 - len(self.disagreements) / len(self.cases)

    def to_dict(self) -> Dict:
        return {
            "cases": len(self.cases),
            "agreement_rate": self.agreement_rate,
            "disagreements": [
                {"formula": case.formula, "verdict": case.verdict.value, "valid": case.valid}
                for case in self.disagreements
            ],
            "inconclusive": len(self.inconclusive)
        }


def run_agreement(
    structure: ObservationStructure,
    formulas: Iterable[Formula],
    options: Optional[ProverOptions] = None,
    budget: Optional[OracleBudget] = None
) -> AgreementReport:
    """
    Compare prover and oracle verdicts.

    Args:
        structure: Observation structure
        formulas: Formulas to decide
        options: Search settings
        budget: Oracle enumeration limits

    Returns:
        AgreementReport with one case per formula
    """
    options = options or ProverOptions()
    prover = Prover(structure, options)
    start = time.monotonic()
    cases = []
    for formula in formulas:
        result = prover.prove(root_sequent(formula))
        violations = audit_left_knowledge(result.tree)
        violations += audit_chain_lengths(result.tree, options.aggregate_bound)
        case = AgreementCase(str(formula), result.verdict, check_validity(formula, structure, budget=budget),
                             violations)
        if not case.agrees:
            logger.warning(f"Prover and oracle disagree on {case.formula}: "
                           f"{case.verdict.value} vs valid={case.valid}")
        cases.append(case)
    report = AgreementReport(cases, (time.monotonic() - start) * 1000.0)
    logger.info(f"Agreement run: {len(cases)} formulas, rate {report.agreement_rate:.3f}")
    return report
