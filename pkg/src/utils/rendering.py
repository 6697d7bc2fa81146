"""
Text and JSON rendering of command results.
"""
import json
from typing import Dict, List, Optional

from ..corpus.hilbert import CorpusReport
from ..semantics.model import CorrelationModel, State


def dump_json(data: Dict) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False, sort_keys=False)


def countermodel_dict(model: CorrelationModel, assignment: Dict[str, State]) -> Dict:
    """Model dump extended with the label assignment that refutes the input."""
    labels = sorted(assignment)
    refuting = assignment[labels[0]] if len(labels) == 1 else None
    data = model.to_dict(refuting)
    data["assignment"] = {label: assignment[label].name for label in labels}
    return data


def render_validity(text: str, valid: bool, countermodel: Optional[Dict], output_format: str) -> str:
    """
    Render the oracle verdict.

    Args:
        text: Printed input
        valid: Oracle verdict
        countermodel: Countermodel dump, when a witness was requested and exists
        output_format: ``text`` or ``json``
    """
    if output_format == "json":
        data = {"input": text, "valid": valid}
        if countermodel is not None:
            data["countermodel"] = countermodel
        return dump_json(data)

    lines = [f"{text}: {'valid' if valid else 'not valid'}"]
    if countermodel is not None:
        lines.append("Countermodel:")
        for state in countermodel["states"]:
            outcomes = ", ".join(f"{o}={r}" for o, r in state["outcomes"].items())
            true_atoms = [a for a, v in countermodel["valuation"].get(state["name"], {}).items() if v]
            lines.append(f"  {state['name']}: {outcomes}; true: {', '.join(true_atoms) or '-'}")
        assignment = ", ".join(f"{label}={name}" for label, name in countermodel["assignment"].items())
        lines.append(f"  assignment: {assignment}")
    return "\n".join(lines)


def render_corpus(report: CorpusReport, output_format: str) -> str:
    """Pass/fail table of a corpus run."""
    if output_format == "json":
        return dump_json(report.to_dict())

    lines = [f"{'Schema':<8}{'Instances':>10}{'Nodes':>10}  Result  Description"]
    for schema in report.schemas:
        result = "pass" if schema.passed else "FAIL"
        lines.append(
            f"{schema.schema_id:<8}{len(schema.instances):>10}{schema.nodes:>10}  {result:<6}  {schema.description}"
        )
        for outcome in schema.instances:
            if not outcome.passed:
                lines.append(f"          {outcome.verdict.value}: {outcome.formula}")
                lines.extend(f"          {violation}" for violation in outcome.violations)
    lines.append("")
    lines.append(f"{report.pass_count}/{len(report.schemas)} schemata pass ({report.elapsed_ms:.0f} ms)")
    return "\n".join(lines)


def render_model_check(problems: List[str], differences: List[str], output_format: str) -> str:
    """Result of checking a model file against the correlation-model conditions."""
    if output_format == "json":
        return dump_json({"valid": not problems, "problems": problems, "differences": differences})
    lines = ["Model satisfies all correlation-model conditions" if not problems else "Model is not a correlation model:"]
    lines.extend(f"  {problem}" for problem in problems)
    if differences:
        lines.append("Explicit relations differ from observational equivalence:")
        lines.extend(f"  {difference}" for difference in differences)
    return "\n".join(lines)
