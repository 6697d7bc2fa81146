"""
Prover verdicts against the enumeration oracle.
"""
import pytest

from src.corpus.agreement import run_agreement
from src.engine.prover import Prover
from src.models.formula import And, Atom, Implies, Know, Not, ObsAtom
from src.models.structure import JointObservation
from src.models.proof import Verdict
from src.semantics.validity import find_countermodel
from src.syntax.parser import root_sequent
from src.utils.formula_generator import enumerate_formulas, knowledge_operator, random_formulas

NON_THEOREMS = ["p -> K{a} p", "obs{a}(oa)^0", "K{a} p & ~p"]


def assert_agreement(report):
    assert report.disagreements == []
    assert report.inconclusive == []
    assert report.violations == []
    assert report.agreement_rate == 1.0


def c1_leaves():
    return [
        Atom("p"),
        ObsAtom(JointObservation.of({"a": "oa"}), "1"),
        ObsAtom(JointObservation.of({"a": "oa", "b": "ob"}), "0"),
    ]


def test_enumerate_formulas_counts():
    leaves = [Atom("p"), Atom("q")]
    assert len(list(enumerate_formulas(leaves, [Not], [And], 0))) == 2
    # level 1: 2 negations + 4 conjunctions
    assert len(list(enumerate_formulas(leaves, [Not], [And], 1))) == 8


def test_exhaustive_agreement_c1(c1):
    unary = [Not, knowledge_operator(frozenset({"a"})), knowledge_operator(frozenset())]
    formulas = list(enumerate_formulas(c1_leaves(), unary, [And, Implies], 2))
    assert len(formulas) == 435
    assert_agreement(run_agreement(c1, formulas))


def test_random_agreement_c2(c2):
    assert_agreement(run_agreement(c2, random_formulas(c2, 60, 3, seed=7)))


@pytest.mark.parametrize("text", NON_THEOREMS)
def test_non_theorems(c2, parse2, text):
    formula = parse2(text)
    result = Prover(c2).prove(root_sequent(formula))
    assert result.verdict == Verdict.NOT_PROVABLE
    assert find_countermodel(formula, c2) is not None


def test_determinism_on_random_inputs(c2):
    for formula in random_formulas(c2, 20, 3, seed=11):
        sequent = root_sequent(formula)
        first = Prover(c2).prove(sequent).render_json(include_elapsed=False)
        second = Prover(c2).prove(sequent).render_json(include_elapsed=False)
        assert first == second


@pytest.mark.slow
def test_exhaustive_agreement_c1_three_connectives(c1):
    leaves = [
        Atom("p"),
        ObsAtom(JointObservation.of({"a": "oa"}), "1"),
        ObsAtom(JointObservation.of({"b": "ob"}), "0"),
    ]
    formulas = list(enumerate_formulas(leaves, [Not, knowledge_operator(frozenset({"a"}))], [And, Implies], 3))
    assert_agreement(run_agreement(c1, formulas))


@pytest.mark.slow
def test_random_agreement_c2_full(c2):
    assert_agreement(run_agreement(c2, random_formulas(c2, 300, 4, seed=2024)))


@pytest.mark.slow
def test_knowledge_heavy_agreement_c2(c2):
    groups = c2.groups()
    formulas = [
        Implies(Know(i, Atom("p")), Know(j, Not(Know(i, Not(Atom("p"))))))
        for i in groups for j in groups
    ]
    assert_agreement(run_agreement(c2, formulas))
