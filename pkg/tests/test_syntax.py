import pytest
from hypothesis import given, settings

from src.models.errors import FormulaValidationError, ParseError
from src.models.formula import (
    And, Atom, Bottom, Implies, Know, LabelledFormula, Not, ObsAtom, Or, RelationalAtom, Sequent, Top
)
from src.models.structure import JointObservation
from src.syntax.parser import FormulaParser, parse_input, root_sequent
from src.syntax.polarity import (
    atoms_of, formula_complexity, k_occurrence_counts, negative_k_occurrences, subformulas,
    total_negative_occurrences
)
from src.syntax.printer import print_formula, print_sequent
from tests.strategies import formulas

A = frozenset({"a"})
P, Q = Atom("p"), Atom("q")


# ------------------------------------------------------------------ parser

def test_parse_knowledge_implication(parse2):
    assert parse2("K{a} p -> p") == Implies(Know(A, P), P)


def test_parse_observation_atom(parse2):
    assert parse2("obs{a}(oa)^1") == ObsAtom(JointObservation.of({"a": "oa"}), "1")
    assert parse2("obs{a,b}(oa,ob2)^0") == ObsAtom(JointObservation.of({"a": "oa", "b": "ob2"}), "0")


def test_parse_kripke_axiom(parse2):
    expected = Implies(Know(A, Implies(P, Q)), Implies(Know(A, P), Know(A, Q)))
    assert parse2("K{a}(p -> q) -> (K{a} p -> K{a} q)") == expected


def test_precedence(parse2):
    assert parse2("~p & q | p -> q") == Implies(Or(And(Not(P), Q), P), Q)
    assert parse2("p -> q -> p") == Implies(P, Implies(Q, P))
    assert parse2("p & q & p") == And(And(P, Q), P)
    assert parse2("K{} ~p") == Know(frozenset(), Not(P))
    assert parse2("K{a,b} p & q") == And(Know(frozenset("ab"), P), Q)


@pytest.mark.parametrize("text", ["p ->", "K{a p", "(p", "p q", "obs{a}(oa)", "", "P"])
def test_syntax_errors(parse2, text):
    with pytest.raises(ParseError):
        parse2(text)


def test_syntax_error_position(parse2):
    with pytest.raises(ParseError) as raised:
        parse2("p & & q")
    assert raised.value.line == 1
    assert raised.value.column == 5


@pytest.mark.parametrize("text", [
    "K{z} p",
    "obs{a}(ob1)^0",
    "obs{a}(oa)^2",
    "obs{a,b}(oa)^0",
    "obs{}()^0",
])
def test_validation_errors(parse2, text):
    with pytest.raises(FormulaValidationError):
        parse2(text)


def test_parse_sequent(sequent2):
    seq = sequent2("s: K{a} p, s ~{a} t |- t: p, s: q")
    assert LabelledFormula("s", Know(A, P)) in seq.antecedent
    assert RelationalAtom("s", "t", A) in seq.antecedent
    assert seq.succedent == {LabelledFormula("t", P), LabelledFormula("s", Q)}
    assert sequent2("|-") == Sequent()
    assert sequent2("s: p |-") == Sequent.of([LabelledFormula("s", P)])


def test_relational_atom_in_succedent_rejected(sequent2):
    with pytest.raises(FormulaValidationError):
        sequent2("|- s ~{a} t")


def test_parse_input(c2):
    assert parse_input("p -> p", c2) == root_sequent(Implies(P, P))
    assert parse_input("s: p |- s: p", c2).antecedent == {LabelledFormula("s", P)}


# ----------------------------------------------------------------- printer

def test_print_formula():
    assert print_formula(Know(A, P)) == "K{a} p"
    assert print_formula(Implies(P, Not(P))) == "p -> ~p"
    assert print_formula(ObsAtom(JointObservation.of({"a": "oa", "b": "ob1"}), "0")) == "obs{a,b}(oa,ob1)^0"
    assert print_formula(Implies(Implies(P, Q), P)) == "(p -> q) -> p"
    assert print_formula(Not(And(P, Q))) == "~(p & q)"
    assert print_formula(And(P, And(Q, P))) == "p & (q & p)"
    assert print_formula(Know(A, Know(frozenset(), P))) == "K{a} K{} p"
    assert print_formula(Top()) == "⊤"
    assert print_formula(Bottom()) == "⊥"


def test_print_sequent_is_sorted():
    seq = Sequent.of(
        [LabelledFormula("t", P), RelationalAtom("s", "t", A)],
        [LabelledFormula("s", Q)]
    )
    assert print_sequent(seq) == "s ~{a} t, t: p |- s: q"
    assert print_sequent(Sequent()) == "|-"


def test_printer_inverts_parser(c2):
    parser = FormulaParser(c2)

    @settings(max_examples=300, deadline=None)
    @given(formulas(c2, max_leaves=8))
    def check(formula):
        assert parser.parse_formula(print_formula(formula)) == formula

    check()


# ---------------------------------------------------------------- polarity

def test_negative_k_occurrences(sequent2):
    assert negative_k_occurrences(sequent2("|- s: K{a} p"), A) == 0
    assert negative_k_occurrences(sequent2("s: K{a} p |- s: q"), A) == 1
    assert negative_k_occurrences(sequent2("|- s: ~K{a} p, s: (K{a} q -> r)"), A) == 2
    assert negative_k_occurrences(sequent2("|- s: K{a} p"), frozenset("b")) == 0


def test_k_occurrence_counts(sequent2):
    counts = k_occurrence_counts(sequent2("s: K{a} p |- s: K{b} K{a} q, s: ~K{} p"))
    assert counts == {A: 1, frozenset("b"): 0, frozenset(): 1}
    assert total_negative_occurrences(sequent2("s: K{a} p |- s: ~K{} p")) == 2


def test_formula_complexity():
    assert formula_complexity(P) == 0
    assert formula_complexity(Not(P)) == 1
    assert formula_complexity(Implies(Know(A, P), P)) == 2


def test_atoms_of(sequent2, parse2):
    assert atoms_of(parse2("K{a}(p -> q) & obs{a}(oa)^1")) == {"p", "q"}
    assert atoms_of(sequent2("s: p |- t: r")) == {"p", "r"}


def test_polarity_flips_across_sides_and_negation(c2):
    groups = c2.groups()

    @settings(max_examples=200, deadline=None)
    @given(formulas(c2, max_leaves=8))
    def check(formula):
        right = Sequent.of([], [LabelledFormula("s", formula)])
        left = Sequent.of([LabelledFormula("s", formula)], [])
        for group in groups:
            occurrences = sum(1 for node in subformulas(formula) if isinstance(node, Know) and node.group == group)
            assert negative_k_occurrences(left, group) == negative_k_occurrences(
                Sequent.of([], [LabelledFormula("s", Not(formula))]), group
            )
            assert negative_k_occurrences(right, group) == negative_k_occurrences(
                Sequent.of([LabelledFormula("s", Not(formula))], []), group
            )
            assert negative_k_occurrences(left, group) + negative_k_occurrences(right, group) == occurrences

    check()
