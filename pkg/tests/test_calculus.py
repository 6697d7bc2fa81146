import pytest

from src.calculus.rules import (
    AxiomKind, RuleContext, RuleId, RuleInstance, applicable_instances, apply_rule, find_axiom,
    composition_candidates, fresh_label, is_axiom, iter_instances, saturation_instances
)
from src.corpus.hilbert import hilbert_corpus
from src.engine.prover import Prover
from src.engine.tables import init_tables
from src.models.errors import RuleApplicationError
from src.models.formula import Atom, Know, LabelledFormula, ObsAtom, RelationalAtom, Sequent
from src.models.structure import JointObservation
from src.semantics.validity import sequent_valid
from src.syntax.parser import root_sequent
from src.utils.formula_generator import random_formulas

A = frozenset({"a"})
OA = JointObservation.of({"a": "oa"})


def rules_of(instances):
    return [inst.rule for inst in instances]


def first(sequent, rule, structure, tables=None):
    return next(iter_instances(sequent, (rule,), RuleContext(structure, tables)))


# ------------------------------------------------------------------ axioms

def test_axioms(sequent2):
    assert is_axiom(sequent2("s: p |- s: p")) == (True, AxiomKind.IDENTITY_ATOM)
    assert is_axiom(sequent2("s: obs{a}(oa)^1 |- s: obs{a}(oa)^1")) == (True, AxiomKind.IDENTITY_OBSERVATION)
    assert is_axiom(sequent2("s: obs{a}(oa)^0, s: obs{a}(oa)^1 |- s: q")) == (True, AxiomKind.CONFLICTING_RESULTS)
    assert is_axiom(sequent2("s: p |- t: p")) == (False, None)
    assert is_axiom(sequent2("s: obs{a}(oa)^0, t: obs{a}(oa)^1 |-")) == (False, None)


def test_axiom_witnesses(sequent2):
    kind, witnesses = find_axiom(sequent2("s: obs{a}(oa)^0, s: obs{a}(oa)^1 |-"))
    assert kind == AxiomKind.CONFLICTING_RESULTS
    assert [w.text for w in witnesses] == ["s: obs{a}(oa)^0", "s: obs{a}(oa)^1"]


def test_fresh_label(sequent2):
    assert fresh_label(sequent2("|- s: p")) == "w0"
    assert fresh_label(sequent2("s ~{a} w0 |- s: p")) == "w1"
    assert fresh_label(Sequent()) == "w0"


# ------------------------------------------------------ applicable instances

def test_know_left_instance(sequent2, c2):
    instances = applicable_instances(sequent2("s: K{a} p, s ~{a} t |-"), None, c2)
    know_left = [inst for inst in instances if inst.rule == RuleId.KI_L]
    assert len(know_left) == 1
    assert know_left[0].principal == (LabelledFormula("s", Know(A, Atom("p"))), RelationalAtom("s", "t", A))


def test_know_left_gated_by_table(sequent2, c2):
    seq = sequent2("s: K{a} p, s ~{a} t |-")
    tables = init_tables(seq)
    inst = first(seq, RuleId.KI_L, c2, tables)
    tables.lk.add(*inst.principal)
    assert RuleId.KI_L not in rules_of(applicable_instances(seq, tables, c2))


def test_know_left_needs_missing_target(sequent2, c2):
    seq = sequent2("s: K{a} p, s ~{a} t, t: p |-")
    assert RuleId.KI_L not in rules_of(applicable_instances(seq, None, c2))


def test_monotonicity_and_reflexivity(sequent2, c2):
    instances = applicable_instances(sequent2("s ~{a,b} t |-"), None, c2)
    mon = [inst for inst in instances if inst.rule == RuleId.MON]
    assert sorted(sorted(inst.groups[0]) for inst in mon) == [[], ["a"], ["b"]]
    ref = [inst for inst in instances if inst.rule == RuleId.REF]
    assert len(ref) == 2 * len(c2.groups())


def test_priority_order(sequent2, c2):
    instances = applicable_instances(sequent2("s: p | q, s: ~q |- s: p & q"), None, c2)
    assert rules_of(instances)[:3] == [RuleId.NEG_L, RuleId.OR_L, RuleId.AND_R]


def test_saturation_instances(sequent2, c2):
    seq = sequent2("|- s: p")
    found = list(saturation_instances(seq, RuleContext(c2)))
    assert [str(inst.observation) for inst in found] == ["(oa,ob1)", "(oa,ob2)"]
    assert all(inst.label == "s" and inst.principal == () for inst in found)
    assert RuleId.OYR not in rules_of(applicable_instances(seq, None, c2))
    assert RuleId.OYR in rules_of(applicable_instances(seq, None, c2, saturation=True))


# ---------------------------------------------------------- rule application

def test_or_right(sequent2, c2):
    seq = sequent2("|- s: p | q")
    assert apply_rule(first(seq, RuleId.OR_R, c2), seq, c2) == [sequent2("|- s: p, s: q")]


def test_implication_left(sequent2, c2):
    seq = sequent2("s: p -> q |- s: r")
    assert apply_rule(first(seq, RuleId.IMP_L, c2), seq, c2) == [
        sequent2("|- s: p, s: r"), sequent2("s: q |- s: r")
    ]


def test_know_right_creates_fresh_label(sequent2, c2):
    seq = sequent2("|- s: K{a} p")
    inst = first(seq, RuleId.KI_R, c2, init_tables(seq))
    assert inst.label == "w0"
    assert apply_rule(inst, seq, c2) == [sequent2("s ~{a} w0 |- w0: p")]


def test_know_right_gated_by_chain_limit(sequent2, c2):
    seq = sequent2("|- s: K{a} p")
    tables = init_tables(seq)
    tables.rk.record(A, Atom("p"), "s", "w0")
    assert RuleId.KI_R not in rules_of(applicable_instances(seq, tables, c2))
    assert RuleId.KI_R in rules_of(applicable_instances(seq, None, c2))


def test_know_full_rules(sequent2, c2):
    seq = sequent2("s ~{a,b} s |- s: K{a,b} p")
    inst = first(seq, RuleId.KN_R, c2)
    assert apply_rule(inst, seq, c2) == [sequent2("s ~{a,b} s |- s: p")]
    assert RuleId.KN_R not in rules_of(applicable_instances(sequent2("|- s: K{a,b} p"), None, c2))

    seq = sequent2("s: K{a,b} p, s ~{a,b} s |-")
    inst = first(seq, RuleId.KN_L, c2)
    assert apply_rule(inst, seq, c2) == [sequent2("s: K{a,b} p, s: p, s ~{a,b} s |-")]


def test_observation_yields_result(sequent2, c2):
    seq = sequent2("|- s: obs{a}(oa)^1")
    assert apply_rule(first(seq, RuleId.OYR, c2), seq, c2) == [
        sequent2("s: obs{a}(oa)^0 |- s: obs{a}(oa)^1"),
        sequent2("s: obs{a}(oa)^1 |- s: obs{a}(oa)^1"),
    ]


def test_composition(sequent2, c2):
    seq = sequent2("s: obs{a,b}(oa,ob1)^0, s: obs{a,b}(oa,ob2)^1 |-")
    context = RuleContext(c2)
    inst = next(i for i in iter_instances(seq, (RuleId.CR,), context) if i.observation == OA)
    (premise,) = apply_rule(inst, seq, c2)
    assert premise.antecedent - seq.antecedent == {LabelledFormula("s", ObsAtom(OA, "1"))}


def test_composition_candidates_shared_between_labels(sequent2, c2):
    seq = sequent2(
        "s: obs{a,b}(oa,ob1)^0, s: obs{a,b}(oa,ob2)^1, t: obs{a,b}(oa,ob1)^0, t: obs{a,b}(oa,ob2)^1 |-"
    )
    composition_candidates.cache_clear()
    found = list(iter_instances(seq, (RuleId.CR,), RuleContext(c2)))
    assert composition_candidates.cache_info().misses == 1
    assert composition_candidates.cache_info().hits == 1
    assert [(i.label, i.introduced[0].formula.text) for i in found] == [
        ("s", "obs{a}(oa)^1"), ("s", "obs{b}(ob1)^0"), ("s", "obs{b}(ob2)^1"),
        ("t", "obs{a}(oa)^1"), ("t", "obs{b}(ob1)^0"), ("t", "obs{b}(ob2)^1"),
    ]
    assert list(iter_instances(seq, (RuleId.CR,), RuleContext(c2))) == found
    assert composition_candidates.cache_info().hits == 3


def test_observational_equivalence(sequent2, c2):
    seq = sequent2("s: obs{a}(oa)^1, t: obs{a}(oa)^1 |-")
    inst = first(seq, RuleId.OE, c2)
    assert inst.introduced == (RelationalAtom("s", "t", A),)
    seq = sequent2("s: obs{a}(oa)^1, t: obs{a}(oa)^1, t ~{a} s |-")
    assert RuleId.OE not in rules_of(applicable_instances(seq, None, c2))


def test_substitution(sequent2, c2):
    seq = sequent2("t: p, s ~{a,b} t |-")
    (premise,) = apply_rule(first(seq, RuleId.SUB_P, c2), seq, c2)
    assert LabelledFormula("s", Atom("p")) in premise.antecedent

    seq = sequent2("t: obs{a}(oa)^1, s ~{a} t |-")
    (premise,) = apply_rule(first(seq, RuleId.SUB_O, c2), seq, c2)
    assert LabelledFormula("s", ObsAtom(OA, "1")) in premise.antecedent


def test_relational_closure(sequent2, c2):
    seq = sequent2("s ~{a} t, t ~{a} u |-")
    (premise,) = apply_rule(first(seq, RuleId.TRANS, c2), seq, c2)
    assert RelationalAtom("s", "u", A) in premise.antecedent
    seq = sequent2("s ~{a} t, s ~{a} u |-")
    introduced = {i.introduced[0] for i in iter_instances(seq, (RuleId.EUCL,), RuleContext(c2))}
    assert RelationalAtom("t", "u", A) in introduced


def test_apply_rule_rejects_foreign_instance(sequent2, c2):
    seq = sequent2("|- s: p")
    inst = RuleInstance(RuleId.OR_R, (LabelledFormula("s", Atom("p")),))
    with pytest.raises(RuleApplicationError):
        apply_rule(inst, seq, c2)


# ------------------------------------------------------ search-tree semantics

STEPS_PER_TREE = 30
MAX_LABELS = 3


def rule_steps(root):
    """(conclusion, premises) for every node where a rule was applied."""
    return [
        (node.sequent, [child.sequent for child in node.premises])
        for node in root.iter_nodes() if node.premises
    ]


@pytest.fixture(scope="module")
def search_trees(c1, parse1):
    inputs = [schema.instances[0] for schema in hilbert_corpus(c1)[:6]]
    inputs += random_formulas(c1, 10, 2, seed=11)
    inputs += [parse1(text) for text in ("K{a} p -> K{b} p", "p | q -> p", "K{a,b} p -> K{a} p", "~K{a} ~p")]
    prover = Prover(c1)
    return [prover.prove(root_sequent(formula)).tree for formula in inputs]


@pytest.fixture(scope="module")
def checked_steps(c1, search_trees):
    """Small-label rule steps annotated with oracle validity of conclusion and premises."""
    verdicts = {}

    def valid(sequent):
        if sequent not in verdicts:
            verdicts[sequent] = sequent_valid(sequent, c1)
        return verdicts[sequent]

    checked = []
    for tree in search_trees:
        steps = [
            (conclusion, premises) for conclusion, premises in rule_steps(tree)
            if all(len(s.labels) <= MAX_LABELS for s in [conclusion, *premises])
        ]
        for conclusion, premises in steps[:STEPS_PER_TREE]:
            checked.append((conclusion, valid(conclusion), [valid(p) for p in premises]))
    return checked


def test_no_rule_application_is_a_no_op(search_trees):
    for tree in search_trees:
        for conclusion, premises in rule_steps(tree):
            assert premises
            assert all(premise != conclusion for premise in premises), conclusion.text


def test_rules_are_sound(checked_steps):
    assert any(not conclusion_valid for _, conclusion_valid, _ in checked_steps)
    for conclusion, conclusion_valid, premises_valid in checked_steps:
        if all(premises_valid):
            assert conclusion_valid, conclusion.text


def test_rules_are_invertible(checked_steps):
    for conclusion, conclusion_valid, premises_valid in checked_steps:
        if conclusion_valid:
            assert all(premises_valid), conclusion.text
