"""
Structural rules and closure rules as provability implications.
"""
import itertools

import pytest

from src.corpus.hilbert import hilbert_corpus
from src.engine.prover import Prover
from src.models.formula import And, Atom, Implies, Know, LabelledFormula, Not, Or, Sequent
from src.syntax.parser import FormulaParser, root_sequent
from src.utils.formula_generator import random_formulas

P = Atom("p")


def corpus_formulas(structure):
    return [formula for schema in hilbert_corpus(structure) for formula in schema.instances]


@pytest.fixture(scope="module")
def prover1(c1):
    return Prover(c1)


@pytest.fixture(scope="module")
def provable_sequents(c1, c2):
    sequents = [root_sequent(f) for f in corpus_formulas(c1)]
    sequents += [root_sequent(f) for f in corpus_formulas(c2)]
    return sequents[:100]


def test_weakening(c1, c2, provable_sequents):
    assert len(provable_sequents) == 100
    split = len(corpus_formulas(c1))
    provers = (Prover(c1), Prover(c2))
    for index, sequent in enumerate(provable_sequents):
        prover = provers[0] if index < split else provers[1]
        label = sequent.labels[0]
        weakened = sequent.extend(
            left=[LabelledFormula(label, Atom("z0")), LabelledFormula("u0", Atom("z1"))],
            right=[LabelledFormula(label, Atom("z2"))]
        )
        assert prover.prove(weakened).provable, weakened.text


def test_contraction(provable_sequents):
    for sequent in provable_sequents:
        members = list(sequent.succedent)
        duplicated = Sequent.of(list(sequent.antecedent) * 2, members + members)
        assert duplicated == sequent


def _cut_cases():
    q, r = Atom("q"), Atom("r")
    a, n = frozenset({"a"}), frozenset({"a", "b"})
    entailing = [
        P, And(P, q), Not(Not(P)), Know(a, P), Know(frozenset(), P), And(Know(a, Implies(q, P)), Know(a, q)),
        And(Or(P, q), Not(q)), Know(n, P), And(r, Know(a, And(P, r))), Implies(Not(P), P),
    ]
    entailed = [
        P, Or(P, q), Implies(q, P), Not(Not(P)), Know(n, P), Or(Not(q), P), Implies(Not(P), r),
        Or(P, Know(a, P)),
    ]
    pairs = list(itertools.islice(itertools.product(entailing, entailed), 0, None, 3))[:20]
    cases = [(f"s: {left.text}", "s: p", f"s: {right.text}") for left, right in pairs]
    cases += [
        ("s: q & p", "s: q", "s: q | r"),
        ("s: K{a} q", "s: q", "s: p -> q"),
        ("s: ~ ~q", "s: q", "s: ~ ~q"),
        ("s: (q | p) & ~p", "s: q", "s: ~p | q"),
        ("s: K{a,b} q", "s: q", "s: r -> q"),
        ("s: K{a} obs{a}(oa)^1", "s: obs{a}(oa)^1", "s: obs{a}(oa)^1 | p"),
        ("s: obs{a}(oa)^1 & q", "s: obs{a}(oa)^1", "s: q -> obs{a}(oa)^1"),
        ("s: ~ ~obs{a}(oa)^1", "s: obs{a}(oa)^1", "s: p | obs{a}(oa)^1"),
        ("s: K{a} p, s ~{a} t", "t: p", "t: p | q"),
        ("s: K{a} p, s ~{a} t", "t: K{a} p", "t: p"),
    ]
    return cases


def test_cut(c1, prover1):
    parse = FormulaParser(c1).parse_sequent
    cases = _cut_cases()
    assert len(cases) == 30
    assert len({cut for _, cut, _ in cases}) == 5
    for antecedent, cut, succedent in cases:
        first, second = parse(f"{antecedent} |- {cut}"), parse(f"{cut} |- {succedent}")
        assert prover1.prove(first).provable, first.text
        assert prover1.prove(second).provable, second.text
        composed = parse(f"{antecedent} |- {succedent}")
        assert prover1.prove(composed).provable, composed.text


def test_modus_ponens(c1, prover1):
    antecedents = corpus_formulas(c1)[:50]
    consequents = corpus_formulas(c1)[::-1][:25] + random_formulas(c1, 25, 2, seed=3)
    checked = 0
    for a, b in zip(antecedents, consequents):
        assert prover1.prove(root_sequent(a)).provable
        if prover1.prove(root_sequent(Implies(a, b))).provable:
            checked += 1
            assert prover1.prove(root_sequent(b)).provable, str(b)
    assert checked >= 25


def test_necessitation(c1, prover1):
    for formula in corpus_formulas(c1)[:50]:
        for group in c1.groups():
            assert prover1.prove(root_sequent(Know(group, formula))).provable, f"K{sorted(group)} {formula}"
