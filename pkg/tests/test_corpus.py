import pytest

from src.corpus.hilbert import hilbert_corpus, run_corpus
from src.engine.prover import Prover
from src.semantics.validity import check_validity
from src.syntax.parser import root_sequent


def test_corpus_shape(c2):
    corpus = hilbert_corpus(c2)
    assert [schema.schema_id for schema in corpus] == [f"H{i}" for i in range(1, 15)]
    counts = {schema.schema_id: len(schema.instances) for schema in corpus}
    assert counts == {
        "H1": 1, "H2": 1, "H3": 1, "H4": 4, "H5": 4, "H6": 4, "H7": 4,
        "H8": 9, "H9": 1, "H10": 3, "H11": 10, "H12": 10, "H13": 10, "H14": 12
    }


def test_corpus_instances_are_valid(c1):
    for schema in hilbert_corpus(c1):
        for formula in schema.instances:
            assert check_validity(formula, c1), f"{schema.schema_id}: {formula}"


def test_corpus_passes_on_c2(c2):
    report = run_corpus(c2)
    failed = [schema.schema_id for schema in report.schemas if not schema.passed]
    assert failed == []
    assert report.pass_count == 14


def test_corpus_passes_on_c1(c1):
    assert run_corpus(c1).passed


@pytest.mark.slow
def test_corpus_passes_on_union_structure(c3):
    assert run_corpus(c3).passed


def test_corpus_report_dict(c1):
    data = run_corpus(c1).to_dict(include_elapsed=False)
    assert data["passed"] is True
    assert "elapsed_ms" not in data
    first = data["schemas"][0]
    assert first["id"] == "H1"
    assert first["instances"][0] == {
        "formula": "p -> q -> p", "verdict": "provable", "nodes": first["nodes"], "violations": []
    }


def test_correlated_knowledge_covers_full_group(c2):
    h13 = next(schema for schema in hilbert_corpus(c2) if schema.schema_id == "H13")
    full = [formula for formula in h13.instances if formula.left.right.group == c2.full_group]
    assert len(full) == 4
    prover = Prover(c2)
    for formula in full:
        assert prover.prove(root_sequent(formula)).provable, str(formula)
        assert check_validity(formula, c2)
