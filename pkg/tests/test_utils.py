import json

import matplotlib

matplotlib.use("Agg")

from src.corpus.hilbert import run_corpus
from src.utils.formula_generator import generate_sample_formulas, observation_leaves, random_formulas
from src.utils.rendering import render_corpus, render_validity
from src.utils.visualization import create_corpus_chart

from .conftest import structure_path


def test_observation_leaves(c1):
    assert [str(leaf) for leaf in observation_leaves(c1)] == [
        "obs{a}(oa)^0", "obs{a}(oa)^1",
        "obs{b}(ob)^0", "obs{b}(ob)^1",
        "obs{a,b}(oa,ob)^0", "obs{a,b}(oa,ob)^1",
    ]


def test_random_formulas_are_seeded(c2):
    assert random_formulas(c2, 10, 3, seed=5) == random_formulas(c2, 10, 3, seed=5)


def test_generate_sample_formulas(tmp_path, c2, parse2):
    output = tmp_path / "formulas.txt"
    generate_sample_formulas(structure_path("c2"), str(output), 12, 3, 9)
    lines = output.read_text(encoding="utf-8").splitlines()
    assert len(lines) == 12
    assert [parse2(line) for line in lines] == random_formulas(c2, 12, 3, seed=9)


def test_corpus_chart_and_table(tmp_path, c1):
    report = run_corpus(c1)
    chart = tmp_path / "corpus.png"
    create_corpus_chart(report, "c1", str(chart))
    assert chart.stat().st_size > 0

    table = render_corpus(report, "text").splitlines()
    assert table[0].split() == ["Schema", "Instances", "Nodes", "Result", "Description"]
    assert table[-1].startswith("14/14 schemata pass")
    assert json.loads(render_corpus(report, "json"))["pass_count"] == 14


def test_render_validity_json():
    assert json.loads(render_validity("|- s: p", False, None, "json")) == {"input": "|- s: p", "valid": False}
