import pytest

from akh.cli import check_suite
from akh.corpus import (
    MOVES,
    compare_diagrams,
    compare_pair,
    corpus_names,
    diagram_invariants,
    load_corpus,
    load_corpus_diagram,
    load_pairs,
    resolve_path,
)
from akh.utils.common import ComputeConfig

PAIR_NAMES = [p.name for p in load_pairs()]


def test_corpus_contents():
    names = corpus_names()
    for name in ["d_t", "d_e", "d_k", "hopf", "trefoil", "r3_before", "r3_curl_after"]:
        assert name in names
    diagrams, pairs = load_corpus()
    assert len(diagrams) == len(names)
    assert {p.move for p in pairs} <= set(MOVES)
    assert {"R1L", "R1R", "R2", "R3"} <= {p.move for p in pairs}


def test_resolve_path(tmp_path):
    assert resolve_path("d_e") == resolve_path("corpus/d_e") == resolve_path("d_e.json")
    path = tmp_path / "mine.json"
    path.write_text('{"loops": [1]}')
    assert resolve_path(path) == path
    with pytest.raises(FileNotFoundError):
        resolve_path("no_such_diagram")
    with pytest.raises(FileNotFoundError):
        resolve_path("elsewhere/d_e")


@pytest.mark.parametrize("name", PAIR_NAMES)
def test_move_pairs(name: str):
    (pair,) = [p for p in load_pairs() if p.name == name]
    report = compare_pair(pair)
    assert report.passed, report.message
    expected = "isomorphic" if pair.expect == "equal" else "distinct"
    assert report.details["verdict"] == expected


@pytest.mark.parametrize("name", ["r1_positive", "r1_negative", "r2_braid"])
@pytest.mark.parametrize(
    "config",
    [ComputeConfig(free_sign=-1), ComputeConfig(supergrading="kshift")],
)
def test_move_pairs_under_variants(name: str, config: ComputeConfig):
    (pair,) = [p for p in load_pairs() if p.name == name]
    assert compare_pair(pair, config).passed


def test_negative_control_is_distinct():
    report = compare_diagrams(load_corpus_diagram("d_e"), load_corpus_diagram("d_t"))
    assert not report.passed
    assert report.details["verdict"] == "distinct"
    assert report.message == "trigraded dimensions differ"


@pytest.mark.parametrize("name", ["trefoil", "r2_braid", "r2_mixed", "r3_curl_after"])
def test_invariants_of_reversed_crossings(name: str):
    d = load_corpus_diagram(name)
    reversed_ = d.permute_crossings(list(range(d.n_crossings))[::-1])
    assert diagram_invariants(d) == diagram_invariants(reversed_)


@pytest.mark.parametrize("name", corpus_names())
def test_check_suite_on_corpus(name: str):
    reports = check_suite(load_corpus_diagram(name), ComputeConfig())
    failed = [f"{r.name}: {r.message}" for r in reports if not r.passed]
    assert not failed


def test_r3_pair_with_trivial_strands():
    (pair,) = [p for p in load_pairs() if p.name == "r3_curl"]
    for d in (pair.before, pair.after):
        # One essential strand crossing gamma once, one curled trivial circle.
        assert len(d.components) == 2
        assert len(d.gamma) == 1
        assert sorted(d.signs) == [-1, -1, 1]
