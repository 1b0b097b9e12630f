import pytest

from akh.corpus import DIAGRAM_DIR, corpus_names, load_corpus_diagram
from akh.diagram import (
    AnnularDiagram,
    InvalidDiagramError,
    crossing_signs,
    parse_diagram,
    serialize,
    winding_parity,
)


@pytest.mark.parametrize("name", corpus_names())
def test_corpus_files_are_canonical(name: str):
    text = (DIAGRAM_DIR / f"{name}.json").read_text()
    d = parse_diagram(text)
    assert d.name == name
    assert serialize(d) == text


@pytest.mark.parametrize(
    "name, stats",
    [
        ("d_t", (0, 0, 1)),
        ("d_e", (0, 0, 1)),
        ("d_k", (1, 0, 1)),
        ("d_k_neg", (0, 1, 1)),
        ("hopf", (2, 0, 2)),
        ("trefoil", (3, 0, 1)),
        ("two_loops", (0, 0, 2)),
    ],
)
def test_crossing_signs(name: str, stats):
    assert tuple(crossing_signs(load_corpus_diagram(name))) == stats


def test_winding_parity():
    assert winding_parity(load_corpus_diagram("d_e")) == 1
    assert winding_parity(load_corpus_diagram("d_t")) == 0
    assert winding_parity(load_corpus_diagram("two_loops")) == 0
    assert winding_parity(load_corpus_diagram("trefoil")) == 0


def test_orientation_of_kink():
    d = load_corpus_diagram("d_k")
    # Edge 1 enters as the under-strand, edge 2 leaves as the over-strand.
    assert d.heads[1] == (0, 0)
    assert d.heads[2] == (0, 3)
    assert d.signs == (1,)
    assert d.components == ((1, 2),)


def test_over_only_component_orientation():
    d = load_corpus_diagram("r2_mixed")
    assert len(d.components) == 2
    # Edge 1 leaves (3, 1, 4, 2), the smaller of its two crossings.
    assert d.tails[1] == (1, 1)
    assert d.heads[1] == (0, 1)
    assert d.signs == (-1, 1)


@pytest.mark.parametrize(
    "name, order",
    [("r2_braid", [1, 0]), ("r2_mixed", [1, 0]), ("r3_curl_before", [2, 0, 1])],
)
def test_over_only_orientation_ignores_crossing_order(name: str, order):
    d = load_corpus_diagram(name)
    permuted = d.permute_crossings(order)
    assert permuted.signs == tuple(d.signs[k] for k in order)
    position = {old: new for new, old in enumerate(order)}
    for edge in d.edges:
        (k, p), (m, q) = d.tails[edge], d.heads[edge]
        assert permuted.tails[edge] == (position[k], p)
        assert permuted.heads[edge] == (position[m], q)


def test_r2_braid_orientation():
    d = load_corpus_diagram("r2_braid")
    # Edges 2 and 3 only pass over; edge 2 leaves (1, 3, 4, 2).
    assert d.tails[2] == (1, 3)
    assert d.heads[2] == (0, 3)
    assert d.heads[1] == (1, 0)
    assert d.signs == (1, -1)


def test_permute_crossings_keeps_signs():
    d = load_corpus_diagram("figure_eight")
    ORDER = [3, 1, 0, 2]
    permuted = d.permute_crossings(ORDER)
    assert permuted.signs == tuple(d.signs[k] for k in ORDER)
    assert crossing_signs(permuted) == crossing_signs(d)


@pytest.mark.parametrize(
    "text",
    [
        "not json",
        "[1, 2]",
        '{"name": "x", "colour": "red"}',
        '{"crossings": [[1, 2, 3]], "arrows": ["U"]}',
        '{"crossings": [[1, 1, 2, 2]], "arrows": ["X"]}',
        '{"crossings": [[1, 1, 2, 2]], "arrows": []}',
        '{"crossings": [[1, 1, 2, 3]], "arrows": ["U"]}',
        '{"loops": [1], "gamma": [[2, 1]]}',
        '{"loops": [1], "gamma": [[1, 2]]}',
        '{"loops": [1, 1]}',
        '{"loops": [1.5]}',
        '{"loops": [true]}',
        '{"crossings": [[1, 1, 2, "2"]], "arrows": ["U"]}',
        '{"crossings": [[1, 1, 2.0, 2]], "arrows": ["U"]}',
        '{"loops": [1], "gamma": [[1, 1.0]]}',
        '{"loops": [1], "gamma": [[null, 1]]}',
        '{"crossings": [[1, 2, 3, 2], [3, 4, 1, 4]], "arrows": ["U", "U"]}',
    ],
)
def test_invalid_diagrams(text: str):
    with pytest.raises(InvalidDiagramError):
        parse_diagram(text)


def test_inconsistent_orientation():
    # Travelling along edges 1, 2 enters one crossing at a and the other at c.
    with pytest.raises(InvalidDiagramError):
        AnnularDiagram(crossings=((1, 3, 2, 4), (1, 4, 2, 3)), arrows=("U", "U"))


def test_invalid_error_is_value_error():
    assert issubclass(InvalidDiagramError, ValueError)
