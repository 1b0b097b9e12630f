import pytest

from akh.algebra import edge_map
from akh.corpus import load_corpus_diagram
from akh.cube import Cube, edge_assignment, resolve, split_arrow
from akh.utils.common import ComputeConfig

MOVE_DIAGRAMS = ["d_k", "d_k_neg", "hopf", "trefoil", "r2_mixed", "r3_before", "t24"]


def test_resolve_kink():
    d = load_corpus_diagram("d_k")
    res = resolve(d, 0)
    assert res.n_circles == 2
    # Trivial circles come first in canonical order.
    assert res.essential == (False, True)
    assert res.order == (1, 0)
    assert res.circles[0].edges == (2,)
    assert res.circles[1].edges == (1,)

    merged = resolve(d, 1)
    assert merged.n_circles == 1
    assert merged.n_essential == 1
    assert merged.height == 1


def test_resolve_loops():
    d = load_corpus_diagram("e_plus_t")
    res = resolve(d, 0)
    assert res.essential == (False, True)
    assert res.n_trivial == 1
    assert res.circle_of(1) == 1
    with pytest.raises(KeyError):
        res.circle_of(7)


@pytest.mark.parametrize(
    "name, n_edges, n_faces", [("d_k", 1, 0), ("hopf", 4, 1), ("trefoil", 12, 6), ("t24", 32, 24)]
)
def test_cube_shape(name: str, n_edges: int, n_faces: int):
    cube = Cube(load_corpus_diagram(name))
    assert len(cube.resolutions) == 2**cube.n
    assert len(cube.edges) == n_edges
    assert len(cube.faces()) == n_faces


def test_kink_edge_is_merge():
    cube = Cube(load_corpus_diagram("d_k"))
    (edge,) = cube.edges
    assert (edge.source, edge.target, edge.crossing) == (0, 1, 0)
    assert edge.kind == "merge"
    assert edge.circles == (0, 1)
    assert edge.targets == (0,)
    assert edge.carry == (-1, -1)
    with pytest.raises(ValueError):
        split_arrow(cube, edge)


def test_hopf_edges():
    cube = Cube(load_corpus_diagram("hopf"))
    assert [res.n_circles for res in cube.resolutions] == [2, 1, 1, 2]
    for edge in cube.edges:
        if edge.source == 0:
            assert edge.kind == "merge"
        else:
            assert edge.kind == "split"
            tail, head = split_arrow(cube, edge)
            assert tail != head


@pytest.mark.parametrize("name", MOVE_DIAGRAMS)
def test_edge_kinds_change_circle_count(name: str):
    cube = Cube(load_corpus_diagram(name))
    for edge in cube.edges:
        before = cube.resolutions[edge.source].n_circles
        after = cube.resolutions[edge.target].n_circles
        assert after == before + (1 if edge.kind == "split" else -1)
        assert edge.target == edge.source | (1 << edge.crossing)


@pytest.mark.parametrize("name", MOVE_DIAGRAMS)
@pytest.mark.parametrize("free_sign", [1, -1])
def test_edge_assignment_anticommutes(name: str, free_sign: int):
    cube = Cube(load_corpus_diagram(name))
    assignment = edge_assignment(cube, edge_map, free_sign)
    assert len(assignment.signs) == len(cube.edges)
    assert set(assignment.signs) <= {1, -1}
    for v, k1, k2 in cube.faces():
        path = [
            cube.edge(v, k1),
            cube.edge(v | (1 << k1), k2),
            cube.edge(v, k2),
            cube.edge(v | (1 << k2), k1),
        ]
        signed = [edge_map(cube, e).scale(assignment.sign(cube, e)) for e in path]
        assert (signed[1] @ signed[0] + signed[3] @ signed[2]).is_zero()


def test_cube_is_deterministic():
    d = load_corpus_diagram("trefoil")
    first, second = Cube(d), Cube(d, ComputeConfig(parallel=4))
    assert first.dump() == second.dump()
    assert edge_assignment(first, edge_map) == edge_assignment(second, edge_map)


def test_dump_records_signs():
    cube = Cube(load_corpus_diagram("hopf"))
    assignment = edge_assignment(cube, edge_map)
    dump = cube.dump(assignment)
    assert dump["name"] == "hopf"
    assert [v["vertex"] for v in dump["vertices"]] == ["00", "10", "01", "11"]
    assert [e["sign"] for e in dump["edges"]] == list(assignment.signs)
