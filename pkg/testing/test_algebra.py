from fractions import Fraction

import pytest

from akh.algebra import (
    build_complex,
    check_differentials,
    check_edge_ranks,
    edge_map,
    homology,
    solve_in_block,
    superdegree,
    wedge_normalize,
)
from akh.corpus import corpus_names, load_corpus_diagram
from akh.diagram import DiagramStats
from akh.utils.common import ComputeConfig, InvariantViolationError

SMALL = ["d_t", "d_e", "d_k", "d_k_neg", "hopf", "trefoil", "r2_mixed", "r3_before"]

D0_DIMS = {
    "d_t": {(0, 1, 0): 1, (0, -1, 0): 1},
    "d_e": {(0, 1, 1): 1, (0, -1, -1): 1},
    "d_k": {(0, 1, 1): 1, (0, -1, -1): 1},
    "two_loops": {(0, 2, 2): 1, (0, 0, 0): 2, (0, -2, -2): 1},
    "e_plus_t": {(0, 2, 1): 1, (0, 0, 1): 1, (0, 0, -1): 1, (0, -2, -1): 1},
}


@pytest.mark.parametrize(
    "factors, expected",
    [
        ([], (1, 0)),
        ([0, 2], (1, 0b101)),
        ([2, 0], (-1, 0b101)),
        ([2, 1, 0], (-1, 0b111)),
        ([1, 2, 0], (1, 0b111)),
        ([1, 1], None),
    ],
)
def test_wedge_normalize(factors, expected):
    assert wedge_normalize(factors) == expected


def test_kink_differential():
    c = build_complex(load_corpus_diagram("d_k"))
    assert c.size == 6
    assert c.offsets == [0, 4]
    # Vertex 0 holds the trivial circle a_0 and the essential circle a_1.
    assert [g.degrees for g in c.generators] == [
        (0, 3, 1),
        (0, 1, 1),
        (0, 1, -1),
        (0, -1, -1),
        (1, 3, 1),
        (1, 1, -1),
    ]
    assert c.d.entries() == {(4, 0): 1, (5, 1): 1, (5, 2): 1}
    assert c.d0.entries() == {(4, 0): 1, (5, 2): 1}
    assert c.d_minus.entries() == {(5, 1): 1}


def test_merge_map_kills_repeated_circle():
    c = build_complex(load_corpus_diagram("d_k"))
    f = edge_map(c.cube, c.cube.edges[0])
    assert f.shape == (2, 4)
    assert f.entries() == {(0, 0): 1, (1, 1): 1, (1, 2): 1}


def test_split_map_unit_column():
    c = build_complex(load_corpus_diagram("hopf"))
    edge = c.cube.edge(1, 1)
    assert edge.kind == "split"
    tail, head = edge.targets
    f = edge_map(c.cube, edge)
    assert f.columns()[0] == {1 << tail: 1, 1 << head: -1}


@pytest.mark.parametrize("name", SMALL)
@pytest.mark.parametrize("free_sign", [1, -1])
def test_check_differentials(name: str, free_sign: int):
    c = build_complex(load_corpus_diagram(name), ComputeConfig(free_sign=free_sign))
    assert check_differentials(c).passed
    assert check_edge_ranks(c).passed


@pytest.mark.parametrize("name", list(D0_DIMS))
def test_d0_homology(name: str):
    c = build_complex(load_corpus_diagram(name))
    assert homology(c, "d0").dims == D0_DIMS[name]


def test_full_homology_of_kink():
    c = build_complex(load_corpus_diagram("d_k"))
    assert homology(c, "d").dims == {(0, 1): 1, (0, -1): 1}


@pytest.mark.parametrize("name", SMALL)
def test_homology_independent_of_parallelism(name: str):
    d = load_corpus_diagram(name)
    serial = homology(build_complex(d), "d0").dims
    threaded = homology(build_complex(d, ComputeConfig(parallel=4)), "d0").dims
    assert serial == threaded


def test_integral_coefficients():
    c = build_complex(load_corpus_diagram("d_k"), ComputeConfig(coeff="integral"))
    result = homology(c, "d0")
    assert result.dims == D0_DIMS["d_k"]
    assert result.torsion == {}


def test_poincare():
    c = build_complex(load_corpus_diagram("d_e"))
    assert homology(c).poincare() == "t^0 q^1 a^1 + t^0 q^-1 a^-1"
    c = build_complex(load_corpus_diagram("two_loops"))
    assert "2 t^0 q^0 a^0" in homology(c).poincare()


def test_solve_in_block():
    c = build_complex(load_corpus_diagram("d_k"))
    result = homology(c, "d0")
    block = result.blocks[(0, 1, 1)]
    assert block.generators == [1]
    (rep,) = block.representatives
    assert solve_in_block(block, [{1: Fraction(2)}]) == [{0: Fraction(2) / rep[1]}]

    # a_1 maps onto the merged circle, so it is not a d0-cycle.
    block = result.blocks[(0, 1, -1)]
    assert block.dimension == 0
    with pytest.raises(InvariantViolationError):
        solve_in_block(block, [{2: Fraction(1)}])


def test_superdegree():
    stats = DiagramStats(n_plus=1, n_minus=0, num_components=1)
    assert superdegree(3, 1, stats, 1) == 1
    assert superdegree(1, 1, stats, 1) == 0
    assert superdegree(1, 1, stats, 1, "kshift") == 0
    assert superdegree(1, -1, stats, 1, "kshift") == 1
    with pytest.raises(ValueError):
        superdegree(1, 1, stats, 1, "other")


@pytest.mark.parametrize("name", corpus_names())
def test_corpus_builds(name: str):
    c = build_complex(load_corpus_diagram(name))
    assert c.d.shape == (c.size, c.size)
    assert all(g.superdegree in (0, 1) for g in c.generators)
