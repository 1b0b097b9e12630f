import numpy as np
import pytest

from akh.algebra import block_torsion, build_complex, homology
from akh.corpus import load_corpus_diagram
from akh.oracle import check_oracle, even_akh_gf2, even_complex, gf2_homology, mod2_reduce
from akh.utils.gf2 import gf2_rank, gf2_solve

SMALL = ["d_t", "d_e", "d_k", "d_k_neg", "two_loops", "hopf", "trefoil", "r2_mixed", "r3_after"]


def test_gf2_rank_and_solve():
    A = np.array([[1, 1, 0], [0, 1, 1], [1, 0, 1]], dtype=np.uint8)
    assert gf2_rank(A) == 2
    x = gf2_solve(A, np.array([1, 1, 0]))
    assert x is not None
    assert not ((A.astype(np.int64) @ x - [1, 1, 0]) % 2).any()
    assert gf2_solve(A, np.array([1, 0, 0])) is None
    assert gf2_rank(np.zeros((0, 3), dtype=np.uint8)) == 0


def test_gf2_solve_free_value():
    A = np.zeros((0, 4), dtype=np.uint8)
    assert gf2_solve(A, np.zeros(0, dtype=np.uint8), 1).tolist() == [1, 1, 1, 1]


@pytest.mark.parametrize(
    "name, dims",
    [
        ("d_t", {(0, 1, 0): 1, (0, -1, 0): 1}),
        ("d_e", {(0, 1, 1): 1, (0, -1, -1): 1}),
        ("d_k", {(0, 1, 1): 1, (0, -1, -1): 1}),
    ],
)
def test_even_unknots(name: str, dims):
    assert even_akh_gf2(load_corpus_diagram(name)) == dims


@pytest.mark.parametrize("name", SMALL)
def test_even_complex_squares_to_zero(name: str):
    complex_ = even_complex(load_corpus_diagram(name))
    assert complex_.is_complex()
    assert not (complex_.d0 & complex_.d_minus).any()


@pytest.mark.parametrize("name", SMALL)
def test_mod2_reduction_matches(name: str):
    c = build_complex(load_corpus_diagram(name))
    reduced = mod2_reduce(c)
    assert gf2_homology(reduced.degrees, reduced.d0) == even_akh_gf2(c.diagram)


@pytest.mark.parametrize("name", SMALL)
def test_check_oracle(name: str):
    c = build_complex(load_corpus_diagram(name))
    report = check_oracle(c, homology(c, "d0").dims)
    assert report.passed, report.message


def test_check_oracle_flags_inflated_dims():
    c = build_complex(load_corpus_diagram("d_e"))
    report = check_oracle(c, {(0, -1, -1): 1, (0, 1, 1): 2})
    assert not report.passed
    assert "below" in report.message


def test_check_oracle_flags_missing_dims():
    c = build_complex(load_corpus_diagram("d_e"))
    # Without torsion the GF(2) and rational dimensions agree block by block.
    report = check_oracle(c, {(0, 1, 1): 1})
    assert not report.passed
    assert "differs" in report.message
    assert "(0, -1, -1)" in report.message


def test_block_torsion_of_unknot_is_empty():
    c = build_complex(load_corpus_diagram("d_k"))
    for key in c.blocks("d0"):
        assert block_torsion(c, "d0", key) == []
