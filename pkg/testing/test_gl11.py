from dataclasses import replace
from fractions import Fraction

import pytest
import torch

from akh.algebra import build_complex, homology
from akh.corpus import load_corpus_diagram
from akh.cube import Cube, resolve
from akh.gl11 import (
    action_on_homology,
    alpha_iso,
    complex_action,
    dual_tensor_rep,
    exterior_action,
    fundamental_rep,
    rep_fingerprint,
    tensor_action,
    verify_superalgebra,
)
from akh.gl11.checks import (
    check_complex_action,
    check_cube,
    check_toolkit,
    check_vertex,
    intertwines,
)
from akh.gl11.superrep import bracket_coefficients, direct_sum, trivial_rep
from akh.gl11.tensor import (
    COUNIT,
    COUNIT_K0,
    UNIT,
    UNIT_K0,
    factor_permutation,
    k_part,
    twist,
)
from akh.utils.matrices import SparseExactMatrix

SMALL = ["d_e", "d_k", "d_k_neg", "e_plus_t", "two_loops", "hopf", "trefoil", "r2_mixed"]

ESSENTIAL_UNKNOT = {(0, 0): ((-1, 1, 1, 0, 0, 1), (1, 1, 0, 1, 1, 0))}
TRIVIAL_UNKNOT = {(0, -1): ((0, 1, 0, 0, 0, 0),), (0, 1): ((0, 1, 0, 0, 0, 0),)}


def test_bracket_table_symmetry():
    assert bracket_coefficients("f", "e") == {"h1": 1, "h2": 1}
    assert bracket_coefficients("h1", "e") == {"e": 1}
    assert bracket_coefficients("h2", "f") == {"f": 1}


@pytest.mark.parametrize("m, n", [(1, 0), (0, -1), (2, 1), (1, -1), (3, -3)])
def test_fundamental_reps(m: int, n: int):
    rep = fundamental_rep(m, n)
    assert rep.dim == (1 if m + n == 0 else 2)
    assert verify_superalgebra(rep).passed


def test_fundamental_rep_casimir():
    rep = fundamental_rep(2, 1)
    assert (rep.e @ rep.f)[0, 0] == 3
    assert rep.h1 == SparseExactMatrix.diagonal([2, 1])


def test_broken_rep_fails():
    rep = fundamental_rep(1, 0)
    broken = replace(rep, f=SparseExactMatrix.zeros((2, 2)))
    report = verify_superalgebra(broken)
    assert not report.passed
    assert "[e, f]" in report.message


def test_direct_sum_and_trivial():
    rep = direct_sum([fundamental_rep(1, 0), trivial_rep(1)], name="sum")
    assert rep.dim == 3
    # h_plus is 1 on one summand and 0 on the other.
    assert rep.m is None
    assert verify_superalgebra(rep).passed


def test_dual_pair_fingerprint():
    rep = dual_tensor_rep(dual_first=True)
    assert verify_superalgebra(rep).passed
    assert rep_fingerprint(rep) == {
        (0, 0): ((-2, 1, 1, 0, 0, 0), (0, 2, 1, 1, 1, 1), (2, 1, 0, 1, 0, 0))
    }


def test_dual_pair_invariant_vector():
    rep = dual_tensor_rep(dual_first=True)
    # Basis v+v+, v+v-, v-v+, v-v- with the first factor most significant.
    assert rep.e.apply({1: 1, 2: 1}) == {0: Fraction(2)}
    assert rep.e.apply({2: 1, 1: -1}) == {}
    assert rep.f.apply({2: 1, 1: -1}) == {}


def test_twist_is_involution():
    p, q = (0, 1), (0, 1)
    swap = twist(p, q)
    assert torch.equal(swap @ swap, torch.eye(4, dtype=swap.dtype))
    # v- x v- picks up a sign.
    assert swap[3, 3] == -1


def test_factor_permutation_trivial_cases():
    assert torch.equal(factor_permutation([]), torch.ones(1, 1, dtype=torch.long))
    assert torch.equal(factor_permutation([0, 1]), torch.eye(4, dtype=torch.long))


def test_alpha_iso_orders():
    res = resolve(load_corpus_diagram("e_plus_t"), 0)
    assert alpha_iso(res).entries() == {(0, 0): 1, (2, 1): 1, (1, 2): 1, (3, 3): 1}
    assert alpha_iso(res, [1, 0]).entries() == {
        (0, 0): 1,
        (1, 1): 1,
        (2, 2): 1,
        (3, 3): -1,
    }
    with pytest.raises(AssertionError):
        alpha_iso(res, [0, 0])


@pytest.mark.parametrize("name", ["e_plus_t", "two_loops"])
def test_alpha_intertwines(name: str):
    res = resolve(load_corpus_diagram(name), 0)
    assert intertwines(alpha_iso(res), exterior_action(res), tensor_action(res))


def test_exterior_action_on_essential_circle():
    res = resolve(load_corpus_diagram("d_e"), 0)
    rep = exterior_action(res)
    assert rep.e.entries() == {(0, 1): 1}
    assert rep.f.entries() == {(1, 0): 1}
    assert rep.h_plus == SparseExactMatrix.identity(2)
    assert rep.h_minus == SparseExactMatrix.diagonal([1, -1])
    with pytest.raises(ValueError):
        exterior_action(res, "middle")


def test_unit_and_counit_k_parts():
    assert torch.equal(k_part(UNIT, [], ["T"]), UNIT)
    assert torch.equal(k_part(COUNIT, ["T"], []), COUNIT)
    # On an essential circle v+ has weight 1 and v- weight -1, so both maps move k.
    assert torch.equal(k_part(UNIT, [], ["E"]), torch.zeros_like(UNIT))
    assert torch.equal(k_part(COUNIT, ["E"], []), torch.zeros_like(COUNIT))
    assert torch.equal(k_part(UNIT, [], ["E"], shift=1), UNIT)
    assert torch.equal(k_part(COUNIT, ["E"], [], shift=1), COUNIT)
    assert set(UNIT_K0) == set(COUNIT_K0) == {"T", "E"}


def test_toolkit():
    assert check_toolkit().passed


@pytest.mark.parametrize("name", SMALL)
def test_cube_checks(name: str):
    cube = Cube(load_corpus_diagram(name))
    assert all(check_vertex(res).passed for res in cube.resolutions)
    assert check_cube(cube).passed


@pytest.mark.parametrize("name", SMALL)
def test_complex_action(name: str):
    c = build_complex(load_corpus_diagram(name))
    rep = complex_action(c)
    assert rep.dim == c.size
    assert rep.m == c.m
    assert check_complex_action(c).passed


@pytest.mark.parametrize(
    "name, fingerprint",
    [("d_e", ESSENTIAL_UNKNOT), ("d_k", ESSENTIAL_UNKNOT), ("d_t", TRIVIAL_UNKNOT)],
)
def test_action_on_homology(name: str, fingerprint):
    c = build_complex(load_corpus_diagram(name))
    rep = action_on_homology(c)
    assert rep.dim == 2
    assert verify_superalgebra(rep).passed
    assert rep_fingerprint(rep) == fingerprint


def test_action_needs_d0_homology():
    c = build_complex(load_corpus_diagram("d_e"))
    with pytest.raises(ValueError):
        action_on_homology(c, homology(c, "d"))
