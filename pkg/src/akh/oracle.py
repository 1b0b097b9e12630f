"""
Even annular Khovanov homology over GF(2).

Built from the resolutions alone, with the plain Khovanov multiplication and
comultiplication and no signs, so it is an independent cross-check of the odd
complex: modulo 2 the two differentials coincide.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Tuple

import numpy as np

from akh.algebra import ChainComplex, block_torsion
from akh.cube import Resolution, resolve
from akh.diagram import AnnularDiagram
from akh.utils.common import CheckReport, InvariantViolationError, merge_reports
from akh.utils.gf2 import gf2_rank

logger = logging.getLogger(__name__)

Trigrading = Tuple[int, int, int]


@dataclass
class GF2Complex:
    """Differential over GF(2) with the same generator order as ChainComplex."""

    degrees: List[Trigrading]
    d: np.ndarray
    d0: np.ndarray
    d_minus: np.ndarray

    def is_complex(self) -> bool:
        return not ((self.d.astype(np.int64) @ self.d) % 2).any()


def _circle_sets(res: Resolution) -> List[frozenset]:
    return [frozenset(c.edges) for c in res.circles]


def _even_edge_map(r0: Resolution, r1: Resolution) -> np.ndarray:
    """Merge or split between adjacent resolutions, v- circles as bitmasks."""
    before, after = _circle_sets(r0), _circle_sets(r1)
    # Circles untouched by the saddle survive with the same edges.
    same = {i: after.index(c) for i, c in enumerate(before) if c in after}
    old = [i for i in range(len(before)) if i not in same]
    new = [t for t in range(len(after)) if t not in same.values()]
    out = np.zeros((2 ** len(after), 2 ** len(before)), dtype=np.uint8)
    for subset in range(2 ** len(before)):
        base = sum(1 << same[i] for i in same if (subset >> i) & 1)
        minus = [i for i in old if (subset >> i) & 1]
        if len(old) == 2:  # merge: v+ v+ -> v+, v+ v- -> v-, v- v- -> 0
            (target,) = new
            if len(minus) == 0:
                out[base, subset] = 1
            elif len(minus) == 1:
                out[base | (1 << target), subset] = 1
        else:  # split: v+ -> v- v+ + v+ v-, v- -> v- v-
            first, second = new
            if minus:
                out[base | (1 << first) | (1 << second), subset] = 1
            else:
                out[base | (1 << first), subset] = 1
                out[base | (1 << second), subset] = 1
    return out


def _degrees(res: Resolution, n_plus: int, n_minus: int):
    height = bin(res.vertex).count("1")
    for subset in range(2**res.n_circles):
        ell = bin(subset).count("1")
        ell_e = sum(
            1 for i in range(res.n_circles) if (subset >> i) & 1 and res.essential[i]
        )
        yield (
            height - n_minus,
            res.n_circles - 2 * ell + height + n_plus - 2 * n_minus,
            res.n_essential - 2 * ell_e,
        )


def even_complex(d: AnnularDiagram) -> GF2Complex:
    """The even annular complex over GF(2) with its k-filtration parts."""
    n = d.n_crossings
    n_plus = sum(1 for s in d.signs if s > 0)
    n_minus = n - n_plus
    resolutions = [resolve(d, v) for v in range(2**n)]
    offsets, degrees = [], []
    for res in resolutions:
        offsets.append(len(degrees))
        degrees.extend(_degrees(res, n_plus, n_minus))

    size = len(degrees)
    diff = np.zeros((size, size), dtype=np.uint8)
    for v in range(2**n):
        for k in range(n):
            if (v >> k) & 1:
                continue
            w = v | (1 << k)
            block = _even_edge_map(resolutions[v], resolutions[w])
            rows, cols = block.shape
            diff[offsets[w] : offsets[w] + rows, offsets[v] : offsets[v] + cols] = block

    k = np.array([g[2] for g in degrees])
    shift = k[:, None] - k[None, :]
    d0 = diff * (shift == 0)
    d_minus = diff * (shift == -2)
    assert not (diff * ~((shift == 0) | (shift == -2))).any(), "even map raises k"
    return GF2Complex(degrees, diff, d0.astype(np.uint8), d_minus.astype(np.uint8))


def gf2_homology(degrees: List[Trigrading], d: np.ndarray) -> Dict[Trigrading, int]:
    """Trigraded dimensions of the homology of a k-preserving differential."""
    blocks: Dict[Trigrading, List[int]] = {}
    for index, key in enumerate(degrees):
        blocks.setdefault(key, []).append(index)
    dims = {}
    for (i, j, k), cols in sorted(blocks.items()):
        following = blocks.get((i + 1, j, k), [])
        previous = blocks.get((i - 1, j, k), [])
        rank_out = gf2_rank(d[np.ix_(following, cols)]) if following else 0
        rank_in = gf2_rank(d[np.ix_(cols, previous)]) if previous else 0
        dim = len(cols) - rank_out - rank_in
        if dim:
            dims[(i, j, k)] = dim
    return dims


def even_akh_gf2(d: AnnularDiagram) -> Dict[Trigrading, int]:
    """Even annular Khovanov homology over GF(2), as trigraded dimensions."""
    complex_ = even_complex(d)
    if not complex_.is_complex():
        raise InvariantViolationError(f"even differential of {d.name!r} squares to non-zero")
    dims = gf2_homology(complex_.degrees, complex_.d0)
    logger.debug("oracle dims of %r: %s", d.name, dims)
    return dims


def mod2_reduce(c: ChainComplex) -> GF2Complex:
    """Reduces the odd complex modulo 2, checking it against the even one."""
    reduced = c.d.to_gf2()
    even = even_complex(c.diagram)
    if not np.array_equal(reduced, even.d):
        raise InvariantViolationError(
            f"odd differential of {c.diagram.name!r} is not the even one modulo 2"
        )
    if [g.degrees for g in c.generators] != even.degrees:
        raise InvariantViolationError("odd and even complexes disagree on gradings")
    return GF2Complex(even.degrees, reduced, c.d0.to_gf2(), c.d_minus.to_gf2())


def check_oracle(c: ChainComplex, rational_dims: Dict[Trigrading, int]) -> CheckReport:
    """Mod-2 agreement of the differentials and the universal coefficient relations.

    Each GF(2) dimension is at least the rational one, with equality wherever
    neither the block nor its successor in homological degree has torsion.
    """
    try:
        reduced = mod2_reduce(c)
    except InvariantViolationError as exc:
        return CheckReport.fail("oracle", str(exc))
    oracle = even_akh_gf2(c.diagram)
    reports = []
    if gf2_homology(reduced.degrees, reduced.d0) != oracle:
        reports.append(CheckReport.fail("oracle dims", "d0 mod 2 homology differs"))
    groups = c.blocks("d0")
    for key in sorted(set(oracle) | set(rational_dims)):
        i, j, k = key
        mod2, dim = oracle.get(key, 0), rational_dims.get(key, 0)
        if mod2 < dim:
            reports.append(
                CheckReport.fail(
                    "oracle bound", f"GF(2) dimension below rational one at {key}"
                )
            )
        elif mod2 != dim and not (
            block_torsion(c, "d0", key, groups)
            or block_torsion(c, "d0", (i + 1, j, k), groups)
        ):
            reports.append(
                CheckReport.fail(
                    "oracle equality",
                    f"GF(2) dimension differs from rational one at {key}",
                )
            )
    return merge_reports("oracle", reports)
