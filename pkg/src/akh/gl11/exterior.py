"""
gl(1|1) action on exterior-algebra chain groups.

At a resolution with essential circles c_0, ..., c_{r-1} (proximity order),
set a = sum c_t and b = sum (-1)^t c_t. Then

    e(v) = v -| a      (right contraction)
    f(v) = v ^ b       (right wedge)
    h_plus = m,  h_minus = n_e - 2 l_e

where l_e counts the essential factors of v. The left-handed variant
(a |- v, b ^ v) is also provided.
"""

import logging
from typing import Dict, List, Literal, Optional, Sequence, Tuple

from akh.algebra import ChainComplex, subset_indices, wedge_normalize
from akh.cube import Resolution
from akh.gl11.superrep import SuperRep
from akh.utils.matrices import SparseExactMatrix, block_diagonal

logger = logging.getLogger(__name__)

Handedness = Literal["right", "left"]


def vertex_degrees(res: Resolution, subset: int) -> Tuple[int, int, int]:
    """(0, n - 2l, n_e - 2l_e): tri-degree of a_subset up to the vertex shift."""
    ell = bin(subset).count("1")
    ell_e = sum(1 for i in subset_indices(subset) if res.essential[i])
    return 0, res.n_circles - 2 * ell, res.n_essential - 2 * ell_e


def pairing_vector(res: Resolution) -> Dict[int, int]:
    """Coefficients of b: +1, -1, +1, ... along the essential circles."""
    essential = [i for i, e in enumerate(res.essential) if e]
    return {i: (-1) ** t for t, i in enumerate(essential)}


def _contraction(
    res: Resolution, subset: int, handedness: Handedness
) -> Dict[int, int]:
    factors = subset_indices(subset)
    ell = len(factors)
    out = {}
    for position, i in enumerate(factors):
        if not res.essential[i]:
            continue
        # Moving a_i to the far end (right) or the front (left) before pairing.
        moves = ell - 1 - position if handedness == "right" else position
        out[subset & ~(1 << i)] = (-1) ** moves
    return out


def _wedge(res: Resolution, subset: int, handedness: Handedness) -> Dict[int, int]:
    out: Dict[int, int] = {}
    for i, coefficient in pairing_vector(res).items():
        factors = subset_indices(subset)
        wedge = factors + [i] if handedness == "right" else [i] + factors
        normalized = wedge_normalize(wedge)
        if normalized is not None:
            sign, target = normalized
            out[target] = out.get(target, 0) + sign * coefficient
    return out


def exterior_action(res: Resolution, handedness: Handedness = "right") -> SuperRep:
    """The action on the exterior algebra of the circles of `res`."""
    if handedness not in ("right", "left"):
        raise ValueError(f"Unknown handedness {handedness}")
    size = 2**res.n_circles
    e_entries, f_entries = {}, {}
    for subset in range(size):
        for target, value in _contraction(res, subset, handedness).items():
            e_entries[(target, subset)] = value
        for target, value in _wedge(res, subset, handedness).items():
            f_entries[(target, subset)] = value
    degrees = tuple(vertex_degrees(res, s) for s in range(size))
    m = res.n_essential % 2
    return SuperRep(
        e=SparseExactMatrix.from_entries(e_entries, (size, size)),
        f=SparseExactMatrix.from_entries(f_entries, (size, size)),
        h_plus=SparseExactMatrix.identity(size).scale(m),
        h_minus=SparseExactMatrix.diagonal([k for _, _, k in degrees]),
        parity=tuple(bin(s).count("1") % 2 for s in range(size)),
        degrees=degrees,
        m=m,
        name=f"exterior@{res.vertex}",
    )


def alpha_iso(res: Resolution, order: Optional[Sequence[int]] = None) -> SparseExactMatrix:
    """Isomorphism from the exterior algebra to the tensor description.

    `order[t]` is the circle placed at tensor position t, canonical by default.
    a_S goes to the tensor with v- exactly at the circles of S, with the sign
    of sorting the factors of a_S into tensor-position order.
    """
    n = res.n_circles
    order = list(range(n)) if order is None else list(order)
    assert sorted(order) == list(range(n)), f"{order} is not an order of {n} circles"
    position = {circle: t for t, circle in enumerate(order)}
    entries = {}
    for subset in range(2**n):
        places = [position[i] for i in subset_indices(subset)]
        sign, _ = wedge_normalize(places)  # pyright: ignore
        index = sum(1 << (n - 1 - t) for t in places)
        entries[(index, subset)] = sign
    return SparseExactMatrix.from_entries(entries, (2**n, 2**n))


def complex_action(c: ChainComplex) -> SuperRep:
    """Chain-level action on the whole complex, one exterior block per vertex."""
    reps = [exterior_action(res) for res in c.cube.resolutions]
    mats = {
        x: block_diagonal([rep.matrix(x) for rep in reps], c.offsets, c.size)
        for x in ("e", "f", "h_plus", "h_minus")
    }
    rep = SuperRep(
        parity=tuple(g.superdegree for g in c.generators),
        degrees=tuple(g.degrees for g in c.generators),
        m=c.m,
        name=c.diagram.name,
        **mats,
    )
    logger.debug("chain-level action on %r: %d generators", c.diagram.name, rep.dim)
    return rep


def vertex_classes(res: Resolution) -> List[str]:
    return ["E" if e else "T" for e in res.essential]
