import logging
from typing import Dict, List, Optional, Tuple

from akh.algebra import BlockKey, ChainComplex, HomologyResult, homology, solve_in_block
from akh.gl11.exterior import complex_action
from akh.gl11.superrep import SuperRep
from akh.utils.common import InvariantViolationError
from akh.utils.matrices import SparseExactMatrix

logger = logging.getLogger(__name__)


def action_on_homology(
    c: ChainComplex, result: Optional[HomologyResult] = None
) -> SuperRep:
    """Induced action on the homology of d0.

    The basis is the list of representatives of every (i, j, k) block, blocks
    taken in increasing order. Images are projected back along the boundaries;
    an element sent by the action outside the boundaries of its target block
    raises InvariantViolationError, since the result would then depend on the
    choice of representatives.
    """
    result = result or homology(c, "d0")
    if result.which != "d0":
        raise ValueError(f"The action lives on d0-homology, got {result.which}")
    chain = complex_action(c)

    basis: Dict[Tuple[BlockKey, int], int] = {}
    parity: List[int] = []
    degrees = []
    for key, block in result.blocks.items():
        for r in range(block.dimension):
            basis[(key, r)] = len(basis)
            parity.append(c.generators[block.generators[0]].superdegree)
            degrees.append(key)

    mats = {}
    for x in ("e", "f", "h_plus", "h_minus"):
        matrix = chain.matrix(x)
        entries = {}
        for key, block in result.blocks.items():
            images = [matrix.apply(v) for v in block.representatives]
            moved = [matrix.apply(v) for v in block.boundaries]
            nonzero = [w for w in images + moved if w]
            if not nonzero:
                continue
            target_key = c.block_key(c.generators[next(iter(nonzero[0]))], "d0")
            target = result.blocks[target_key]
            coords = solve_in_block(target, images + moved)
            for r, coord in enumerate(coords[: len(images)]):
                for s, value in coord.items():
                    entries[(basis[(target_key, s)], basis[(key, r)])] = value
            if any(coords[len(images) :]):
                raise InvariantViolationError(
                    f"{x} maps boundaries of block {key} outside the boundaries"
                )
        mats[x] = SparseExactMatrix.from_entries(entries, (len(basis), len(basis)))

    rep = SuperRep(
        parity=tuple(parity),
        degrees=tuple(degrees),  # pyright: ignore
        m=c.m,
        name=f"AKh({c.diagram.name})",
        **mats,
    )
    logger.info("action on homology of %r: dimension %d", c.diagram.name, rep.dim)
    return rep
