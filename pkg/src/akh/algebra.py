"""
Exterior-algebra chain groups, merge and split maps, tri-gradings, the odd
annular differential and its homology.

At a vertex with circles a_1, ..., a_n (canonical order) the chain group is
the exterior algebra on the a_i. A wedge a_S is stored as the bitmask of S,
with its factors written in increasing canonical order.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Literal, NamedTuple, Optional, Sequence, Tuple

from akh.cube import Cube, CubeEdge, EdgeAssignment, Resolution, edge_assignment
from akh.diagram import AnnularDiagram, DiagramStats, crossing_signs, winding_parity
from akh.utils.common import (
    CheckReport,
    ComputeConfig,
    InvariantViolationError,
    merge_reports,
    parallel_map,
)
from akh.utils.matrices import SparseExactMatrix, Vector

logger = logging.getLogger(__name__)

Which = Literal["d0", "d"]
BlockKey = Tuple[int, ...]


def subset_indices(subset: int) -> List[int]:
    return [i for i in range(subset.bit_length()) if (subset >> i) & 1]


def wedge_normalize(factors: Sequence[int]) -> Optional[Tuple[int, int]]:
    """Sorts a wedge of generators into canonical order.

    Returns (sign, bitmask), or None when a generator repeats (a ^ a = 0).
    """
    if len(set(factors)) != len(factors):
        return None
    inversions = sum(
        1
        for x in range(len(factors))
        for y in range(x + 1, len(factors))
        if factors[x] > factors[y]
    )
    bitmask = 0
    for i in factors:
        bitmask |= 1 << i
    return (-1 if inversions % 2 else 1), bitmask


def merge_map(r0: Resolution, r1: Resolution, edge: CubeEdge) -> SparseExactMatrix:
    """F_M: both merging circles are identified with the merged one."""
    assert edge.kind == "merge", "merge_map needs a merge edge"
    assert r0.vertex == edge.source and r1.vertex == edge.target
    (merged,) = edge.targets
    entries = {}
    for subset in range(2**r0.n_circles):
        image = [
            merged if i in edge.circles else edge.carry[i]
            for i in subset_indices(subset)
        ]
        assert all(x >= 0 for x in image), "Circle bookkeeping mismatch"
        normalized = wedge_normalize(image)
        if normalized is not None:
            sign, target = normalized
            entries[(target, subset)] = sign
    return SparseExactMatrix.from_entries(
        entries, (2**r1.n_circles, 2**r0.n_circles)
    )


def split_map(r0: Resolution, r1: Resolution, edge: CubeEdge) -> SparseExactMatrix:
    """F_Delta: substitute the parent by the tail, then wedge (tail - head) on the left."""
    assert edge.kind == "split", "split_map needs a split edge"
    assert r0.vertex == edge.source and r1.vertex == edge.target
    (parent,) = edge.circles
    tail, head = edge.targets
    entries: Dict[Tuple[int, int], int] = {}
    for subset in range(2**r0.n_circles):
        image = [tail if i == parent else edge.carry[i] for i in subset_indices(subset)]
        assert all(x >= 0 for x in image), "Circle bookkeeping mismatch"
        for front, coefficient in ((tail, 1), (head, -1)):
            normalized = wedge_normalize([front] + image)
            if normalized is not None:
                sign, target = normalized
                key = (target, subset)
                entries[key] = entries.get(key, 0) + coefficient * sign
    return SparseExactMatrix.from_entries(
        entries, (2**r1.n_circles, 2**r0.n_circles)
    )


def edge_map(cube: Cube, edge: CubeEdge) -> SparseExactMatrix:
    """Unsigned merge or split map of a cube edge, cached on the cube."""
    key = (edge.source, edge.crossing)
    if key not in cube.map_cache:
        r0, r1 = cube.resolutions[edge.source], cube.resolutions[edge.target]
        build = merge_map if edge.kind == "merge" else split_map
        cube.map_cache[key] = build(r0, r1, edge)
    return cube.map_cache[key]


class Generator(NamedTuple):
    vertex: int
    subset: int
    i: int
    j: int
    k: int
    superdegree: int

    @property
    def degrees(self) -> Tuple[int, int, int]:
        return self.i, self.j, self.k


def trigrading(res: Resolution, subset: int, stats: DiagramStats) -> Tuple[int, int, int]:
    """(i, j, k) of the wedge a_subset at the vertex of `res`."""
    height = res.height
    ell = bin(subset).count("1")
    ell_e = sum(1 for i in subset_indices(subset) if res.essential[i])
    i = height - stats.n_minus
    j = res.n_circles - 2 * ell + height + stats.n_plus - 2 * stats.n_minus
    k = res.n_essential - 2 * ell_e
    return i, j, k


def superdegree(
    j: int, k: int, stats: DiagramStats, m: int, supergrading: str = "default"
) -> int:
    if supergrading == "default":
        assert (j - stats.num_components) % 2 == 0, "j and |L| differ in parity"
        return ((j - stats.num_components) // 2) % 2
    elif supergrading == "kshift":
        assert (k - m) % 2 == 0, "k and the winding parity differ in parity"
        return ((k - m) // 2) % 2
    else:
        raise ValueError(f"Unknown supergrading {supergrading}")


class ChainComplex:
    """The odd annular complex with d = d0 + d_minus.

    Generators are listed vertex by vertex, and within a vertex by subset
    bitmask, so `offsets[v] + subset` is the global index of a_subset at v.
    """

    def __init__(
        self,
        diagram: AnnularDiagram,
        cube: Cube,
        assignment: EdgeAssignment,
        config: ComputeConfig,
    ):
        self.diagram = diagram
        self.cube = cube
        self.assignment = assignment
        self.config = config
        self.stats = crossing_signs(diagram)
        self.m = winding_parity(diagram)

        self.offsets: List[int] = []
        self.generators: List[Generator] = []
        for res in cube.resolutions:
            self.offsets.append(len(self.generators))
            for subset in range(2**res.n_circles):
                i, j, k = trigrading(res, subset, self.stats)
                s = superdegree(j, k, self.stats, self.m, config.supergrading)
                self.generators.append(Generator(res.vertex, subset, i, j, k, s))

        self.d = self._assemble()
        self.d0, self.d_minus = self._split_by_k(self.d)

    @property
    def size(self) -> int:
        return len(self.generators)

    def _assemble(self) -> SparseExactMatrix:
        entries: Dict[Tuple[int, int], int] = {}
        for edge in self.cube.edges:
            sign = self.assignment.sign(self.cube, edge)
            row0, col0 = self.offsets[edge.target], self.offsets[edge.source]
            for (r, c), value in edge_map(self.cube, edge).entries().items():
                entries[(row0 + r, col0 + c)] = sign * int(value)
        return SparseExactMatrix.from_entries(entries, (self.size, self.size))

    def _split_by_k(self, d: SparseExactMatrix):
        preserving, lowering = {}, {}
        for (r, c), value in d.entries().items():
            shift = self.generators[r].k - self.generators[c].k
            if shift == 0:
                preserving[(r, c)] = value
            elif shift == -2:
                lowering[(r, c)] = value
            else:
                raise InvariantViolationError(
                    f"Differential entry ({r}, {c}) shifts k by {shift}"
                )
        shape = (self.size, self.size)
        return (
            SparseExactMatrix.from_entries(preserving, shape),
            SparseExactMatrix.from_entries(lowering, shape),
        )

    def differential(self, which: Which) -> SparseExactMatrix:
        if which == "d0":
            return self.d0
        elif which == "d":
            return self.d
        else:
            raise ValueError(f"Unknown differential {which}")

    def block_key(self, g: Generator, which: Which) -> BlockKey:
        return (g.i, g.j, g.k) if which == "d0" else (g.i, g.j)

    def blocks(self, which: Which) -> Dict[BlockKey, List[int]]:
        """Generator indices grouped by the gradings `which` preserves."""
        groups: Dict[BlockKey, List[int]] = {}
        for index, g in enumerate(self.generators):
            groups.setdefault(self.block_key(g, which), []).append(index)
        return dict(sorted(groups.items()))


def build_complex(
    d: AnnularDiagram, config: Optional[ComputeConfig] = None
) -> ChainComplex:
    config = config or ComputeConfig()
    cube = Cube(d, config)
    assignment = edge_assignment(cube, edge_map, config.free_sign)
    complex_ = ChainComplex(d, cube, assignment, config)
    if not (complex_.d @ complex_.d).is_zero():
        raise InvariantViolationError(f"d^2 != 0 on {d.name!r}")
    logger.info(
        "built complex of %r: %d generators, %d nonzero entries",
        d.name,
        complex_.size,
        complex_.d.nnz,
    )
    return complex_


def check_differentials(c: ChainComplex) -> CheckReport:
    """d^2 = d0^2 = d_minus^2 = d0 d_minus + d_minus d0 = 0 and degree shifts."""
    identities = {
        "d^2": c.d @ c.d,
        "d0^2": c.d0 @ c.d0,
        "d_minus^2": c.d_minus @ c.d_minus,
        "d0 d_minus + d_minus d0": c.d0 @ c.d_minus + c.d_minus @ c.d0,
    }
    for name, product in identities.items():
        if not product.is_zero():
            return CheckReport.fail("differentials", f"{name} != 0")
    if not c.d0 + c.d_minus == c.d:
        return CheckReport.fail("differentials", "d != d0 + d_minus")
    for r, col in c.d.entries():
        target, source = c.generators[r], c.generators[col]
        if target.i != source.i + 1 or target.j != source.j:
            return CheckReport.fail(
                "differentials", f"entry ({r}, {col}) has bad (i, j) shift"
            )
        if target.k - source.k not in (0, -2):
            return CheckReport.fail("differentials", f"entry ({r}, {col}) shifts k")
    return CheckReport.ok("differentials", nnz=c.d.nnz)


def check_edge_ranks(c: ChainComplex) -> CheckReport:
    """Merge maps are surjective and split maps injective."""
    reports = []
    for edge in c.cube.edges:
        f = edge_map(c.cube, edge)
        expected = f.shape[0] if edge.kind == "merge" else f.shape[1]
        name = f"{edge.kind} {edge.source}->{edge.target}"
        if f.rank() != expected:
            reports.append(CheckReport.fail(name, f"rank {f.rank()} != {expected}"))
        else:
            reports.append(CheckReport.ok(name))
    return merge_reports("edge ranks", reports)


# Homology.
@dataclass
class HomologyBlock:
    key: BlockKey
    generators: List[int]
    boundaries: List[Vector]  # image of the incoming differential, global indices
    representatives: List[Vector]  # basis of a complement of the image in the kernel
    torsion: List[int] = field(default_factory=list)

    @property
    def dimension(self) -> int:
        return len(self.representatives)


@dataclass
class HomologyResult:
    which: Which
    blocks: Dict[BlockKey, HomologyBlock]

    @property
    def dims(self) -> Dict[BlockKey, int]:
        return {
            key: block.dimension
            for key, block in self.blocks.items()
            if block.dimension > 0
        }

    @property
    def torsion(self) -> Dict[BlockKey, List[int]]:
        return {key: b.torsion for key, b in self.blocks.items() if b.torsion}

    def poincare(self) -> str:
        """Poincare polynomial in t (homological), q (quantum) and a (annular)."""
        terms = []
        for key, dim in sorted(self.dims.items(), reverse=True):
            monomial = " ".join(
                f"{var}^{power}" for var, power in zip(("t", "q", "a"), key)
            )
            terms.append(monomial if dim == 1 else f"{dim} {monomial}")
        return " + ".join(terms) if terms else "0"


def _block_homology(
    c: ChainComplex,
    which: Which,
    key: BlockKey,
    groups: Dict[BlockKey, List[int]],
) -> HomologyBlock:
    d = c.differential(which)
    cols = groups[key]
    previous = groups.get((key[0] - 1,) + key[1:], [])
    following = groups.get((key[0] + 1,) + key[1:], [])

    outgoing = d.submatrix(following, cols)
    incoming = d.submatrix(cols, previous)
    cycles = outgoing.kernel()
    boundaries = [col for _, col in sorted(incoming.columns().items())]

    stacked = SparseExactMatrix.from_columns(boundaries + cycles, len(cols))
    _, pivots = stacked.rref()
    representatives = [cycles[p - len(boundaries)] for p in pivots if p >= len(boundaries)]

    torsion = []
    if c.config.coeff == "integral":
        torsion = block_torsion(c, which, key, groups)

    def globalize(vector) -> Vector:
        return {cols[a]: Fraction(v) for a, v in vector.items()}

    return HomologyBlock(
        key=key,
        generators=cols,
        boundaries=[globalize(b) for b in boundaries],
        representatives=[globalize(r) for r in representatives],
        torsion=torsion,
    )


def block_torsion(
    c: ChainComplex,
    which: Which,
    key: BlockKey,
    groups: Optional[Dict[BlockKey, List[int]]] = None,
) -> List[int]:
    """Invariant factors greater than 1 of the differential into block `key`."""
    groups = c.blocks(which) if groups is None else groups
    previous = groups.get((key[0] - 1,) + key[1:], [])
    if key not in groups or not previous:
        return []
    incoming = c.differential(which).submatrix(groups[key], previous)
    return [f for f in incoming.invariant_factors() if f > 1]


def homology(c: ChainComplex, which: Which = "d0") -> HomologyResult:
    """Homology of d0 (keys (i, j, k)) or of the full d (keys (i, j))."""
    groups = c.blocks(which)
    blocks = parallel_map(
        lambda key: _block_homology(c, which, key, groups),
        list(groups),
        c.config.parallel,
    )
    result = HomologyResult(which, {b.key: b for b in blocks})
    logger.info("homology(%s) of %r: %s", which, c.diagram.name, result.poincare())
    return result


def solve_in_block(
    block: HomologyBlock, vectors: Sequence[Vector]
) -> List[Dict[int, Fraction]]:
    """Coordinates of kernel vectors along the representatives, modulo boundaries.

    Returns one {representative index: coefficient} dict per input vector and
    raises when a vector is not a cycle of the block.
    """
    local = {g: a for a, g in enumerate(block.generators)}
    n_b, n_r = len(block.boundaries), len(block.representatives)

    def localize(vector: Vector) -> Dict[int, Fraction]:
        assert all(g in local for g in vector), "Vector leaves the block"
        return {local[g]: v for g, v in vector.items()}

    columns = [localize(v) for v in list(block.boundaries) + list(block.representatives)]
    columns += [localize(v) for v in vectors]
    reduced, pivots = SparseExactMatrix.from_columns(
        columns, len(block.generators)
    ).rref()
    if any(p >= n_b + n_r for p in pivots):
        raise InvariantViolationError(f"A vector in block {block.key} is not a cycle")
    pivot_rows = {p: r for r, p in enumerate(pivots)}
    out = []
    for t in range(len(vectors)):
        coords = {}
        for rep in range(n_r):
            row = reduced.get(pivot_rows[n_b + rep], {})
            value = row.get(n_b + n_r + t, 0)
            if value != 0:
                coords[rep] = Fraction(value)
        out.append(coords)
    return out

