"""
The cube of resolutions: smoothings, circle tracing and classification,
merge/split edges with their arrows, and the edge-sign solve.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, Literal, NamedTuple, Optional, Tuple

import numpy as np

from akh.diagram import AnnularDiagram, InvalidDiagramError
from akh.utils.common import ComputeConfig, InvariantViolationError, parallel_map
from akh.utils.gf2 import gf2_solve
from akh.utils.matrices import SparseExactMatrix

logger = logging.getLogger(__name__)

# Position pairs joined by the 0- and 1-smoothing of a crossing [a, b, c, d].
SMOOTHINGS = {0: ((0, 1), (2, 3)), 1: ((0, 3), (1, 2))}


class Circle(NamedTuple):
    """A state circle as a cyclic list of (edge, direction) steps."""

    steps: Tuple[Tuple[int, int], ...]
    winding: int  # algebraic intersection with gamma
    first_gamma: Optional[int]  # index along gamma of the first intersection

    @property
    def essential(self) -> bool:
        return self.winding != 0

    @property
    def edges(self) -> Tuple[int, ...]:
        return tuple(edge for edge, _ in self.steps)


@dataclass(frozen=True)
class Resolution:
    """Complete smoothing at a cube vertex, circles in canonical order.

    Trivial circles come first in discovery order, then essential circles by
    proximity to X (the order of their first crossing with gamma).
    """

    vertex: int
    circles: Tuple[Circle, ...]
    order: Tuple[int, ...]  # canonical position -> discovery index

    @property
    def n_circles(self) -> int:
        return len(self.circles)

    @property
    def essential(self) -> Tuple[bool, ...]:
        return tuple(c.essential for c in self.circles)

    @property
    def n_essential(self) -> int:
        return sum(self.essential)

    @property
    def n_trivial(self) -> int:
        return self.n_circles - self.n_essential

    @property
    def height(self) -> int:
        return bin(self.vertex).count("1")

    def circle_of(self, edge: int) -> int:
        for index, circle in enumerate(self.circles):
            if edge in circle.edges:
                return index
        raise KeyError(f"Edge {edge} lies on no circle of vertex {self.vertex}")


class CubeEdge(NamedTuple):
    source: int
    target: int
    crossing: int
    kind: Literal["merge", "split"]
    circles: Tuple[int, ...]  # merge: the two source circles; split: the parent
    targets: Tuple[int, ...]  # merge: the merged circle; split: (tail, head)
    carry: Tuple[int, ...]  # target index of every uninvolved source circle, else -1


@dataclass(frozen=True)
class EdgeAssignment:
    signs: Tuple[int, ...]  # indexed like Cube.edges

    def sign(self, cube: Cube, edge: CubeEdge) -> int:
        return self.signs[cube.edge_index[(edge.source, edge.crossing)]]


def _trace(d: AnnularDiagram, vertex: int) -> List[Circle]:
    partner: Dict[Tuple[int, int], Tuple[int, int]] = {}
    for k in range(d.n_crossings):
        for p, q in SMOOTHINGS[(vertex >> k) & 1]:
            partner[(k, p)] = (k, q)
            partner[(k, q)] = (k, p)

    on_gamma = d.gamma_crossings()
    circles = []
    seen = set()
    for start in d.edges:
        if start in seen:
            continue
        steps = []
        edge, direction = start, 1
        while True:
            steps.append((edge, direction))
            seen.add(edge)
            if edge in d.loops:
                break
            k, p = d.heads[edge] if direction > 0 else d.tails[edge]
            k, q = partner[(k, p)]
            edge = d.crossings[k][q]
            direction = 1 if d.tails[edge] == (k, q) else -1
            if edge == start:
                break
            if len(steps) > len(d.edges):
                raise InvalidDiagramError(f"Arc through edge {start} does not close up")
        winding = sum(
            direction * sign
            for edge, direction in steps
            for _, sign in on_gamma.get(edge, [])
        )
        if abs(winding) > 1:
            raise InvalidDiagramError(
                f"Circle through edge {start} meets gamma {winding} times algebraically"
            )
        indices = [i for edge, _ in steps for i, _ in on_gamma.get(edge, [])]
        circles.append(Circle(tuple(steps), winding, min(indices, default=None)))
    return circles


def resolve(d: AnnularDiagram, vertex: int) -> Resolution:
    """Smooths every crossing according to the bits of `vertex`."""
    assert 0 <= vertex < 2**d.n_crossings, f"Vertex {vertex} outside the cube"
    traced = _trace(d, vertex)
    trivial = [i for i, c in enumerate(traced) if not c.essential]
    essential = sorted(
        (i for i, c in enumerate(traced) if c.essential),
        key=lambda i: traced[i].first_gamma,  # pyright: ignore
    )
    order = tuple(trivial + essential)
    return Resolution(vertex, tuple(traced[i] for i in order), order)


def proximity_order(res: Resolution) -> Tuple[int, ...]:
    """Permutation taking canonical positions to circle-tracing positions."""
    return res.order


class Cube:
    """All resolutions of a diagram and the oriented edges between them."""

    def __init__(self, d: AnnularDiagram, config: Optional[ComputeConfig] = None):
        config = config or ComputeConfig()
        self.diagram = d
        self.n = d.n_crossings
        self.resolutions: List[Resolution] = parallel_map(
            lambda v: resolve(d, v), range(2**self.n), config.parallel
        )
        self.edges: List[CubeEdge] = [
            self._make_edge(v, k)
            for v in range(2**self.n)
            for k in range(self.n)
            if not (v >> k) & 1
        ]
        self.edge_index = {(e.source, e.crossing): i for i, e in enumerate(self.edges)}
        self.map_cache: Dict[Tuple[int, int], SparseExactMatrix] = {}
        logger.debug(
            "cube of %r: %d vertices, %d edges",
            d.name,
            len(self.resolutions),
            len(self.edges),
        )

    def _make_edge(self, source: int, k: int) -> CubeEdge:
        target = source | (1 << k)
        r0, r1 = self.resolutions[source], self.resolutions[target]
        a, b, c, _ = self.diagram.crossings[k]
        carry = [r1.circle_of(circle.edges[0]) for circle in r0.circles]
        first, second = r0.circle_of(a), r0.circle_of(c)
        if first != second:
            assert r1.n_circles == r0.n_circles - 1, "Merge must lose one circle"
            involved = tuple(sorted((first, second)))
            for i in involved:
                carry[i] = -1
            return CubeEdge(
                source, target, k, "merge", involved, (r1.circle_of(a),), tuple(carry)
            )
        assert r1.n_circles == r0.n_circles + 1, "Split must gain one circle"
        carry[first] = -1
        left, right = r1.circle_of(a), r1.circle_of(b)
        assert left != right
        arrow = (left, right) if self.diagram.arrows[k] == "U" else (right, left)
        return CubeEdge(source, target, k, "split", (first,), arrow, tuple(carry))

    def faces(self) -> List[Tuple[int, int, int]]:
        """Square faces as (vertex, first crossing, second crossing)."""
        return [
            (v, k1, k2)
            for v in range(2**self.n)
            for k1 in range(self.n)
            for k2 in range(k1 + 1, self.n)
            if not (v >> k1) & 1 and not (v >> k2) & 1
        ]

    def edge(self, source: int, k: int) -> CubeEdge:
        return self.edges[self.edge_index[(source, k)]]

    def dump(self, assignment: Optional[EdgeAssignment] = None) -> dict:
        """Structured debug view of the cube."""
        vertices = []
        for res in self.resolutions:
            vertices.append(
                {
                    "vertex": format(res.vertex, f"0{self.n}b")[::-1] if self.n else "",
                    "circles": [list(c.edges) for c in res.circles],
                    "classes": ["essential" if e else "trivial" for e in res.essential],
                    "order": list(res.order),
                }
            )
        edges = []
        for i, e in enumerate(self.edges):
            record = {
                "source": e.source,
                "target": e.target,
                "crossing": e.crossing,
                "kind": e.kind,
                "circles": list(e.circles),
                "targets": list(e.targets),
            }
            if assignment is not None:
                record["sign"] = assignment.signs[i]
            edges.append(record)
        return {"name": self.diagram.name, "vertices": vertices, "edges": edges}


def split_arrow(cube: Cube, edge: CubeEdge) -> Tuple[int, int]:
    """Tail and head circles (target indices) of a split edge."""
    if edge.kind != "split":
        raise ValueError(f"Edge {edge.source}->{edge.target} is a merge, it has no arrow")
    tail, head = edge.targets
    return tail, head


def edge_assignment(
    cube: Cube,
    edge_map: Callable[[Cube, CubeEdge], SparseExactMatrix],
    free_sign: int = 1,
) -> EdgeAssignment:
    """Solves for edge signs making every square face anticommute.

    A face whose two unsigned composites agree needs an odd number of negative
    edges, one whose composites are opposite needs an even number, and a face
    with both composites zero is unconstrained. The parity system is solved
    over GF(2); free variables take `free_sign`.
    """
    rows: List[np.ndarray] = []
    rhs: List[int] = []
    for v, k1, k2 in cube.faces():
        path = [
            cube.edge(v, k1),
            cube.edge(v | (1 << k1), k2),
            cube.edge(v, k2),
            cube.edge(v | (1 << k2), k1),
        ]
        first = edge_map(cube, path[1]) @ edge_map(cube, path[0])
        second = edge_map(cube, path[3]) @ edge_map(cube, path[2])
        if first.is_zero() and second.is_zero():
            continue
        if first == second:
            parity = 1
        elif first == -second:
            parity = 0
        else:
            raise InvariantViolationError(
                f"Face ({v}, {k1}, {k2}) composites differ by more than a sign"
            )
        row = np.zeros(len(cube.edges), dtype=np.uint8)
        for e in path:
            row[cube.edge_index[(e.source, e.crossing)]] = 1
        rows.append(row)
        rhs.append(parity)

    if rows:
        system = np.stack(rows)
    else:
        system = np.zeros((0, len(cube.edges)), dtype=np.uint8)
    solution = gf2_solve(system, np.array(rhs, dtype=np.uint8), int(free_sign < 0))
    if solution is None:
        raise InvariantViolationError("Edge-sign system is inconsistent")
    logger.debug("edge signs: %d constraints on %d edges", len(rows), len(cube.edges))
    return EdgeAssignment(tuple(-1 if x else 1 for x in solution.tolist()))
