"""
Representations of the Lie superalgebra gl(1|1).

The basis used throughout is {e, f, h1, h2} with e, f odd and h1, h2 even.
Representations store e, f, h_plus = h1 + h2 and h_minus = h1 - h2, the two
Cartan elements with the simplest description on annular chain groups: h_plus
is the scalar m (the winding parity) and h_minus reads off the k-degree.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from akh.utils.common import CheckReport
from akh.utils.matrices import SparseExactMatrix, block_diagonal

logger = logging.getLogger(__name__)

GENERATORS = ("e", "f", "h1", "h2")
PARITY = {"e": 1, "f": 1, "h1": 0, "h2": 0, "h_plus": 0, "h_minus": 0}

# Supercommutators of basis elements, written in the basis. Pairs missing here
# follow from [y, x] = -(-1)^{|x||y|} [x, y].
BRACKET_TABLE: Dict[Tuple[str, str], Dict[str, int]] = {
    ("e", "e"): {},
    ("f", "f"): {},
    ("e", "f"): {"h1": 1, "h2": 1},
    ("e", "h1"): {"e": -1},
    ("e", "h2"): {"e": 1},
    ("f", "h1"): {"f": 1},
    ("f", "h2"): {"f": -1},
    ("h1", "h1"): {},
    ("h1", "h2"): {},
    ("h2", "h2"): {},
}

Degree = Tuple[int, int, int]


def bracket_coefficients(x: str, y: str) -> Dict[str, int]:
    if (x, y) in BRACKET_TABLE:
        return BRACKET_TABLE[(x, y)]
    sign = -((-1) ** (PARITY[x] * PARITY[y]))
    return {z: sign * c for z, c in BRACKET_TABLE[(y, x)].items()}


@dataclass
class SuperRep:
    """Finite dimensional gl(1|1) representation in a chosen basis.

    Args:
        e, f, h_plus, h_minus: square exact matrices.
        parity: superdegree (0 or 1) of every basis vector.
        degrees: optional (i, j, k) tri-degree of every basis vector.
        m: optional scalar by which h_plus must act.
        name: label used in reports.
    """

    e: SparseExactMatrix
    f: SparseExactMatrix
    h_plus: SparseExactMatrix
    h_minus: SparseExactMatrix
    parity: Tuple[int, ...]
    degrees: Optional[Tuple[Degree, ...]] = None
    m: Optional[int] = None
    name: str = ""

    def __post_init__(self):
        n = len(self.parity)
        for x in ("e", "f", "h_plus", "h_minus"):
            assert getattr(self, x).shape == (n, n), f"{x} is not {n}x{n}"
        if self.degrees is not None:
            assert len(self.degrees) == n

    @classmethod
    def from_cartan(
        cls,
        e: SparseExactMatrix,
        f: SparseExactMatrix,
        h1: SparseExactMatrix,
        h2: SparseExactMatrix,
        parity: Sequence[int],
        **kwargs,
    ) -> SuperRep:
        return cls(e, f, h1 + h2, h1 - h2, tuple(parity), **kwargs)

    @property
    def dim(self) -> int:
        return len(self.parity)

    @property
    def h1(self) -> SparseExactMatrix:
        return (self.h_plus + self.h_minus).scale(Fraction(1, 2))

    @property
    def h2(self) -> SparseExactMatrix:
        return (self.h_plus - self.h_minus).scale(Fraction(1, 2))

    def matrix(self, x: str) -> SparseExactMatrix:
        if x not in PARITY:
            raise ValueError(f"Unknown gl(1|1) element {x}")
        return getattr(self, x)

    def to_dict(self) -> dict:
        def dense(mat: SparseExactMatrix) -> List[List[str]]:
            return [[str(mat[r, c]) for c in range(self.dim)] for r in range(self.dim)]

        return {
            "name": self.name,
            "dim": self.dim,
            "parity": list(self.parity),
            "degrees": [list(d) for d in self.degrees] if self.degrees else None,
            **{x: dense(self.matrix(x)) for x in ("e", "f", "h1", "h2")},
        }


def supercommutator(
    x: SparseExactMatrix, px: int, y: SparseExactMatrix, py: int
) -> SparseExactMatrix:
    product_ = y @ x
    if px * py % 2 == 0:
        return x @ y - product_
    return x @ y + product_


def verify_superalgebra(rep: SuperRep) -> CheckReport:
    """Checks every gl(1|1) relation on `rep`, reporting the first violation."""
    name = f"superalgebra {rep.name}".strip()
    mats = {x: rep.matrix(x) for x in GENERATORS}

    for x, y in product(GENERATORS, repeat=2):
        lhs = supercommutator(mats[x], PARITY[x], mats[y], PARITY[y])
        rhs = SparseExactMatrix.zeros((rep.dim, rep.dim))
        for z, c in bracket_coefficients(x, y).items():
            rhs = rhs + mats[z].scale(c)
        if lhs != rhs:
            return CheckReport.fail(name, f"[{x}, {y}] breaks the bracket table")

    for x in ("e", "f"):
        if not (mats[x] @ mats[x]).is_zero():
            return CheckReport.fail(name, f"{x}^2 != 0")

    for x in ("e", "f", "h_plus", "h_minus"):
        for r, c in rep.matrix(x).entries():
            if (rep.parity[r] + rep.parity[c]) % 2 != PARITY[x]:
                return CheckReport.fail(name, f"{x} has the wrong parity at ({r}, {c})")

    if rep.m is not None:
        if rep.h_plus != SparseExactMatrix.identity(rep.dim).scale(rep.m):
            return CheckReport.fail(name, f"h_plus is not {rep.m} * id")

    if rep.degrees is not None:
        weights = SparseExactMatrix.diagonal([k for _, _, k in rep.degrees])
        if rep.h_minus != weights:
            return CheckReport.fail(name, "h_minus differs from the k-degree")
        shifts = {"e": (0, 2, 2), "f": (0, -2, -2), "h_plus": (0, 0, 0)}
        for x, shift in shifts.items():
            for r, c in rep.matrix(x).entries():
                moved = tuple(a - b for a, b in zip(rep.degrees[r], rep.degrees[c]))
                if moved != shift:
                    return CheckReport.fail(
                        name, f"{x} moves degree {rep.degrees[c]} to {rep.degrees[r]}"
                    )
    return CheckReport.ok(name, dim=rep.dim)


def fundamental_rep(m: int, n: int) -> SuperRep:
    """The representation L(m, n) on span(v+, v-), one-dimensional if m + n = 0."""
    if m + n == 0:
        zero = SparseExactMatrix.zeros((1, 1))
        return SuperRep.from_cartan(
            zero,
            zero,
            SparseExactMatrix.diagonal([m]),
            SparseExactMatrix.diagonal([n]),
            parity=(n % 2,),
            degrees=((0, m - n, m - n),),
            m=m + n,
            name=f"L({m},{n})",
        )
    return SuperRep.from_cartan(
        SparseExactMatrix.from_entries({(0, 1): m + n}, (2, 2)),
        SparseExactMatrix.from_entries({(1, 0): 1}, (2, 2)),
        SparseExactMatrix.diagonal([m, m - 1]),
        SparseExactMatrix.diagonal([n, n + 1]),
        parity=(n % 2, (n + 1) % 2),
        degrees=((0, m - n, m - n), (0, m - n - 2, m - n - 2)),
        m=m + n,
        name=f"L({m},{n})",
    )


def trivial_rep(dim: int = 1, parity: int = 0) -> SuperRep:
    zero = SparseExactMatrix.zeros((dim, dim))
    return SuperRep(
        zero,
        zero,
        zero,
        zero,
        parity=(parity,) * dim,
        degrees=((0, 0, 0),) * dim,
        m=0,
        name="trivial",
    )


def direct_sum(reps: Sequence[SuperRep], name: str = "") -> SuperRep:
    """Block-diagonal sum of representations; degrees are kept when all have them."""
    offsets, size = [], 0
    for rep in reps:
        offsets.append(size)
        size += rep.dim
    mats = {
        x: block_diagonal([rep.matrix(x) for rep in reps], offsets, size)
        for x in ("e", "f", "h_plus", "h_minus")
    }
    degrees = None
    if all(rep.degrees is not None for rep in reps):
        degrees = tuple(d for rep in reps for d in rep.degrees)  # pyright: ignore
    ms = {rep.m for rep in reps}
    return SuperRep(
        parity=tuple(p for rep in reps for p in rep.parity),
        degrees=degrees,
        m=ms.pop() if len(ms) == 1 else None,
        name=name,
        **mats,
    )


# Fingerprints.
class WeightSpaceRanks(NamedTuple):
    k: int
    dim: int
    rank_e: int
    rank_f: int
    rank_ef: int
    rank_fe: int


RepFingerprint = Dict[Tuple[int, int], Tuple[WeightSpaceRanks, ...]]


def rep_fingerprint(rep: SuperRep) -> RepFingerprint:
    """Per sector (i, j - k), the dimension of every k-weight space together with
    the ranks of e, f, ef and fe restricted to it."""
    assert rep.degrees is not None, "Fingerprints need tri-degrees"
    everything = list(range(rep.dim))
    ef, fe = rep.e @ rep.f, rep.f @ rep.e

    spaces: Dict[Tuple[int, int], Dict[int, List[int]]] = {}
    for index, (i, j, k) in enumerate(rep.degrees):
        spaces.setdefault((i, j - k), {}).setdefault(k, []).append(index)

    fingerprint: RepFingerprint = {}
    for sector in sorted(spaces):
        rows = []
        for k, cols in sorted(spaces[sector].items()):
            rows.append(
                WeightSpaceRanks(
                    k,
                    len(cols),
                    rep.e.submatrix(everything, cols).rank(),
                    rep.f.submatrix(everything, cols).rank(),
                    ef.submatrix(everything, cols).rank(),
                    fe.submatrix(everything, cols).rank(),
                )
            )
        fingerprint[sector] = tuple(rows)
    return fingerprint
