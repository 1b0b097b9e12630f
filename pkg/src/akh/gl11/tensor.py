"""
Tensor description of the chain groups.

Every circle contributes a factor span(v+, v-) with v+ even and v- odd, stored
as index 0 and 1. Tensor products use `torch.kron`, so the first factor is the
most significant digit of a basis index. Two Koszul conventions are in play:

- a tensor of maps acts by (f x g)(v x w) = (-1)^{|g||v|} f(v) x g(w),
- gl(1|1) acts on V x W by x(v x w) = (-1)^{|x||w|} x(v) x w + v x x(w).
"""

from __future__ import annotations

from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

import torch
from einops import rearrange

from akh.cube import Resolution
from akh.gl11.exterior import vertex_degrees
from akh.gl11.superrep import GENERATORS, PARITY, SuperRep
from akh.utils.matrices import SparseExactMatrix

V_PLUS, V_MINUS = 0, 1

# Local TQFT maps in the (v+, v-) basis; rows index targets.
MULTIPLICATION = torch.tensor([[1, 0, 0, 0], [0, 1, 1, 0]])
COMULTIPLICATION = torch.tensor([[0, 0], [-1, 0], [1, 0], [0, 1]])
UNIT = torch.tensor([[1], [0]])
COUNIT = torch.tensor([[0, 1]])
LOCAL_DEGREE = {"m": 0, "delta": 1, "unit": 0, "counit": 1}

# k-preserving parts m0 and delta0, keyed by the classes of the two circles on
# the many-circle side, in working order ("T" trivial, "E" essential).
MERGE_K0 = {
    ("T", "T"): MULTIPLICATION,
    ("T", "E"): torch.tensor([[1, 0, 0, 0], [0, 1, 0, 0]]),
    ("E", "T"): torch.tensor([[1, 0, 0, 0], [0, 0, 1, 0]]),
    ("E", "E"): torch.tensor([[0, 0, 0, 0], [0, 1, 1, 0]]),
}
SPLIT_K0 = {
    ("T", "T"): COMULTIPLICATION,
    ("T", "E"): torch.tensor([[0, 0], [0, 0], [1, 0], [0, 1]]),
    ("E", "T"): torch.tensor([[0, 0], [-1, 0], [0, 0], [0, 1]]),
    ("E", "E"): torch.tensor([[0, 0], [-1, 0], [1, 0], [0, 0]]),
}
# k-preserving parts of the unit and counit, keyed by the class of the circle
# they create or remove. Only a trivial circle keeps k.
UNIT_K0 = {"T": UNIT, "E": torch.zeros((2, 1), dtype=torch.long)}
COUNIT_K0 = {"T": COUNIT, "E": torch.zeros((1, 2), dtype=torch.long)}


class FactorRep(NamedTuple):
    """gl(1|1) action on a tensor of circle factors as dense integer matrices."""

    mats: Dict[str, torch.Tensor]  # e, f, h1, h2
    parity: Tuple[int, ...]


def _rep(e, f, h1, h2, parity=(0, 1)) -> FactorRep:
    mats = {"e": e, "f": f, "h1": h1, "h2": h2}
    return FactorRep({x: torch.tensor(m) for x, m in mats.items()}, tuple(parity))


FACTOR_REPS = {
    "trivial": _rep([[0, 0], [0, 0]], [[0, 0], [0, 0]], [[0, 0], [0, 0]], [[0, 0], [0, 0]]),
    # L(1,0), used at the essential circles 0, 2, 4, ... in proximity order.
    "even": _rep([[0, 1], [0, 0]], [[0, 0], [1, 0]], [[1, 0], [0, 0]], [[0, 0], [0, 1]]),
    # The dual V*<1>, used at the essential circles 1, 3, 5, ...
    "odd": _rep([[0, 1], [0, 0]], [[0, 0], [-1, 0]], [[0, 0], [0, -1]], [[-1, 0], [0, 0]]),
}


def parity_matrix(parity: Sequence[int], degree: int = 1) -> torch.Tensor:
    """Sign operator (-1)^{degree |v|}, the identity for even `degree`."""
    if degree % 2 == 0:
        return identity(len(parity))
    return torch.diag(torch.tensor([(-1) ** p for p in parity]))


def tensor_parity(*parities: Sequence[int]) -> Tuple[int, ...]:
    out: Tuple[int, ...] = (0,)
    for parity in parities:
        out = tuple((a + b) % 2 for a in out for b in parity)
    return out


def basis_parity(n: int) -> Tuple[int, ...]:
    return tensor_parity(*([(0, 1)] * n))


def tensor_maps(
    f: torch.Tensor, g: torch.Tensor, f_source: Sequence[int], g_degree: int
) -> torch.Tensor:
    """Signed tensor product f x g; `f_source` is the parity of f's domain."""
    return torch.kron(f @ parity_matrix(f_source, g_degree), g)


def twist(p: Sequence[int], q: Sequence[int]) -> torch.Tensor:
    """tau: V x W -> W x V, v x w -> (-1)^{|v||w|} w x v."""
    a, b = len(p), len(q)
    tau = torch.zeros((a * b, a * b), dtype=torch.long)
    for s in range(a):
        for t in range(b):
            tau[t * a + s, s * b + t] = (-1) ** (p[s] * q[t])
    return tau


def factor_permutation(order: Sequence[int]) -> torch.Tensor:
    """Koszul-signed reordering of n circle factors.

    Output factor t is input factor order[t]; passing two odd vectors past each
    other costs a sign.
    """
    n = len(order)
    assert sorted(order) == list(range(n))
    if n == 0:
        return identity(1)
    size = 2**n
    names = [f"x{i}" for i in range(n)]
    pattern = f"{' '.join(names)} col -> ({' '.join(names[i] for i in order)}) col"
    moved = rearrange(
        torch.eye(size, dtype=torch.long).reshape(*([2] * n), size), pattern
    )
    signs = torch.ones(size, dtype=torch.long)
    for index in range(size):
        digits = [(index >> (n - 1 - i)) & 1 for i in range(n)]
        crossings = sum(
            1
            for s in range(n)
            for t in range(s + 1, n)
            if order[s] > order[t] and digits[order[s]] and digits[order[t]]
        )
        signs[index] = (-1) ** crossings
    return moved * signs[None, :]


def identity(size: int) -> torch.Tensor:
    return torch.eye(size, dtype=torch.long)


def local_operator(
    name: str, position: int, n_target: int, local: Optional[torch.Tensor] = None
) -> torch.Tensor:
    """id^{position} x L x id^{rest} with the signed tensor rule.

    L is the multiplication ("m") or comultiplication ("delta") unless another
    matrix of the same shape is passed as `local`.
    """
    if name == "m":
        default, right = MULTIPLICATION, n_target - position - 1
    elif name == "delta":
        default, right = COMULTIPLICATION, n_target - position - 2
    else:
        raise ValueError(f"Unknown local map {name}")
    assert position >= 0 and right >= 0, "Local map does not fit"
    local = default if local is None else local
    signed_left = parity_matrix(basis_parity(position), LOCAL_DEGREE[name])
    return torch.kron(torch.kron(signed_left, local), identity(2**right))


def weight_vector(classes: Sequence[str]) -> List[int]:
    """k-weight of every basis vector of a tensor of circle factors."""
    weights = [0]
    for c in classes:
        plus, minus = (1, -1) if c == "E" else (0, 0)
        weights = [w + d for w in weights for d in (plus, minus)]
    return weights


def k_part(
    op: torch.Tensor, source: Sequence[str], target: Sequence[str], shift: int = 0
) -> torch.Tensor:
    """Entries of `op` moving the k-weight by exactly `shift`."""
    ws, wt = torch.tensor(weight_vector(source)), torch.tensor(weight_vector(target))
    mask = (wt[:, None] - ws[None, :]) == shift
    return op * mask


def tensor_factor_reps(a: FactorRep, b: FactorRep) -> FactorRep:
    mats = {}
    for x in GENERATORS:
        left = torch.kron(a.mats[x], parity_matrix(b.parity, PARITY[x]))
        mats[x] = left + torch.kron(identity(len(a.parity)), b.mats[x])
    return FactorRep(mats, tensor_parity(a.parity, b.parity))


def tensor_rep(factors: Sequence[FactorRep]) -> FactorRep:
    out = FactorRep({x: torch.zeros((1, 1), dtype=torch.long) for x in GENERATORS}, (0,))
    for factor in factors:
        out = tensor_factor_reps(out, factor)
    return out


def to_superrep(rep: FactorRep, **kwargs) -> SuperRep:
    mats = {x: SparseExactMatrix.from_tensor(rep.mats[x]) for x in GENERATORS}
    return SuperRep.from_cartan(parity=rep.parity, **mats, **kwargs)


def factor_kinds(res: Resolution) -> List[str]:
    kinds, t = [], 0
    for essential in res.essential:
        if essential:
            kinds.append("even" if t % 2 == 0 else "odd")
            t += 1
        else:
            kinds.append("trivial")
    return kinds


def tensor_subset(index: int, n: int) -> int:
    """Wedge bitmask whose tensor image is the basis vector `index`."""
    return sum(1 << i for i in range(n) if (index >> (n - 1 - i)) & 1)


def tensor_action(res: Resolution) -> SuperRep:
    """gl(1|1) action on the tensor description of the chain group at `res`.

    Trivial circles carry the zero action and essential circles alternate
    between L(1,0) and its dual, starting from the one nearest the inner
    basepoint.
    """
    rep = tensor_rep([FACTOR_REPS[kind] for kind in factor_kinds(res)])
    n = res.n_circles
    degrees = tuple(vertex_degrees(res, tensor_subset(i, n)) for i in range(2**n))
    return to_superrep(
        rep, degrees=degrees, m=res.n_essential % 2, name=f"tensor@{res.vertex}"
    )


# Reference pair V x V*<1> and V*<1> x V with the invariant vector
# v- x v+ - v+ x v- and the projection onto it.
INVARIANT_INCLUSION = torch.tensor([[0], [-1], [1], [0]])
INVARIANT_PROJECTION = torch.tensor([[0, 1, 1, 0]])


def dual_tensor_rep(dual_first: bool = True) -> SuperRep:
    """V*<1> x V (or V x V*<1>) as a representation with tri-degrees (0, k, k)."""
    pair = ("odd", "even") if dual_first else ("even", "odd")
    rep = tensor_rep([FACTOR_REPS[kind] for kind in pair])
    weights = weight_vector(["E", "E"])
    return to_superrep(
        rep,
        degrees=tuple((0, k, k) for k in weights),
        m=0,
        name="V*<1> x V" if dual_first else "V x V*<1>",
    )
