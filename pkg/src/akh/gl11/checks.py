"""
Cross-checks between the exterior and tensor descriptions of the action, and
of the edge maps against the local multiplication and comultiplication.
"""

import logging
from typing import List, Tuple

import torch

from akh.algebra import ChainComplex, edge_map
from akh.cube import Cube, CubeEdge, Resolution
from akh.gl11.exterior import alpha_iso, complex_action, exterior_action, vertex_classes
from akh.gl11.superrep import (
    GENERATORS,
    SuperRep,
    fundamental_rep,
    trivial_rep,
    verify_superalgebra,
)
from akh.gl11.tensor import (
    COMULTIPLICATION,
    COUNIT,
    COUNIT_K0,
    FACTOR_REPS,
    INVARIANT_INCLUSION,
    INVARIANT_PROJECTION,
    LOCAL_DEGREE,
    MERGE_K0,
    MULTIPLICATION,
    SPLIT_K0,
    UNIT,
    UNIT_K0,
    dual_tensor_rep,
    factor_permutation,
    k_part,
    local_operator,
    tensor_action,
    tensor_factor_reps,
    tensor_maps,
    twist,
)
from akh.utils.common import CheckReport, merge_reports
from akh.utils.matrices import SparseExactMatrix

logger = logging.getLogger(__name__)

REFERENCE_WEIGHTS = ((1, 0), (0, -1), (2, 1), (1, -1))


def intertwines(
    phi: SparseExactMatrix, source: SuperRep, target: SuperRep, degree: int = 0
) -> bool:
    """phi x = (-1)^{|x||phi|} x phi for every basis element x."""
    for x in GENERATORS:
        left = phi @ source.matrix(x)
        right = target.matrix(x) @ phi
        if degree % 2 and x in ("e", "f"):
            right = -right
        if left != right:
            return False
    return True


def check_alpha_intertwines(res: Resolution) -> CheckReport:
    """alpha carries the exterior action to the tensor action."""
    name = f"alpha intertwines @{res.vertex}"
    alpha = alpha_iso(res)
    if not intertwines(alpha, exterior_action(res), tensor_action(res)):
        return CheckReport.fail(name, "exterior and tensor actions differ under alpha")
    return CheckReport.ok(name)


def working_orders(cube: Cube, edge: CubeEdge) -> Tuple[List[int], List[int], int]:
    """Source order, target order and local position making an edge local.

    A merge of source circles p < q into r keeps the target canonical and puts
    p, q side by side where r sits. A split of a parent into (tail, head)
    moves the head right after the tail and puts the parent where the tail sits.
    """
    r1 = cube.resolutions[edge.target]
    preimage = {t: s for s, t in enumerate(edge.carry) if t >= 0}
    if edge.kind == "merge":
        (merged,) = edge.targets
        target = list(range(r1.n_circles))
        source: List[int] = []
        for t in target:
            source.extend(edge.circles if t == merged else [preimage[t]])
        return source, target, merged
    tail, head = edge.targets
    target = [t for t in range(r1.n_circles) if t != head]
    position = target.index(tail)
    target.insert(position + 1, head)
    source = [edge.circles[0] if t == tail else preimage[t] for t in target if t != head]
    return source, target, position


def conjugated(cube: Cube, edge: CubeEdge, f: SparseExactMatrix) -> SparseExactMatrix:
    """alpha_target . f . alpha_source^{-1} in the working orders of `edge`."""
    source, target, _ = working_orders(cube, edge)
    a_source = alpha_iso(cube.resolutions[edge.source], source)
    a_target = alpha_iso(cube.resolutions[edge.target], target)
    # alpha is a signed permutation, so its inverse is its transpose.
    return a_target @ f @ a_source.T


def _local_name(edge: CubeEdge) -> str:
    return "m" if edge.kind == "merge" else "delta"


def check_edge_conjugation(cube: Cube, edge: CubeEdge) -> CheckReport:
    name = f"{edge.kind} {edge.source}->{edge.target}"
    _, target, position = working_orders(cube, edge)
    expected = local_operator(_local_name(edge), position, len(target))
    if conjugated(cube, edge, edge_map(cube, edge)) != SparseExactMatrix.from_tensor(
        expected
    ):
        return CheckReport.fail(name, "edge map is not a local m or delta after alpha")
    return CheckReport.ok(name)


def local_classes(cube: Cube, edge: CubeEdge) -> Tuple[str, str]:
    if edge.kind == "merge":
        classes = vertex_classes(cube.resolutions[edge.source])
        p, q = edge.circles
        return classes[p], classes[q]
    classes = vertex_classes(cube.resolutions[edge.target])
    tail, head = edge.targets
    return classes[tail], classes[head]


def k_parts(cube: Cube, edge: CubeEdge) -> Tuple[SparseExactMatrix, SparseExactMatrix]:
    """Splits an edge map into its k-preserving and k-lowering parts."""
    r0, r1 = cube.resolutions[edge.source], cube.resolutions[edge.target]
    preserving, lowering = {}, {}
    for (r, c), value in edge_map(cube, edge).entries().items():
        k_source = r0.n_essential - 2 * sum(
            1 for i in range(r0.n_circles) if (c >> i) & 1 and r0.essential[i]
        )
        k_target = r1.n_essential - 2 * sum(
            1 for i in range(r1.n_circles) if (r >> i) & 1 and r1.essential[i]
        )
        if k_target == k_source:
            preserving[(r, c)] = value
        else:
            assert k_target == k_source - 2, "Edge maps never raise k"
            lowering[(r, c)] = value
    shape = (2**r1.n_circles, 2**r0.n_circles)
    return (
        SparseExactMatrix.from_entries(preserving, shape),
        SparseExactMatrix.from_entries(lowering, shape),
    )


def check_k_parts(cube: Cube, edge: CubeEdge) -> CheckReport:
    """The k-preserving part of an edge map is id x m0 x id or id x delta0 x id."""
    name = f"k-parts {edge.kind} {edge.source}->{edge.target}"
    _, target, position = working_orders(cube, edge)
    table = MERGE_K0 if edge.kind == "merge" else SPLIT_K0
    local = table[local_classes(cube, edge)]
    full = local_operator(_local_name(edge), position, len(target))
    zero_part = local_operator(_local_name(edge), position, len(target), local)
    preserving, lowering = k_parts(cube, edge)
    if conjugated(cube, edge, preserving) != SparseExactMatrix.from_tensor(zero_part):
        return CheckReport.fail(name, "k-preserving part disagrees with the case table")
    if conjugated(cube, edge, lowering) != SparseExactMatrix.from_tensor(
        full - zero_part
    ):
        return CheckReport.fail(name, "k-lowering part disagrees with the case table")
    return CheckReport.ok(name)


def check_d0_intertwines(c: ChainComplex) -> CheckReport:
    """d0 commutes with e, f, h1 and h2 on the whole complex."""
    rep = complex_action(c)
    for x in GENERATORS:
        if c.d0 @ rep.matrix(x) != rep.matrix(x) @ c.d0:
            return CheckReport.fail("d0 intertwines", f"d0 does not commute with {x}")
    return CheckReport.ok("d0 intertwines")


# Koszul toolkit.
def check_twist() -> CheckReport:
    """tau^2 = id on graded pieces and tau intertwines V x W with W x V."""
    even, odd = FACTOR_REPS["even"], FACTOR_REPS["odd"]
    for p, q in (((0, 1), (0, 1)), ((0, 1, 1), (1, 0)), ((1,), (1, 0, 0))):
        identity = torch.eye(len(p) * len(q), dtype=torch.long)
        if not torch.equal(twist(q, p) @ twist(p, q), identity):
            return CheckReport.fail("twist", f"tau^2 != id for parities {p}, {q}")
    vw = tensor_factor_reps(even, odd)
    wv = tensor_factor_reps(odd, even)
    tau = twist(even.parity, odd.parity)
    for x in GENERATORS:
        if not torch.equal(tau @ vw.mats[x], wv.mats[x] @ tau):
            return CheckReport.fail("twist", f"tau does not intertwine {x}")
    return CheckReport.ok("twist")


def check_tensor_composition() -> CheckReport:
    """(f x g)(f' x g') = (-1)^{|g||f'|} (f f') x (g g') on homogeneous local maps."""
    plus_minus = (0, 1)
    maps = {
        "id": (torch.eye(2, dtype=torch.long), plus_minus, plus_minus, 0),
        "e": (FACTOR_REPS["even"].mats["e"], plus_minus, plus_minus, 1),
        "f": (FACTOR_REPS["odd"].mats["f"], plus_minus, plus_minus, 1),
        "unit": (UNIT, (0,), plus_minus, LOCAL_DEGREE["unit"]),
        "counit": (COUNIT, plus_minus, (0,), LOCAL_DEGREE["counit"]),
    }
    for a, (f, f_src, _, _) in maps.items():
        for b, (g, g_src, _, g_deg) in maps.items():
            for a2, (f2, f2_src, f2_tgt, f2_deg) in maps.items():
                for b2, (g2, g2_src, g2_tgt, g2_deg) in maps.items():
                    if f2_tgt != f_src or g2_tgt != g_src:
                        continue
                    lhs = tensor_maps(f, g, f_src, g_deg) @ tensor_maps(
                        f2, g2, f2_src, g2_deg
                    )
                    rhs = tensor_maps(f @ f2, g @ g2, f2_src, g_deg + g2_deg)
                    sign = (-1) ** (g_deg * f2_deg)
                    if not torch.equal(lhs, sign * rhs):
                        return CheckReport.fail(
                            "tensor composition", f"({a} x {b})({a2} x {b2})"
                        )
    return CheckReport.ok("tensor composition")


def check_factor_permutation(res: Resolution) -> CheckReport:
    """Reordering the tensor factors of alpha is conjugation by Koszul twists."""
    name = f"factor permutation @{res.vertex}"
    n = res.n_circles
    order = list(range(n))[::-1]
    expected = SparseExactMatrix.from_tensor(factor_permutation(order)) @ alpha_iso(res)
    if alpha_iso(res, order) != expected:
        return CheckReport.fail(name, "alpha in reversed order is not a twist of alpha")
    return CheckReport.ok(name)


def check_dual_maps() -> CheckReport:
    """The projection and inclusion between V x V*<1> and the trivial rep intertwine."""
    inclusion = SparseExactMatrix.from_tensor(INVARIANT_INCLUSION)
    projection = SparseExactMatrix.from_tensor(INVARIANT_PROJECTION)
    trivial = trivial_rep(1, parity=1)
    for dual_first in (True, False):
        pair = dual_tensor_rep(dual_first)
        if not intertwines(inclusion, trivial, pair):
            return CheckReport.fail("dual maps", f"inclusion into {pair.name}")
        if not intertwines(projection, pair, trivial):
            return CheckReport.fail("dual maps", f"projection from {pair.name}")
    if not torch.equal(INVARIANT_INCLUSION, SPLIT_K0[("E", "E")][:, :1]):
        return CheckReport.fail("dual maps", "inclusion is not delta0 on two essentials")
    if not torch.equal(INVARIANT_PROJECTION, MERGE_K0[("E", "E")][1:]):
        return CheckReport.fail("dual maps", "projection is not m0 on two essentials")
    return CheckReport.ok("dual maps")


def check_reference_reps() -> CheckReport:
    reps = [fundamental_rep(m, n) for m, n in REFERENCE_WEIGHTS]
    reps += [dual_tensor_rep(True), dual_tensor_rep(False)]
    return merge_reports("reference reps", (verify_superalgebra(rep) for rep in reps))


def check_vertex(res: Resolution) -> CheckReport:
    """Both descriptions at one vertex satisfy the relations and agree."""
    reports = [
        verify_superalgebra(exterior_action(res)),
        verify_superalgebra(exterior_action(res, "left")),
        verify_superalgebra(tensor_action(res)),
        check_alpha_intertwines(res),
        check_factor_permutation(res),
    ]
    return merge_reports(f"vertex {res.vertex}", reports)


def check_cube(cube: Cube) -> CheckReport:
    reports = [check_vertex(res) for res in cube.resolutions]
    for edge in cube.edges:
        reports.append(check_edge_conjugation(cube, edge))
        reports.append(check_k_parts(cube, edge))
    return merge_reports("cube", reports)


def check_complex_action(c: ChainComplex) -> CheckReport:
    return merge_reports(
        "chain-level action",
        [verify_superalgebra(complex_action(c)), check_d0_intertwines(c)],
    )


def check_toolkit() -> CheckReport:
    return merge_reports(
        "koszul toolkit",
        [
            check_twist(),
            check_tensor_composition(),
            check_dual_maps(),
            check_reference_reps(),
            _check_local_k_tables(),
        ],
    )


def _check_local_k_tables() -> CheckReport:
    """The case tables are the k-preserving parts of the local TQFT maps."""
    for (p, q), table in MERGE_K0.items():
        merged = "T" if (p, q) in (("T", "T"), ("E", "E")) else "E"
        if not torch.equal(k_part(MULTIPLICATION, [p, q], [merged]), table):
            return CheckReport.fail("k tables", f"m0 for {p}{q}")
    for (tail, head), table in SPLIT_K0.items():
        parent = "T" if (tail, head) in (("T", "T"), ("E", "E")) else "E"
        if not torch.equal(k_part(COMULTIPLICATION, [parent], [tail, head]), table):
            return CheckReport.fail("k tables", f"delta0 for {tail}{head}")
    for cls, table in UNIT_K0.items():
        if not torch.equal(k_part(UNIT, [], [cls]), table):
            return CheckReport.fail("k tables", f"unit0 for {cls}")
    for cls, table in COUNIT_K0.items():
        if not torch.equal(k_part(COUNIT, [cls], []), table):
            return CheckReport.fail("k tables", f"counit0 for {cls}")
    return CheckReport.ok("k tables")
