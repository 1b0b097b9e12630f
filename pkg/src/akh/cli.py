"""
Command line front end.

    akh resolve  DIAGRAM      cube of resolutions with edge kinds and signs
    akh homology DIAGRAM      trigraded d0-homology (--full: homology of d)
    akh action   DIAGRAM      gl(1|1) action on d0-homology and its fingerprint
    akh oracle   DIAGRAM      even annular homology over GF(2)
    akh check    DIAGRAM      every invariant check on one diagram
    akh compare  DIAGRAM DIAGRAM

DIAGRAM is a file path or the name of a bundled diagram (`d_e`, `corpus/d_e`).
Exit codes: 0 success, 1 invariant violation or failed check, 2 input error.
"""

import json
import logging
import sys
from argparse import ArgumentError, ArgumentParser, Namespace
from dataclasses import replace
from typing import Callable, Dict, List, NamedTuple, Optional, Sequence, Union

from akh.algebra import build_complex, check_differentials, check_edge_ranks, homology
from akh.corpus import compare_diagrams, diagram_invariants, load_corpus_diagram
from akh.diagram import AnnularDiagram, InvalidDiagramError
from akh.gl11.checks import check_complex_action, check_cube, check_toolkit
from akh.gl11.homology import action_on_homology
from akh.gl11.superrep import rep_fingerprint, verify_superalgebra
from akh.oracle import check_oracle, even_akh_gf2
from akh.utils.common import CheckReport, ComputeConfig, InvariantViolationError

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2


class CommandResult(NamedTuple):
    status: int
    stdout: str
    stderr: str = ""


def _format_key(key) -> str:
    return "\t".join(str(x) for x in key)


def _dims_table(dims: Dict, header: str) -> List[str]:
    return [f"# {header}\tdim"] + [f"{_format_key(k)}\t{v}" for k, v in dims.items()]


def _keyed(dims: Dict) -> List[dict]:
    return [{"degree": list(k), "dim": v} for k, v in dims.items()]


def _fingerprint_records(fingerprint) -> List[dict]:
    return [
        {"sector": list(sector), "weights": [row._asdict() for row in rows]}
        for sector, rows in fingerprint.items()
    ]


# Subcommands. Each returns (payload for --json, lines for text mode, passed).
def cmd_resolve(d: AnnularDiagram, config: ComputeConfig, args: Namespace):
    c = build_complex(d, config)
    dump = c.cube.dump(c.assignment)
    for record, edge in zip(dump["edges"], c.cube.edges):
        if edge.kind == "split":
            record["arrow"] = list(edge.targets)
    lines = [f"# {d.name}: {len(dump['vertices'])} vertices, {len(dump['edges'])} edges"]
    for v in dump["vertices"]:
        classes = " ".join(kind[0].upper() for kind in v["classes"])
        lines.append(f"vertex {v['vertex'] or '-'}\tcircles {v['circles']}\t{classes}")
    for e in dump["edges"]:
        lines.append(
            f"edge {e['source']}->{e['target']}\tx{e['crossing']}\t{e['kind']}\t"
            f"sign {e['sign']:+d}"
        )
    return dump, lines, True


def cmd_homology(d: AnnularDiagram, config: ComputeConfig, args: Namespace):
    c = build_complex(d, config)
    which = "d" if args.full else "d0"
    result = homology(c, which)
    header = "i\tj" if args.full else "i\tj\tk"
    lines = _dims_table(result.dims, header)
    lines.append(f"poincare: {result.poincare()}")
    payload = {
        "name": d.name,
        "differential": which,
        "dims": _keyed(result.dims),
        "poincare": result.poincare(),
    }
    if config.coeff == "integral":
        payload["torsion"] = [
            {"degree": list(k), "factors": v} for k, v in result.torsion.items()
        ]
        lines += [f"torsion {_format_key(k)}: {v}" for k, v in result.torsion.items()]
    return payload, lines, True


def cmd_action(d: AnnularDiagram, config: ComputeConfig, args: Namespace):
    c = build_complex(d, config)
    rep = action_on_homology(c)
    report = verify_superalgebra(rep)
    fingerprint = rep_fingerprint(rep)
    lines = [f"# action on AKh({d.name}), dimension {rep.dim}"]
    lines.append("basis: " + " ".join(str(tuple(g)) for g in rep.degrees or ()))
    for x in ("e", "f", "h1", "h2"):
        mat = rep.matrix(x)
        lines.append(f"{x}:")
        lines += [
            "  " + " ".join(str(mat[r, col]) for col in range(rep.dim))
            for r in range(rep.dim)
        ]
    for sector, rows in fingerprint.items():
        lines.append(f"sector {sector}: {[tuple(row) for row in rows]}")
    lines.append(f"relations: {'ok' if report.passed else report.message}")
    payload = {
        **rep.to_dict(),
        "fingerprint": _fingerprint_records(fingerprint),
        "relations": report.to_dict(),
    }
    return payload, lines, report.passed


def cmd_oracle(d: AnnularDiagram, config: ComputeConfig, args: Namespace):
    dims = even_akh_gf2(d)
    return {"name": d.name, "dims": _keyed(dims)}, _dims_table(dims, "i\tj\tk"), True


def check_suite(d: AnnularDiagram, config: ComputeConfig) -> List[CheckReport]:
    """Every invariant check on one diagram, robustness variants included."""
    c = build_complex(d, config)
    result = homology(c, "d0")
    rep = action_on_homology(c, result)
    reports = [
        check_differentials(c),
        check_edge_ranks(c),
        check_cube(c.cube),
        check_complex_action(c),
        check_toolkit(),
        verify_superalgebra(rep),
        check_oracle(c, result.dims),
    ]

    baseline = (result.dims, rep_fingerprint(rep))
    variants = {
        "reversed crossings": (
            d.permute_crossings(list(range(d.n_crossings))[::-1]),
            config,
        ),
        "free sign -1": (d, replace(config, free_sign=-1)),
        "kshift supergrading": (d, replace(config, supergrading="kshift")),
    }
    for name, (variant, variant_config) in variants.items():
        if tuple(diagram_invariants(variant, variant_config)) == baseline:
            reports.append(CheckReport.ok(name))
        else:
            reports.append(CheckReport.fail(name, "invariants changed"))
    return reports


def cmd_check(d: AnnularDiagram, config: ComputeConfig, args: Namespace):
    reports = check_suite(d, config)
    passed = all(r.passed for r in reports)
    lines = [
        f"{'PASS' if r.passed else 'FAIL'}\t{r.name}" + (f"\t{r.message}" if r.message else "")
        for r in reports
    ]
    payload = {"name": d.name, "passed": passed, "checks": [r.to_dict() for r in reports]}
    return payload, lines, passed


def cmd_compare(
    d: AnnularDiagram, other: AnnularDiagram, config: ComputeConfig, args: Namespace
):
    report = compare_diagrams(d, other, config)
    verdict = report.details.get("verdict", "distinct")
    lines = [f"{d.name} vs {other.name}: {verdict}"]
    if report.message:
        lines.append(report.message)
    return {**report.to_dict(), "verdict": verdict}, lines, report.passed


COMMANDS: Dict[str, Callable] = {
    "resolve": cmd_resolve,
    "homology": cmd_homology,
    "action": cmd_action,
    "oracle": cmd_oracle,
    "check": cmd_check,
}


class _Parser(ArgumentParser):
    """Raises on usage errors so they reach the caller as input errors."""

    def error(self, message: str):
        raise ArgumentError(None, message)


def build_parser() -> ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument(
        "--coeff",
        choices=["rational", "integral"],
        default="rational",
        help="Coefficients; integral also reports torsion",
    )
    common.add_argument(
        "--supergrading",
        choices=["default", "kshift"],
        default="default",
        help="Superdegree convention of the generators",
    )
    common.add_argument("--json", action="store_true", help="Machine-readable output")
    common.add_argument(
        "--parallel", type=int, default=1, help="Worker threads for vertices and blocks"
    )
    common.add_argument(
        "-v", "--verbose", action="count", default=0, help="-v for info, -vv for debug"
    )

    parser = _Parser(prog="akh", description="Odd annular Khovanov homology")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub = subparsers.add_parser(name, parents=[common])
        sub.add_argument("diagram", help="Diagram file or corpus name")
        if name == "homology":
            sub.add_argument(
                "--full", action="store_true", help="Homology of d instead of d0"
            )
    sub = subparsers.add_parser("compare", parents=[common])
    sub.add_argument("diagram", help="First diagram file or corpus name")
    sub.add_argument("other", help="Second diagram file or corpus name")
    return parser


def _error(exc: Exception, as_json: bool, status: int) -> CommandResult:
    record = json.dumps({"error": type(exc).__name__, "message": str(exc)})
    if as_json:
        return CommandResult(status, record + "\n")
    return CommandResult(status, "", record + "\n")


def execute(args: Namespace) -> CommandResult:
    """Runs one parsed subcommand without touching sys.stdout."""
    if args.parallel < 1:
        return _error(ValueError("--parallel must be positive"), args.json, EXIT_INPUT)
    config = ComputeConfig(
        coeff=args.coeff, supergrading=args.supergrading, parallel=args.parallel
    )

    try:
        d = load_corpus_diagram(args.diagram)
        if args.command == "compare":
            other = load_corpus_diagram(args.other)
            payload, lines, passed = cmd_compare(d, other, config, args)
        else:
            payload, lines, passed = COMMANDS[args.command](d, config, args)
    except (InvalidDiagramError, FileNotFoundError) as exc:
        return _error(exc, args.json, EXIT_INPUT)
    except InvariantViolationError as exc:
        return _error(exc, args.json, EXIT_VIOLATION)

    status = EXIT_OK if passed else EXIT_VIOLATION
    if args.json:
        return CommandResult(status, json.dumps(payload, indent=2) + "\n")
    return CommandResult(status, "\n".join(lines) + "\n")


def parse(argv: Optional[Sequence[str]] = None) -> Union[Namespace, CommandResult]:
    """Parsed arguments, or the input-error result for a bad command line."""
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        return build_parser().parse_args(argv)
    except ArgumentError as exc:
        return _error(exc, "--json" in argv, EXIT_INPUT)


def run(argv: Optional[Sequence[str]] = None) -> CommandResult:
    args = parse(argv)
    return args if isinstance(args, CommandResult) else execute(args)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = parse(argv)
    if isinstance(args, CommandResult):
        result = args
    else:
        level = (logging.WARNING, logging.INFO, logging.DEBUG)[min(args.verbose, 2)]
        logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
        result = execute(args)
    sys.stdout.write(result.stdout)
    sys.stderr.write(result.stderr)
    return result.status


if __name__ == "__main__":
    sys.exit(main())
