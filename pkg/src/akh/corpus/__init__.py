"""
Bundled annular diagrams and Reidemeister move pairs.

Diagrams live in `diagrams/<name>.json` in the text format of `akh.diagram`;
`pairs.json` lists the move pairs, each naming its two diagrams.
"""

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Literal, NamedTuple, Optional, Tuple, Union

from akh.algebra import build_complex, homology
from akh.diagram import AnnularDiagram, InvalidDiagramError, load_diagram
from akh.gl11.homology import action_on_homology
from akh.gl11.superrep import RepFingerprint, rep_fingerprint
from akh.utils.common import CheckReport, ComputeConfig

logger = logging.getLogger(__name__)

CORPUS_DIR = Path(__file__).parent
DIAGRAM_DIR = CORPUS_DIR / "diagrams"
PAIRS_FILE = CORPUS_DIR / "pairs.json"
MOVES = ("R1L", "R1R", "R2", "R3", "none")


@dataclass(frozen=True)
class MovePair:
    name: str
    before: AnnularDiagram
    after: AnnularDiagram
    move: Literal["R1L", "R1R", "R2", "R3", "none"]
    note: str = ""
    expect: Literal["equal", "distinct"] = "equal"


class DiagramInvariants(NamedTuple):
    dims: Dict[Tuple[int, ...], int]
    fingerprint: RepFingerprint


def corpus_names() -> List[str]:
    return sorted(path.stem for path in DIAGRAM_DIR.glob("*.json"))


def resolve_path(name_or_path: Union[str, Path]) -> Path:
    """Accepts a file path, a corpus name, or `corpus/<name>`."""
    path = Path(name_or_path)
    if path.is_file():
        return path
    stem = path.name[: -len(".json")] if path.name.endswith(".json") else path.name
    if path.parent.name in ("", "corpus") and (DIAGRAM_DIR / f"{stem}.json").is_file():
        return DIAGRAM_DIR / f"{stem}.json"
    raise FileNotFoundError(f"No diagram file or corpus entry named {name_or_path}")


def load_corpus_diagram(name_or_path: Union[str, Path]) -> AnnularDiagram:
    return load_diagram(resolve_path(name_or_path))


def load_pairs() -> List[MovePair]:
    try:
        records = json.loads(PAIRS_FILE.read_text())
    except json.JSONDecodeError as exc:
        raise InvalidDiagramError(f"Corrupt pair list {PAIRS_FILE}: {exc}") from exc
    pairs = []
    for record in records:
        if record["move"] not in MOVES:
            raise InvalidDiagramError(f"Unknown move {record['move']}")
        pairs.append(
            MovePair(
                name=record["name"],
                before=load_corpus_diagram(record["before"]),
                after=load_corpus_diagram(record["after"]),
                move=record["move"],
                note=record.get("note", ""),
                expect=record.get("expect", "equal"),
            )
        )
    return pairs


def load_corpus() -> Tuple[List[AnnularDiagram], List[MovePair]]:
    diagrams = [load_corpus_diagram(name) for name in corpus_names()]
    pairs = load_pairs()
    logger.info("corpus: %d diagrams, %d pairs", len(diagrams), len(pairs))
    return diagrams, pairs


def diagram_invariants(
    d: AnnularDiagram, config: Optional[ComputeConfig] = None
) -> DiagramInvariants:
    """Trigraded dimensions and action fingerprint of the d0-homology."""
    c = build_complex(d, config)
    result = homology(c, "d0")
    rep = action_on_homology(c, result)
    return DiagramInvariants(result.dims, rep_fingerprint(rep))


def compare_diagrams(
    a: AnnularDiagram, b: AnnularDiagram, config: Optional[ComputeConfig] = None
) -> CheckReport:
    """Passes when both homology dimensions and fingerprints agree."""
    name = f"{a.name} vs {b.name}"
    first, second = diagram_invariants(a, config), diagram_invariants(b, config)
    if first.dims != second.dims:
        return CheckReport.fail(name, "trigraded dimensions differ", verdict="distinct")
    if first.fingerprint != second.fingerprint:
        return CheckReport.fail(name, "action fingerprints differ", verdict="distinct")
    return CheckReport.ok(name, verdict="isomorphic")


def compare_pair(p: MovePair, config: Optional[ComputeConfig] = None) -> CheckReport:
    """Checks a move pair against its expected outcome."""
    report = compare_diagrams(p.before, p.after, config)
    if p.expect == "equal":
        report.name = p.name
        return report
    if report.passed:
        return CheckReport.fail(p.name, "expected distinct invariants", verdict="isomorphic")
    return CheckReport.ok(p.name, verdict="distinct")
