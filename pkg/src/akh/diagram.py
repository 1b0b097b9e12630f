"""
Annular link diagrams.

A diagram is an oriented planar-diagram code together with the signed
crossings of the arc gamma, which runs from the inner basepoint X to the outer
basepoint O. The text format is a JSON object with the keys `name`,
`crossings`, `arrows`, `loops` and `gamma`, one key per line:

    {
      "name": "hopf",
      "crossings": [[4, 3, 1, 2], [3, 4, 2, 1]],
      "arrows": ["U", "U"],
      "loops": [],
      "gamma": [[2, 1], [4, 1]]
    }

Crossing `[a, b, c, d]` lists its four edges counterclockwise, starting at the
incoming under-strand, so the under-strand runs a -> c. The over-strand runs
d -> b at a positive crossing and b -> d at a negative one. Its direction is
propagated along each component from the component's under-passages. A
component that only ever passes over is oriented so that its smallest edge
leaves the crossing whose edge tuple is lexicographically smaller, which does
not depend on the order the crossings are listed in. Edge ids are integers.

A loop is a crossing-free component made of a single edge, oriented
counterclockwise. A gamma entry `[edge, sign]` has sign +1 when the oriented
edge crosses gamma counterclockwise around X.

Arrow letters follow this picture: turn the crossing so that the over-strand
runs NW -> SE, which puts a, b, c, d at SW, SE, NE, NW. In the 0-smoothing the
arcs are (a, b) and (c, d) and "U" points from (a, b) to (c, d). In the
1-smoothing the arcs are (a, d) and (b, c) and the arrow is turned 90 degrees
clockwise, so "U" points from (a, d) to (b, c). "D" reverses both.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Literal, NamedTuple, Sequence, Tuple, Union

logger = logging.getLogger(__name__)

# Errors
InvalidDiagramError = type("InvalidDiagramError", (ValueError,), {})

Occurrence = Tuple[int, int]  # (crossing index, position 0..3)
ARROWS = ("U", "D")
FIELDS = ("name", "crossings", "arrows", "loops", "gamma")


def _integer(value) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InvalidDiagramError(f"Expected an integer, got {value!r}")
    return value


class DiagramStats(NamedTuple):
    n_plus: int
    n_minus: int
    num_components: int


@dataclass(frozen=True)
class AnnularDiagram:
    """Validated annular link diagram. Immutable after construction."""

    crossings: Tuple[Tuple[int, int, int, int], ...]
    arrows: Tuple[Literal["U", "D"], ...]
    loops: Tuple[int, ...] = ()
    gamma: Tuple[Tuple[int, int], ...] = ()
    name: str = ""

    # Derived data, filled by __post_init__.
    heads: Dict[int, Occurrence] = field(init=False, repr=False, compare=False)
    tails: Dict[int, Occurrence] = field(init=False, repr=False, compare=False)
    signs: Tuple[int, ...] = field(init=False, repr=False, compare=False)
    components: Tuple[Tuple[int, ...], ...] = field(
        init=False, repr=False, compare=False
    )

    def __post_init__(self):
        crossings = tuple(tuple(_integer(e) for e in x) for x in self.crossings)
        object.__setattr__(self, "crossings", crossings)
        object.__setattr__(self, "arrows", tuple(self.arrows))
        object.__setattr__(self, "loops", tuple(_integer(e) for e in self.loops))
        object.__setattr__(
            self, "gamma", tuple((_integer(e), _integer(s)) for e, s in self.gamma)
        )
        self._check_shapes()
        occurrences = self._occurrences()
        heads, tails, components = self._orient(occurrences)
        signs = tuple(
            1 if heads[crossing[3]] == (k, 3) else -1
            for k, crossing in enumerate(self.crossings)
        )
        object.__setattr__(self, "heads", heads)
        object.__setattr__(self, "tails", tails)
        object.__setattr__(self, "signs", signs)
        object.__setattr__(self, "components", components)
        logger.debug(
            "parsed diagram %r: %d crossings, %d components",
            self.name,
            self.n_crossings,
            len(components),
        )

    # Validation.
    def _check_shapes(self) -> None:
        if len(self.arrows) != len(self.crossings):
            raise InvalidDiagramError(
                f"{len(self.crossings)} crossings but {len(self.arrows)} arrows"
            )
        for k, crossing in enumerate(self.crossings):
            if len(crossing) != 4:
                raise InvalidDiagramError(f"Crossing {k} is not a 4-tuple: {crossing}")
        for arrow in self.arrows:
            if arrow not in ARROWS:
                raise InvalidDiagramError(f"Unknown arrow {arrow!r}, expected U or D")
        for edge, sign in self.gamma:
            if sign not in (1, -1):
                raise InvalidDiagramError(f"gamma sign must be +1 or -1, got {sign}")

    def _occurrences(self) -> Dict[int, List[Occurrence]]:
        occurrences: Dict[int, List[Occurrence]] = {}
        for k, crossing in enumerate(self.crossings):
            for p, edge in enumerate(crossing):
                occurrences.setdefault(edge, []).append((k, p))
        for edge, places in occurrences.items():
            if len(places) != 2:
                raise InvalidDiagramError(
                    f"Edge {edge} is used {len(places)} times, expected 2"
                )
        if len(set(self.loops)) != len(self.loops):
            raise InvalidDiagramError(f"Repeated loop edge in {self.loops}")
        for edge in self.loops:
            if edge in occurrences:
                raise InvalidDiagramError(f"Loop edge {edge} also appears at a crossing")
        for edge, _ in self.gamma:
            if edge not in occurrences and edge not in self.loops:
                raise InvalidDiagramError(f"gamma references unknown edge {edge}")
        return occurrences

    def _trace_component(
        self, start: int, occurrences: Dict[int, List[Occurrence]]
    ) -> List[Tuple[int, Occurrence, Occurrence]]:
        """Follows the strand through `start`, returning (edge, tail, head) triples."""
        path = []
        edge, tail = start, occurrences[start][0]
        while True:
            head = next(o for o in occurrences[edge] if o != tail)
            path.append((edge, tail, head))
            k, p = head
            tail = (k, (p + 2) % 4)
            edge = self.crossings[k][tail[1]]
            if edge == start and tail == path[0][1]:
                return path
            assert len(path) <= len(occurrences), "Strand does not close up"

    def _orient(self, occurrences: Dict[int, List[Occurrence]]):
        heads: Dict[int, Occurrence] = {}
        tails: Dict[int, Occurrence] = {}
        components: List[Tuple[int, ...]] = []
        seen = set()
        for start in sorted(occurrences):
            if start in seen:
                continue
            path = self._trace_component(start, occurrences)
            agree = sum(1 for _, _, head in path if head[1] == 0)
            disagree = sum(1 for _, _, head in path if head[1] == 2)
            if agree and disagree:
                raise InvalidDiagramError(
                    f"Inconsistent orientation on the component through edge {start}"
                )
            if not agree and not disagree:
                # Over-only: the smallest edge leaves the smaller crossing tuple.
                _, tail, head = min(path)
                if tail[0] == head[0]:
                    raise InvalidDiagramError(
                        f"Edge {start} passes over the same crossing twice"
                    )
                reverse = self.crossings[tail[0]] > self.crossings[head[0]]
            else:
                reverse = bool(disagree)
            for edge, tail, head in path:
                if reverse:
                    tail, head = head, tail
                heads[edge] = head
                tails[edge] = tail
                seen.add(edge)
            components.append(tuple(sorted(edge for edge, _, _ in path)))
        for edge in self.loops:
            components.append((edge,))
        return heads, tails, tuple(sorted(components))

    # Properties.
    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    @property
    def edges(self) -> Tuple[int, ...]:
        return tuple(sorted(set(self.heads) | set(self.loops)))

    def gamma_crossings(self) -> Dict[int, List[Tuple[int, int]]]:
        """Maps each edge to its (index along gamma, sign) pairs."""
        out: Dict[int, List[Tuple[int, int]]] = {}
        for index, (edge, sign) in enumerate(self.gamma):
            out.setdefault(edge, []).append((index, sign))
        return out

    def permute_crossings(self, order: Sequence[int]) -> AnnularDiagram:
        """Same diagram with the crossings listed in the given order."""
        assert sorted(order) == list(range(self.n_crossings))
        return AnnularDiagram(
            crossings=tuple(self.crossings[k] for k in order),
            arrows=tuple(self.arrows[k] for k in order),
            loops=self.loops,
            gamma=self.gamma,
            name=self.name,
        )


def parse_diagram(text: str) -> AnnularDiagram:
    """Parses and validates a diagram from its text format."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidDiagramError(f"Malformed diagram text: {exc}") from exc
    if not isinstance(data, dict):
        raise InvalidDiagramError("A diagram must be a JSON object")
    unknown = set(data) - set(FIELDS)
    if unknown:
        raise InvalidDiagramError(f"Unknown diagram fields {sorted(unknown)}")
    for key in ("crossings", "arrows", "loops", "gamma"):
        if not isinstance(data.get(key, []), list):
            raise InvalidDiagramError(f"Field {key!r} must be a list")
    try:
        return AnnularDiagram(
            crossings=tuple(tuple(x) for x in data.get("crossings", [])),
            arrows=tuple(data.get("arrows", [])),
            loops=tuple(data.get("loops", [])),
            gamma=tuple(tuple(g) for g in data.get("gamma", [])),
            name=str(data.get("name", "")),
        )
    except (TypeError, ValueError) as exc:
        if isinstance(exc, InvalidDiagramError):
            raise
        raise InvalidDiagramError(f"Malformed diagram fields: {exc}") from exc


def serialize(d: AnnularDiagram) -> str:
    """Canonical text form; `serialize(parse_diagram(t)) == t` for canonical t."""
    values = {
        "name": d.name,
        "crossings": [list(x) for x in d.crossings],
        "arrows": list(d.arrows),
        "loops": list(d.loops),
        "gamma": [list(g) for g in d.gamma],
    }
    lines = [f"  {json.dumps(key)}: {json.dumps(values[key])}" for key in FIELDS]
    return "{\n" + ",\n".join(lines) + "\n}\n"


def load_diagram(path: Union[str, Path]) -> AnnularDiagram:
    return parse_diagram(Path(path).read_text())


def crossing_signs(d: AnnularDiagram) -> DiagramStats:
    n_plus = sum(1 for s in d.signs if s > 0)
    n_minus = d.n_crossings - n_plus
    return DiagramStats(n_plus, n_minus, len(d.components))


def winding_parity(d: AnnularDiagram) -> int:
    """Parity of the algebraic intersection of the link with gamma."""
    return sum(sign for _, sign in d.gamma) % 2
