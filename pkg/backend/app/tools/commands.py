"""
Polylink Commands
=================
One function per subcommand, shared by the CLI and the HTTP API. Each returns
a CommandResult: the machine-readable output lines plus an optional scene for
SVG export.
"""

import logging
import threading
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional

from app.config import CACHE_SIZE, DEFAULT_SEED
from app.extremal.spiral import spiral, verify
from app.geometry.exact import Point
from app.geometry.polygon import SimplePolygon
from app.geometry.raindrop import LocationTag, classify, get_context
from app.geometry.visibility import two_nonadjacent_visible, two_visible_vertices, visible_vertices
from app.paths.link_path import connect, connect_naive, verify_certificate
from app.paths.oracle import link_distance, poldiam_sampled
from app.tools.polygon_io import PolygonDocument, format_polygon, parse_polygon_document
from app.tools.svg import Scene, scene

logger = logging.getLogger(__name__)

DOMAINS = {"int": LocationTag.INTERIOR, "ext": LocationTag.EXTERIOR}


@dataclass
class CommandResult:
    lines: List[str]
    scene: Optional[Scene] = None
    # polygon file text for commands that generate polygons
    document: Optional[str] = None

    @property
    def text(self) -> str:
        return "\n".join(self.lines) + "\n"


class PolygonCache:
    """Parsed polygon files keyed by their text, so repeated requests skip validation."""

    def __init__(self, capacity: int = CACHE_SIZE):
        self.capacity = capacity
        self._documents: Dict[str, PolygonDocument] = {}
        # shared across API worker threads
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return len(self._documents)

    def load(self, text: str) -> PolygonDocument:
        with self._lock:
            doc = self._documents.get(text)
            if doc is not None:
                return doc
        doc = parse_polygon_document(text)
        with self._lock:
            if text not in self._documents:
                while len(self._documents) >= self.capacity:
                    self._documents.pop(next(iter(self._documents)))
                self._documents[text] = doc
            return self._documents[text]

    def clear(self):
        with self._lock:
            self._documents.clear()


_polygon_cache: Optional[PolygonCache] = None


def get_polygon_cache() -> PolygonCache:
    """Get or create the polygon cache singleton."""
    global _polygon_cache
    if _polygon_cache is None:
        _polygon_cache = PolygonCache()
    return _polygon_cache


def _polygon(text: str) -> SimplePolygon:
    return get_polygon_cache().load(text).polygon


def _points_line(tag: str, points) -> str:
    return " ".join([tag] + [str(p) for p in points])


# =============================================================================
# COMMAND FUNCTIONS
# =============================================================================

def validate_polygon(text: str) -> CommandResult:
    """Validate a polygon file."""
    P = _polygon(text)
    return CommandResult([f"simple n={P.n}"], scene(P))


def classify_point(text: str, p: Point) -> CommandResult:
    """Interior, exterior or the boundary feature carrying p."""
    P = _polygon(text)
    loc = classify(get_context(P), p)
    return CommandResult([str(loc)], scene(P, [("p", p)]))


def visible_from(text: str, p: Point, seed: int = DEFAULT_SEED) -> CommandResult:
    """Vertices seen by p, a constructed visible pair, and a non-adjacent pair where one exists."""
    P = _polygon(text)
    seen = visible_vertices(P, p)
    pair = two_visible_vertices(P, p, seed)
    lines = [
        " ".join(["vertices"] + [str(i) for i in seen]),
        f"pair {pair.first} {pair.second}",
    ]
    if P.n >= 4 and classify(get_context(P), p).tag == LocationTag.INTERIOR:
        far = two_nonadjacent_visible(P, p, seed)
        lines.append(f"nonadjacent {far.first} {far.second}")
    markers = [("p", p)] + [(f"v{i}", P.vertex(i)) for i in seen]
    return CommandResult(lines, scene(P, markers))


def path_between(text: str, a: Point, b: Point, naive: bool = False,
                 seed: int = DEFAULT_SEED) -> CommandResult:
    """Certified polygonal path from a to b."""
    P = _polygon(text)
    cert = connect_naive(P, a, b, seed) if naive else connect(P, a, b, seed)
    verify_certificate(P, cert)
    lines = [
        f"links {cert.links} bound {cert.bound} case {cert.case.value} {cert.component.value}",
        _points_line("path", cert.path.points),
    ]
    return CommandResult(lines, scene(P, [("a", a), ("b", b)], [("path", cert.path.points)]))


def link_distance_between(text: str, a: Point, b: Point, domain: Optional[str] = None,
                          max_n: Optional[int] = None) -> CommandResult:
    """Oracle link distance with a witness path."""
    P = _polygon(text)
    result = link_distance(P, a, b, DOMAINS[domain] if domain else None, max_n)
    lines = [str(result.distance), _points_line("witness", result.witness.points)]
    lines.extend(f"box x{r.box_scale} {r.distance}" for r in result.stability if r.box_scale)
    return CommandResult(lines, scene(P, [("a", a), ("b", b)], [("witness", result.witness.points)]))


def polygonal_diameter(text: str, domain: str, budget: int, seed: int = DEFAULT_SEED,
                       max_n: Optional[int] = None) -> CommandResult:
    """Sampled lower bound on the polygonal diameter of one component."""
    doc = get_polygon_cache().load(text)
    tag = f"{domain}-witness"
    extras = doc.witnesses.get(tag, ())
    est = poldiam_sampled(doc.polygon, DOMAINS[domain], budget, seed, extras=extras, max_n=max_n)
    a, b = est.pair
    lines = [
        str(est.lower_bound),
        _points_line("pair", est.pair),
        _points_line("witness", est.witness.points),
        f"samples {est.samples}",
    ]
    return CommandResult(lines, scene(doc.polygon, [("a", a), ("b", b)], [("witness", est.witness.points)]))


def generate_spiral(n: int, check: bool = False, budget: Optional[int] = None, seed: int = DEFAULT_SEED,
                    max_n: Optional[int] = None) -> CommandResult:
    """Extremal spiral polygon file; with `check`, the oracle report as comment lines."""
    instance = spiral(n)
    witnesses = {"int-witness": instance.interior_witness, "ext-witness": instance.exterior_witness}
    document = format_polygon(
        instance.polygon, witnesses,
        f"spiral n={n} int={instance.claimed_interior} ext={instance.claimed_exterior}",
    )
    lines = document.rstrip("\n").split("\n")
    if check:
        report = verify(instance, max_n=max_n, budget=budget, seed=seed)
        lines.extend(f"# {line}" for line in report.lines())
    markers = [("ia", instance.interior_witness[0]), ("ib", instance.interior_witness[1]),
               ("ea", instance.exterior_witness[0]), ("eb", instance.exterior_witness[1])]
    return CommandResult(lines, scene(instance.polygon, markers), document)


# =============================================================================
# COMMAND REGISTRY
# =============================================================================

COMMANDS: Dict[str, Callable[..., CommandResult]] = {
    "validate": validate_polygon,
    "classify": classify_point,
    "visible": visible_from,
    "path": path_between,
    "linkdist": link_distance_between,
    "poldiam": polygonal_diameter,
    "gen": generate_spiral,
}
