"""Ends estimation and the capacity function for coset graphs.

Ends are a limit notion; a finite tool can only report evidence.  We remove
shells from built balls, count the connected components that reach the probe
sphere, and declare an exact value only after the count stabilises over the
top half of the probed range.  The capacity N(r) is the largest norm of a
vertex cut off from the sphere-reaching component once the closed r-ball is
removed; its value is accepted once two successive probe radii agree.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coset_graph import BallCache, CosetGraph
from .errors import NoStabilizationError, NotOneEndedError
from .groups import CosetId, Group


@dataclass(frozen=True)
class Component:
    vertices: frozenset[CosetId]
    touches_sphere: bool


@dataclass(frozen=True)
class EndsRow:
    r: int
    probe_radius: int
    components: int
    sphere_touching: int
    stabilized: bool


@dataclass(frozen=True)
class EndsReport:
    rows: tuple[EndsRow, ...]
    kind: str  # "exact" | "at_least" | "inconclusive"
    count: int | None

    def describe(self) -> str:
        if self.kind == "exact":
            return f"exact {self.count}"
        if self.kind == "at_least":
            return f">= {self.count} (growing with radius)"
        return "inconclusive"

    def is_exactly(self, k: int) -> bool:
        return self.kind == "exact" and self.count == k


@dataclass(frozen=True)
class CapacityEntry:
    value: int
    probe_radius: int


@dataclass(frozen=True)
class CapacityTable:
    entries: dict[int, CapacityEntry]

    def value(self, r: int) -> int:
        return self.entries[r].value


def components_outside_ball(
    graph: CosetGraph, inner: int, outer: int
) -> list[Component]:
    """Components of the induced subgraph on {v : inner <= |v| <= outer}.

    A component touches the sphere when it contains a vertex of norm equal
    to ``outer``; such components are the candidates for unbounded ones.
    """
    if inner > outer or outer > graph.radius:
        raise ValueError(f"bad shell [{inner}, {outer}] for radius {graph.radius}")
    shell = [
        v for v in graph.vertices_in_order() if inner <= graph.norms[v] <= outer
    ]
    keep = set(shell)
    seen: set[CosetId] = set()
    out: list[Component] = []
    for start in shell:
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        head = 0
        touches = graph.norms[start] == outer
        while head < len(comp):
            v = comp[head]
            head += 1
            for _, w in graph.neighbors(v):
                if w in keep and w not in seen:
                    seen.add(w)
                    comp.append(w)
                    if graph.norms[w] == outer:
                        touches = True
        out.append(Component(frozenset(comp), touches))
    return out


def estimate_ends(cache: BallCache, r_max: int = 5, margin: int = 5) -> EndsReport:
    """Sphere-touching component counts for r = 1..r_max at probe r+margin."""
    if margin < 2:
        raise ValueError("margin must be at least 2")
    graph = cache.at_least(r_max + margin)
    counts = []
    rows = []
    for r in range(1, r_max + 1):
        comps = components_outside_ball(graph, r, r + margin)
        touching = sum(1 for c in comps if c.touches_sphere)
        counts.append(touching)
        rows.append((r, r + margin, len(comps), touching))
    window = counts[r_max // 2 :]
    if all(c == window[-1] for c in window):
        kind, count = "exact", window[-1]
    elif all(a <= b for a, b in zip(counts, counts[1:])) and counts[-1] > counts[0]:
        kind, count = "at_least", counts[-1]
    else:
        kind, count = "inconclusive", None
    final = tuple(
        EndsRow(r, pr, total, touch, kind == "exact" and touch == count)
        for (r, pr, total, touch) in rows
    )
    return EndsReport(final, kind, count)


def _capacity_probe(graph: CosetGraph, r: int, probe: int) -> int:
    """Max norm of a ball(probe) vertex cut off from the sphere component."""
    comps = components_outside_ball(graph, r + 1, probe)
    touching = [c for c in comps if c.touches_sphere]
    if len(touching) != 1:
        raise NotOneEndedError(
            f"{len(touching)} sphere-touching components after removing "
            f"ball({r}) at probe radius {probe}"
        )
    unbounded = touching[0].vertices
    return max(
        norm
        for v, norm in graph.norms.items()
        if norm <= probe and v not in unbounded
    )


def capacity(cache: BallCache, r: int, probe_cap: int | None = None) -> CapacityEntry:
    """N(r) with a stabilisation certificate, growing the probe as needed."""
    if probe_cap is None:
        probe_cap = r + 10
    probe = r + 2
    graph = cache.at_least(probe + 1)
    value = _capacity_probe(graph, r, probe)
    while probe < probe_cap:
        graph = cache.at_least(probe + 1)
        nxt = _capacity_probe(graph, r, probe + 1)
        if nxt == value:
            return CapacityEntry(value, probe + 1)
        value = nxt
        probe += 1
    raise NoStabilizationError(
        f"capacity({r}) did not settle by probe radius {probe_cap}"
    )


def capacity_table(cache: BallCache, r_max: int) -> CapacityTable:
    return CapacityTable({r: capacity(cache, r) for r in range(0, r_max + 1)})


@dataclass(frozen=True)
class CrossCheckResult:
    pair_report: EndsReport
    reference_report: EndsReport
    agrees: bool


def cross_check_quotient(
    group: Group, r_max: int = 5, margin: int = 5
) -> CrossCheckResult:
    """Compare the coset-graph ends estimate against the quotient Cayley graph.

    Valid when K is normal in the family (zd and products of such) or
    trivial; raises UnsupportedFamilyError otherwise.
    """
    reference = group.quotient_by_k()
    pair = estimate_ends(BallCache(group), r_max, margin)
    ref = estimate_ends(BallCache(reference), r_max, margin)
    agrees = (pair.kind, pair.count) == (ref.kind, ref.count)
    return CrossCheckResult(pair, ref, agrees)
