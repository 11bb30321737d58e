"""Finite balls of the left coset graph of (G, K) with the edge-path metric.

Vertices are canonical cosets gK; for each generator s the out-neighbours of
gK are {g f K : f in F_s} where F_s is the family witness set, so adjacency
within the built radius is complete and BFS distances are exact.  Graphs are
built once and never mutated, so they can be queried concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    InsufficientRadiusError,
    InternalError,
    VertexOutsideBallError,
)
from .groups import CosetId, Group, Letter, coset_of


@dataclass(frozen=True)
class Path:
    """An edge path; labels[i] carries vertices[i] to vertices[i+1]."""

    vertices: tuple[CosetId, ...]
    labels: tuple[Letter, ...]

    def __len__(self) -> int:
        return len(self.labels)

    @property
    def start(self) -> CosetId:
        return self.vertices[0]

    @property
    def end(self) -> CosetId:
        return self.vertices[-1]


class CosetGraph:
    """The ball of radius ``radius`` around the base coset K."""

    def __init__(self, group: Group, radius: int):
        if radius < 0:
            raise ValueError("radius must be nonnegative")
        self.group = group
        self.radius = radius
        self.base = coset_of(group.identity())
        self.norms: dict[CosetId, int] = {}
        self.order: dict[CosetId, int] = {}
        self.parents: dict[CosetId, tuple[CosetId, Letter]] = {}
        self.adjacency: dict[CosetId, tuple[tuple[Letter, CosetId], ...]] = {}
        self._witnesses = {
            l: group.witness_elements(l) for l in group.s_letters
        }
        self._build()

    def _targets(self, v: CosetId) -> list[tuple[Letter, CosetId]]:
        """All labeled out-neighbours of v, deduplicated, self-loops dropped."""
        group = self.group
        out = []
        seen = set()
        for letter in group.s_letters:
            for f in self._witnesses[letter]:
                w = coset_of(group.multiply(v.rep, f))
                if w == v or (letter, w) in seen:
                    continue
                seen.add((letter, w))
                out.append((letter, w))
        return out

    def _build(self) -> None:
        queue = [self.base]
        self.norms[self.base] = 0
        self.order[self.base] = 0
        raw: dict[CosetId, list[tuple[Letter, CosetId]]] = {}
        head = 0
        while head < len(queue):
            v = queue[head]
            head += 1
            d = self.norms[v]
            targets = self._targets(v)
            raw[v] = targets
            if d < self.radius:
                for letter, w in targets:
                    if w not in self.norms:
                        self.norms[w] = d + 1
                        self.order[w] = len(queue)
                        self.parents[w] = (v, letter)
                        queue.append(w)
        # keep only in-ball endpoints; done after BFS so that edges between
        # two boundary vertices are stored from both sides
        for v, targets in raw.items():
            self.adjacency[v] = tuple(
                (l, w) for l, w in targets if w in self.norms
            )

    # -- queries --------------------------------------------------------------

    def __contains__(self, v: CosetId) -> bool:
        return v in self.norms

    def vertex_count(self) -> int:
        return len(self.norms)

    def norm(self, v: CosetId) -> int:
        try:
            return self.norms[v]
        except KeyError:
            raise VertexOutsideBallError(f"{v!r} is outside the built ball") from None

    def vertices_in_order(self) -> list[CosetId]:
        return sorted(self.norms, key=self.order.__getitem__)

    def neighbors(self, v: CosetId) -> tuple[tuple[Letter, CosetId], ...]:
        """In-ball labeled neighbours of v."""
        if v not in self.norms:
            raise VertexOutsideBallError(f"{v!r} is outside the built ball")
        return self.adjacency[v]

    def full_degree(self, v: CosetId) -> int:
        """Degree in the infinite graph (neighbours outside the ball count)."""
        if v not in self.norms:
            raise VertexOutsideBallError(f"{v!r} is outside the built ball")
        return len({w for _, w in self._targets(v)})

    def has_cycle(self) -> bool:
        """Whether the built ball, viewed as an undirected graph, has a cycle."""
        und = {
            frozenset((v, w))
            for v, nbrs in self.adjacency.items()
            for _, w in nbrs
        }
        return len(und) != self.vertex_count() - 1


def build_ball(group: Group, radius: int) -> CosetGraph:
    return CosetGraph(group, radius)


def distance(graph: CosetGraph, u: CosetId, v: CosetId) -> int | None:
    """Exact edge-path distance, or None when the ball cannot certify it.

    A value d is certified exact when (|u| + |v| + d) / 2 <= radius: every
    geodesic of the full graph between u and v then stays inside the ball.
    """
    nu, nv = graph.norm(u), graph.norm(v)
    if u == v:
        return 0
    dist = {u: 0}
    queue = [u]
    head = 0
    while head < len(queue):
        w = queue[head]
        head += 1
        for _, z in graph.neighbors(w):
            if z not in dist:
                dist[z] = dist[w] + 1
                if z == v:
                    d = dist[z]
                    return d if nu + nv + d <= 2 * graph.radius else None
                queue.append(z)
    return None


def ball_around(graph: CosetGraph, r: int, v: CosetId) -> frozenset[CosetId]:
    """The closed r-ball around v, exact only while it fits in the built ball."""
    if graph.norm(v) + r > graph.radius:
        raise InsufficientRadiusError(
            f"ball({r}) around {v!r} may leave the built radius {graph.radius}"
        )
    return neighborhood(graph, r, (v,))


def neighborhood(
    graph: CosetGraph, depth: int, targets
) -> frozenset[CosetId]:
    """Closed depth-neighbourhood of a vertex set, multi-source BFS."""
    targets = list(targets)
    for t in targets:
        if graph.norm(t) + depth > graph.radius:
            raise InsufficientRadiusError(
                f"neighbourhood({depth}) of {t!r} may leave radius {graph.radius}"
            )
    dist = {t: 0 for t in targets}
    queue = list(targets)
    head = 0
    while head < len(queue):
        w = queue[head]
        head += 1
        if dist[w] == depth:
            continue
        for _, z in graph.neighbors(w):
            if z not in dist:
                dist[z] = dist[w] + 1
                queue.append(z)
    return frozenset(dist)


def geodesic_to(graph: CosetGraph, v: CosetId) -> Path:
    """The BFS-tree path from the base to v; its length equals |v|."""
    if v not in graph.norms:
        raise VertexOutsideBallError(f"{v!r} is outside the built ball")
    verts = [v]
    labels: list[Letter] = []
    while verts[-1] != graph.base:
        parent, letter = graph.parents[verts[-1]]
        verts.append(parent)
        labels.append(letter)
    verts.reverse()
    labels.reverse()
    return Path(tuple(verts), tuple(labels))


def two_sided_geodesic(graph: CosetGraph, half: int) -> Path:
    """A verified geodesic segment through the base, indices -half..half.

    Takes the first vertex at norm 2*half in BFS order, pulls the BFS
    geodesic to it, and recentres by translating with the midpoint inverse.
    Every pairwise distance is checked before returning.
    """
    if 2 * half > graph.radius:
        raise InsufficientRadiusError(
            f"two-sided geodesic of half-length {half} needs radius {2 * half}"
        )
    if half == 0:
        return Path((graph.base,), ())
    group = graph.group
    far = None
    for v in graph.vertices_in_order():
        if graph.norms[v] == 2 * half:
            far = v
            break
    if far is None:
        raise InsufficientRadiusError(
            f"no vertex of norm {2 * half}; is the subgroup of finite index?"
        )
    spine = geodesic_to(graph, far)
    mid_inv = group.invert(spine.vertices[half].rep)
    verts = tuple(
        coset_of(group.multiply(mid_inv, g.rep)) for g in spine.vertices
    )
    for i in range(len(verts)):
        for j in range(i + 1, len(verts)):
            if distance(graph, verts[i], verts[j]) != j - i:
                raise InternalError(
                    "translated geodesic failed the pairwise distance check"
                )
    return Path(verts, spine.labels)


class BallCache:
    """Grow-on-demand coset graphs for one group; largest ball is kept."""

    def __init__(self, group: Group):
        self.group = group
        self._graph: CosetGraph | None = None

    def at_least(self, radius: int) -> CosetGraph:
        if self._graph is None or self._graph.radius < radius:
            self._graph = CosetGraph(self.group, radius)
        return self._graph
