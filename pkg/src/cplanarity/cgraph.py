"""Flat clustered plane graphs and their structural checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

from .embed import Cycle, EmbeddedGraph, cycle_sides, edge_key


@dataclass(frozen=True, eq=False)
class CGraph:
    """A plane graph whose vertices are partitioned into clusters."""

    graph: EmbeddedGraph
    cluster_of: Mapping[int, int]

    def __post_init__(self):
        cl = {int(v): int(c) for v, c in self.cluster_of.items()}
        if set(cl) != set(self.graph.rotations):
            missing = set(self.graph.rotations) - set(cl)
            extra = set(cl) - set(self.graph.rotations)
            raise ValueError(f"cluster map mismatch: missing {sorted(missing)}, extra {sorted(extra)}")
        object.__setattr__(self, "cluster_of", cl)

    @property
    def n(self) -> int:
        return self.graph.vertex_count

    @cached_property
    def clusters(self) -> dict[int, tuple[int, ...]]:
        out: dict[int, list[int]] = {}
        for v in self.graph.vertices:
            out.setdefault(self.cluster_of[v], []).append(v)
        return {c: tuple(vs) for c, vs in sorted(out.items())}

    @property
    def cluster_count(self) -> int:
        return len(self.clusters)

    def with_graph(self, graph: EmbeddedGraph) -> "CGraph":
        return CGraph(graph, {v: self.cluster_of[v] for v in graph.vertices})

    @cached_property
    def components(self) -> "ClusterComponents":
        return cluster_components(self)

    def disconnected_clusters(self) -> list[int]:
        return [c for c, comps in self.components.per_cluster.items() if len(comps) > 1]

    def is_c_connected(self) -> bool:
        return not self.disconnected_clusters()

    def __repr__(self) -> str:
        return f"CGraph(V={self.n}, E={self.graph.edge_count}, clusters={self.cluster_count})"


@dataclass(frozen=True)
class ClusterComponents:
    per_cluster: dict[int, list[frozenset[int]]]
    component_of: dict[int, int] = field(repr=False)

    def count(self, cluster: int) -> int:
        return len(self.per_cluster[cluster])

    def is_connected(self, cluster: int) -> bool:
        return len(self.per_cluster[cluster]) == 1


def cluster_components(cg: CGraph) -> ClusterComponents:
    """Connected components of every induced cluster subgraph."""
    g = cg.graph
    cl = cg.cluster_of
    comp_of: dict[int, int] = {}
    per: dict[int, list[frozenset[int]]] = {c: [] for c in cg.clusters}
    next_id = 0
    for v in g.vertices:
        if v in comp_of:
            continue
        c = cl[v]
        stack = [v]
        comp_of[v] = next_id
        members = [v]
        while stack:
            x = stack.pop()
            for y in g.rotation(x):
                if y not in comp_of and cl[y] == c:
                    comp_of[y] = next_id
                    members.append(y)
                    stack.append(y)
        per[c].append(frozenset(members))
        next_id += 1
    return ClusterComponents(per, comp_of)


@dataclass(frozen=True)
class ConditionIIResult:
    """Outcome of the enclosure test.

    ``ok`` is true when at least one admissible outer face exists.
    ``violation`` holds ``(cluster, face, vertex)``: with ``face`` as the
    outer face, ``vertex`` is enclosed by a cycle of ``cluster``.
    """

    admissible_outer: frozenset[int]
    violation: tuple[int, int, int] | None

    @property
    def ok(self) -> bool:
        return bool(self.admissible_outer)


def _cluster_regions(cg: CGraph, cluster: int) -> list[int]:
    """Label each face of G by the face of G(cluster) that contains it."""
    g = cg.graph
    fs = g.faces
    cl = cg.cluster_of
    parent = list(range(len(fs)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in g.edges:
        if cl[u] == cluster and cl[v] == cluster:
            continue
        a, b = find(fs.face_of_dart[(u, v)]), find(fs.face_of_dart[(v, u)])
        if a != b:
            parent[a] = b
    return [find(f) for f in range(len(fs))]


def check_condition_ii(cg: CGraph, outer_faces: Iterable[int] | None = None) -> ConditionIIResult:
    """Find outer-face choices under which no cluster cycle encloses a foreign vertex.

    By default every face is tried; pass ``outer_faces`` to restrict the choice.

    A vertex ``x`` outside cluster ``mu`` is enclosed by a cycle of ``mu``
    exactly when ``x`` lies in a bounded face of the embedded ``G(mu)``. The
    faces of ``G`` are grouped by which face of ``G(mu)`` they fall in, so
    the test is one union-find pass per cluster.
    """
    g = cg.graph
    nf = len(g.faces)
    if outer_faces is None:
        outer_faces = range(nf)
    candidates = set(outer_faces)
    violation = None
    fod = g.faces.face_of_dart
    for mu, members in cg.clusters.items():
        if len(members) == g.vertex_count:
            continue
        region = _cluster_regions(cg, mu)
        foreign_regions: dict[int, int] = {}
        for x in g.vertices:
            if cg.cluster_of[x] == mu:
                continue
            r = region[fod[(x, g.rotation(x)[0])]]
            foreign_regions.setdefault(r, x)
        allowed = {f for f in candidates if len(foreign_regions) <= 1 and region[f] in foreign_regions}
        if violation is None:
            for f in sorted(candidates - allowed):
                bad = next(x for r, x in sorted(foreign_regions.items(), key=lambda t: t[1]) if r != region[f])
                violation = (mu, f, bad)
                break
        candidates = allowed
    return ConditionIIResult(frozenset(candidates), violation)


def is_cluster_separator(cg: CGraph, rho: Iterable[int] | Cycle) -> bool:
    """True if some cluster avoids ``rho`` yet has vertices on both sides."""
    sides = cycle_sides(cg.graph, rho)
    on_cycle = {cg.cluster_of[v] for v in sides.cycle.vertices}
    inside = {cg.cluster_of[v] for v in sides.inside} - on_cycle
    outside = {cg.cluster_of[v] for v in sides.outside} - on_cycle
    return bool(inside & outside)


def relabel_clusters(cg: CGraph, mapping: Mapping[int, int]) -> CGraph:
    return CGraph(cg.graph, {v: mapping[c] for v, c in cg.cluster_of.items()})


def induced_edges(cg: CGraph, cluster: int) -> list[tuple[int, int]]:
    cl = cg.cluster_of
    return [e for e in cg.graph.edges if cl[e[0]] == cluster and cl[e[1]] == cluster]


__all__ = [
    "CGraph",
    "ClusterComponents",
    "ConditionIIResult",
    "check_condition_ii",
    "cluster_components",
    "edge_key",
    "induced_edges",
    "is_cluster_separator",
    "relabel_clusters",
]
