"""Cycle-stars: what one side of a separating cycle contributes to cluster connectivity.

A cycle-star is a cycle ``rho`` plus star vertices drawn on one side, each
adjacent only to same-cluster cycle vertices. Canonical stars have at least
two attachments, attachments are pairwise disjoint and noncrossing, so the
canonical cycle-stars over ``rho`` are exactly the noncrossing partitions of
its vertex sequence whose non-singleton blocks are monochromatic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

from .cgraph import CGraph, is_cluster_separator
from .embed import Cycle, EmbeddedGraph, add_vertex_in_face, cycle_sides, edge_key, trace_face
from .errors import ClusterSeparatorCycle, NotCConnected

SIDES = ("inner", "outer")


@dataclass(frozen=True, order=True)
class Star:
    cluster: int
    attach: tuple[int, ...]


@dataclass(frozen=True)
class CycleStar:
    rho: Cycle
    colors: tuple[int, ...]
    stars: tuple[Star, ...]
    side: str = "inner"

    def __post_init__(self):
        if self.side not in SIDES:
            raise ValueError(f"side must be one of {SIDES}, not {self.side!r}")
        pos = {v: i for i, v in enumerate(self.rho.vertices)}
        stars = tuple(sorted(
            (Star(s.cluster, tuple(sorted(s.attach, key=pos.__getitem__))) for s in self.stars),
            key=lambda s: pos[s.attach[0]],
        ))
        object.__setattr__(self, "stars", stars)

    @property
    def cluster_of(self) -> dict[int, int]:
        return dict(zip(self.rho.vertices, self.colors))

    def blocks(self) -> frozenset[frozenset[int]]:
        return frozenset(frozenset(s.attach) for s in self.stars)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CycleStar):
            return NotImplemented
        return (
            self.rho.vertices == other.rho.vertices
            and self.colors == other.colors
            and self.blocks() == other.blocks()
        )

    def __hash__(self) -> int:
        return hash((self.rho.vertices, self.colors, self.blocks()))

    def check(self) -> None:
        """Raise ``ValueError`` if the canonical-form invariants fail."""
        pos = {v: i for i, v in enumerate(self.rho.vertices)}
        col = self.cluster_of
        seen: set[int] = set()
        for s in self.stars:
            if len(s.attach) < 2:
                raise ValueError(f"star {s} has fewer than two attachments")
            if any(col[a] != s.cluster for a in s.attach):
                raise ValueError(f"star {s} is not monochromatic")
            if seen & set(s.attach):
                raise ValueError(f"star {s} shares an attachment")
            seen |= set(s.attach)
        for i, a in enumerate(self.stars):
            for b in self.stars[i + 1:]:
                if _blocks_cross([pos[x] for x in a.attach], [pos[x] for x in b.attach]):
                    raise ValueError(f"stars {a} and {b} cross")

    def to_json(self) -> dict:
        return {
            "rho": list(self.rho.vertices),
            "stars": [{"cluster": s.cluster, "attach": list(s.attach)} for s in self.stars],
        }


def _blocks_cross(a: Sequence[int], b: Sequence[int]) -> bool:
    for i, x0 in enumerate(a):
        for x1 in a[i + 1:]:
            lo, hi = min(x0, x1), max(x0, x1)
            inner = [y for y in b if lo < y < hi]
            if inner and len(inner) < len(b):
                return True
    return False


def noncrossing_partitions(colors: Sequence[int]) -> Iterator[list[list[int]]]:
    """Noncrossing partitions of ``range(len(colors))`` with monochromatic blocks.

    The block holding the first free position is chosen first, smallest
    first; the gaps it leaves are then partitioned independently.
    """

    def block_extensions(start: int, hi: int, color: int) -> Iterator[list[int]]:
        yield []
        for j in range(start, hi):
            if colors[j] == color:
                for tail in block_extensions(j + 1, hi, color):
                    yield [j] + tail

    def product(gaps: list[tuple[int, int]]) -> Iterator[list[list[int]]]:
        if not gaps:
            yield []
            return
        (lo, hi), rest = gaps[0], gaps[1:]
        for head in interval(lo, hi):
            for tail in product(rest):
                yield head + tail

    def interval(lo: int, hi: int) -> Iterator[list[list[int]]]:
        if lo >= hi:
            yield []
            return
        for ext in block_extensions(lo + 1, hi, colors[lo]):
            block = [lo] + ext
            bounds = block + [hi]
            gaps = [(bounds[i] + 1, bounds[i + 1]) for i in range(len(block))]
            for sub in product(gaps):
                yield [block] + sub

    yield from interval(0, len(colors))


def enumerate_cycle_stars(cg: CGraph, rho: Cycle | Sequence[int], side: str = "inner") -> Iterator[CycleStar]:
    rho = rho if isinstance(rho, Cycle) else Cycle(tuple(rho))
    colors = tuple(cg.cluster_of[v] for v in rho.vertices)
    vs = rho.vertices
    for part in noncrossing_partitions(colors):
        stars = tuple(Star(colors[b[0]], tuple(vs[i] for i in b)) for b in part if len(b) > 1)
        yield CycleStar(rho, colors, stars, side)


def contract_to_cycle_star(witness: CGraph, rho: Cycle | Sequence[int], side: str) -> CycleStar:
    """Summarize the cluster connectivity that ``side`` of ``rho`` provides."""
    if side not in SIDES:
        raise ValueError(f"side must be one of {SIDES}, not {side!r}")
    g = witness.graph
    sides = cycle_sides(g, rho)
    if is_cluster_separator(witness, sides.cycle):
        raise ClusterSeparatorCycle("cycle separates a cluster it avoids")
    if not witness.is_c_connected():
        raise NotCConnected(f"clusters {witness.disconnected_clusters()} are disconnected")
    cyc = sides.cycle
    on_rho = cyc.vertex_set
    region = (sides.inside if side == "inner" else sides.outside) | on_rho
    side_faces = sides.inside_faces if side == "inner" else sides.outside_faces
    fod = g.faces.face_of_dart
    cl = witness.cluster_of
    rho_clusters = {cl[v] for v in on_rho}

    parent = {v: v for v in region if cl[v] in rho_clusters}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in g.edges:
        if u not in parent or v not in parent or cl[u] != cl[v]:
            continue
        if u in on_rho and v in on_rho and edge_key(u, v) not in cyc.edge_set:
            if fod[(u, v)] not in side_faces:
                continue
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv

    groups: dict[int, list[int]] = {}
    for v in cyc.vertices:
        groups.setdefault(find(v), []).append(v)
    stars = tuple(Star(cl[a[0]], tuple(a)) for a in groups.values() if len(a) > 1)
    return CycleStar(cyc, tuple(cl[v] for v in cyc.vertices), stars, side)


def stellate(
    cs: CycleStar, mode: str, first_vertex: int | None = None, first_cluster: int | None = None
) -> CGraph:
    """Realize ``cs`` on one side of its cycle and triangulate that side.

    Fresh vertices are numbered from ``first_vertex`` and apex clusters from
    ``first_cluster`` (both default to one past the largest id in use). The
    outer face is designated by the dart ``(v1, v0)`` of the cycle: it is the
    cycle face itself in inner mode and an apex triangle in outer mode.
    """
    if mode not in SIDES:
        raise ValueError(f"mode must be one of {SIDES}, not {mode!r}")
    vs = cs.rho.vertices
    k = len(vs)
    cl = cs.cluster_of
    nxt = max(vs) + 1 if first_vertex is None else first_vertex
    nxt_cluster = max(cl.values()) + 1 if first_cluster is None else first_cluster
    rot: dict[int, list[int]] = {v: [vs[i - 1], vs[(i + 1) % k]] for i, v in enumerate(vs)}
    protected = (vs[0], vs[1]) if mode == "outer" else (vs[1], vs[0])
    cluster_of = dict(cl)

    def open_faces() -> list[list[tuple[int, int]]]:
        seen: set[tuple[int, int]] = set(trace_face(rot, protected))
        out = []
        for v in rot:
            for w in rot[v]:
                if (v, w) not in seen:
                    f = trace_face(rot, (v, w))
                    seen.update(f)
                    out.append(f)
        return out

    for star in cs.stars:
        want = set(star.attach)
        face = next(f for f in open_faces() if want <= {d[1] for d in f})
        add_vertex_in_face(rot, nxt, [d for d in face if d[1] in want])
        cluster_of[nxt] = star.cluster
        nxt += 1
    for face in sorted(open_faces(), key=min):
        add_vertex_in_face(rot, nxt, face)
        cluster_of[nxt] = nxt_cluster
        nxt += 1
        nxt_cluster += 1
    return CGraph(EmbeddedGraph(rot, (vs[1], vs[0])), cluster_of)


def catalan(k: int) -> int:
    from math import comb

    return comb(2 * k, k) // (k + 1)


def cycle_star_from_json(data: Mapping, cluster_of: Mapping[int, int], side: str = "inner") -> CycleStar:
    rho = Cycle(tuple(int(v) for v in data["rho"]))
    stars = tuple(Star(int(s["cluster"]), tuple(int(a) for a in s["attach"])) for s in data["stars"])
    return CycleStar(rho, tuple(cluster_of[v] for v in rho.vertices), stars, side)
