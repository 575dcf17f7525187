"""Candidate saturating edges and chosen saturations.

Chords live inside one face. Where they attach is recorded as occurrence
positions in the face's boundary walk, so faces that visit a vertex twice
are handled; the reference vertex of a boundary component is its first
occurrence in the walk.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .cgraph import CGraph
from .embed import EmbeddedGraph, edge_key
from .errors import ForeignEdge
from .unionfind import RollbackUnionFind


@dataclass(frozen=True, order=True)
class CandidateEdge:
    face: int
    positions: tuple[int, int]
    u: int
    v: int
    cluster: int

    @property
    def endpoints(self) -> tuple[int, int]:
        return (self.u, self.v)

    @property
    def key(self) -> tuple[int, int, int]:
        return (self.face, *edge_key(self.u, self.v))


def chords_cross(a: tuple[int, int], b: tuple[int, int]) -> bool:
    """Strict interleaving of two chords given by walk positions."""
    a0, a1 = sorted(a)
    b0, b1 = sorted(b)
    return (a0 < b0 < a1 < b1) or (b0 < a0 < b1 < a1)


def _face_components(walk: Sequence[int], cluster_of: Mapping[int, int], mu: int) -> list[int]:
    """Components of the closed boundary walk induced by ``mu``.

    Returns, per component, the walk position of its reference vertex,
    sorted by position.
    """
    k = len(walk)
    parent = {v: v for v in walk if cluster_of[v] == mu}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(k):
        a, b = walk[i], walk[(i + 1) % k]
        if a in parent and b in parent:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
    first: dict[int, int] = {}
    for i, v in enumerate(walk):
        if v in parent:
            first.setdefault(find(v), i)
    return sorted(first.values())


def candidate_saturating_edges(cg: CGraph) -> list[CandidateEdge]:
    g = cg.graph
    fs = g.faces
    comp = cg.components.component_of
    cl = cg.cluster_of
    out: list[CandidateEdge] = []
    for fid in range(len(fs)):
        walk = fs.walk(fid)
        for mu in sorted({cl[v] for v in walk}):
            if cg.components.is_connected(mu):
                continue
            refs = _face_components(walk, cl, mu)
            for i, pa in enumerate(refs):
                for pb in refs[i + 1:]:
                    u, v = walk[pa], walk[pb]
                    if comp[u] != comp[v]:
                        out.append(CandidateEdge(fid, (pa, pb), u, v, mu))
    return out


@dataclass
class SaturationSet:
    chosen: list[CandidateEdge] = field(default_factory=list)

    def __post_init__(self):
        self.chosen = sorted(self.chosen)

    @property
    def by_face(self) -> dict[int, list[CandidateEdge]]:
        out: dict[int, list[CandidateEdge]] = {}
        for c in self.chosen:
            out.setdefault(c.face, []).append(c)
        return out

    def __len__(self) -> int:
        return len(self.chosen)

    def __iter__(self):
        return iter(self.chosen)

    def triples(self) -> list[tuple[int, int, int]]:
        return [(c.face, c.u, c.v) for c in self.chosen]



def connectable(cg: CGraph, candidates: Sequence[CandidateEdge] | None = None) -> bool:
    """Whether all candidate edges together, crossings ignored, connect every cluster.

    A necessary condition for a saturation to exist.
    """
    comps = cg.components
    uf = RollbackUnionFind(comps.component_of.values())
    for e in candidate_saturating_edges(cg) if candidates is None else candidates:
        uf.union(comps.component_of[e.u], comps.component_of[e.v])
    for parts in comps.per_cluster.values():
        roots = {uf.find(comps.component_of[next(iter(part))]) for part in parts}
        if len(roots) > 1:
            return False
    return True

def resolve_triples(cg: CGraph, triples: Iterable[Sequence[int]], candidates=None) -> SaturationSet:
    """Map ``(face, u, v)`` triples onto candidate edges of ``cg``."""
    cands = candidates if candidates is not None else candidate_saturating_edges(cg)
    index = {c.key: c for c in cands}
    chosen = []
    for f, u, v in triples:
        key = (int(f), *edge_key(int(u), int(v)))
        if key not in index:
            raise ForeignEdge(f"({f}, {u}, {v}) is not a candidate saturating edge")
        chosen.append(index[key])
    return SaturationSet(chosen)


def noncrossing(chords: Sequence[CandidateEdge]) -> bool:
    by_face: dict[int, list[CandidateEdge]] = {}
    for c in chords:
        by_face.setdefault(c.face, []).append(c)
    for group in by_face.values():
        for i, a in enumerate(group):
            for b in group[i + 1:]:
                if chords_cross(a.positions, b.positions):
                    return False
    return True


def clusters_connected_with(cg: CGraph, extra: Iterable[tuple[int, int]]) -> bool:
    comps = cg.components
    parent: dict[int, int] = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in extra:
        parent[find(comps.component_of[u])] = find(comps.component_of[v])
    for mu, parts in comps.per_cluster.items():
        roots = {find(comps.component_of[next(iter(p))]) for p in parts}
        if len(roots) > 1:
            return False
    return True


def is_valid_saturation(cg: CGraph, s: SaturationSet | Iterable[CandidateEdge]) -> bool:
    chosen = list(s.chosen if isinstance(s, SaturationSet) else s)
    known = set(candidate_saturating_edges(cg))
    for c in chosen:
        if c not in known:
            raise ForeignEdge(f"{c} is not a candidate of this graph")
    if not noncrossing(chosen):
        return False
    return clusters_connected_with(cg, [(c.u, c.v) for c in chosen])


def insert_chords(
    rot: dict[int, list[int]], face_darts: Sequence[tuple[int, int]], chords: Sequence[tuple[int, int]]
) -> None:
    """Draw pairwise noncrossing chords inside one face, in place.

    ``chords`` are pairs of walk positions in ``face_darts``. Each sub-face
    is tracked as a list of corners ``(position, vertex, entering dart)``.
    """
    k = len(face_darts)
    walk = [d[0] for d in face_darts]
    corners = [(i, walk[i], face_darts[i - 1]) for i in range(k)]
    subfaces = [corners]
    for pa, pb in chords:
        for idx, sf in enumerate(subfaces):
            labels = [c[0] for c in sf]
            if pa in labels and pb in labels:
                break
        else:
            raise ValueError(f"chord {pa}-{pb} crosses an earlier chord")
        ia, ib = labels.index(pa), labels.index(pb)
        if ia > ib:
            ia, ib = ib, ia
        (la, va, ea), (lb, vb, eb) = sf[ia], sf[ib]
        insert_after_vertex(rot, va, ea[0], vb)
        insert_after_vertex(rot, vb, eb[0], va)
        part_a = [(la, va, (vb, va))] + sf[ia + 1:ib + 1]
        part_b = [(lb, vb, (va, vb))] + sf[ib + 1:] + sf[:ia + 1]
        subfaces[idx:idx + 1] = [part_a, part_b]


def insert_after_vertex(rot: dict[int, list[int]], v: int, after: int, new: int) -> None:
    r = rot[v]
    r.insert(r.index(after) + 1, new)


def apply_saturation(cg: CGraph, s: SaturationSet | Iterable[CandidateEdge]) -> CGraph:
    """The super c-graph obtained by drawing the chosen chords."""
    chosen = list(s.chosen if isinstance(s, SaturationSet) else s)
    g = cg.graph
    rot = {v: list(r) for v, r in g.rotations.items()}
    by_face: dict[int, list[CandidateEdge]] = {}
    for c in chosen:
        by_face.setdefault(c.face, []).append(c)
    for fid, group in sorted(by_face.items()):
        insert_chords(rot, g.faces[fid], [c.positions for c in group])
    return CGraph(EmbeddedGraph(rot, g.outer), cg.cluster_of)


def locate_chords(base: EmbeddedGraph, sup: EmbeddedGraph) -> list[tuple[int, int, int]]:
    """Find, for each edge of ``sup`` missing from ``base``, the face of ``base`` holding it."""
    out = []
    fod = base.faces.face_of_dart
    for u, v in sup.edges:
        if base.has_edge(u, v):
            continue
        r = sup.rotation(u)
        i = r.index(v)
        p = None
        for step in range(1, len(r)):
            cand = r[i - step]
            if base.has_edge(u, cand):
                p = cand
                break
        if p is None:
            raise ValueError(f"vertex {u} has no base edge")
        out.append((fod[(p, u)], u, v))
    return sorted(out)


@dataclass(frozen=True)
class DiamondGraph:
    """The input graph plus every candidate saturating edge, unembedded."""

    vertices: tuple[int, ...]
    base_edges: tuple[tuple[int, int], ...]
    star_edges: dict[tuple[int, int], tuple[int, ...]]
    cluster_of: Mapping[int, int]
    candidates: tuple[CandidateEdge, ...]

    @property
    def edge_count(self) -> int:
        return len(self.base_edges) + len(self.star_edges)


def build_diamond(cg: CGraph) -> DiamondGraph:
    cands = candidate_saturating_edges(cg)
    star: dict[tuple[int, int], list[int]] = {}
    for c in cands:
        star.setdefault(edge_key(c.u, c.v), []).append(c.face)
    return DiamondGraph(
        cg.graph.vertices,
        cg.graph.edges,
        {e: tuple(fs) for e, fs in sorted(star.items())},
        dict(cg.cluster_of),
        tuple(cands),
    )
