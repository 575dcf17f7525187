"""Instance generators.

Every generator returns a 2-connected plane c-graph with a designated outer
face and dense cluster ids. Geometric families are laid out on concentric
circles and their rotations read off by sorting neighbours by angle; the
random family is built combinatorially.
"""

from __future__ import annotations

import math
import random
from typing import Callable, Mapping, Sequence

from ..cgraph import CGraph
from ..embed import EmbeddedGraph, add_vertex_in_face, edge_key, remove_edge, trace_face
from ..errors import BadParams
from ..saturate import insert_chords

Polar = tuple[float, float]  # (angle, level); levels grow outward


def _wrap(x: float) -> float:
    return (x + math.pi) % (2 * math.pi) - math.pi


def from_polar(
    polar: Mapping[int, Polar], edges: Sequence[tuple[int, int]], center: int | None = None
) -> EmbeddedGraph:
    """Embedding of a drawing in which every edge is a straight segment in (angle, level) space.

    Rotations are read off that strip picture, where a monotone merge of two
    rings never crosses itself; the optional ``center`` sits below the
    innermost level and sees its neighbours in angular order. The outer face
    is the one facing outward at the outermost vertex.
    """
    nbrs: dict[int, list[int]] = {v: [] for v in polar}
    if center is not None:
        nbrs[center] = []
    for u, v in edges:
        nbrs[u].append(v)
        nbrs[v].append(u)

    def direction(v: int, w: int) -> float:
        if w == center:
            return -math.pi / 2
        return math.atan2(polar[w][1] - polar[v][1], _wrap(polar[w][0] - polar[v][0]))

    rot = {}
    for v, ns in nbrs.items():
        if v == center:
            rot[v] = sorted(ns, key=lambda w: -polar[w][0])
        else:
            rot[v] = sorted(ns, key=lambda w: direction(v, w))
    top = max(polar, key=lambda v: (polar[v][1], -v))
    angles = [direction(top, w) for w in rot[top]]
    d = len(angles)
    for j in range(d):
        lo, hi = angles[j], angles[(j + 1) % d]
        if hi <= lo:
            hi += 2 * math.pi
        if lo < math.pi / 2 < hi or lo < math.pi / 2 + 2 * math.pi < hi:
            return EmbeddedGraph(rot, (rot[top][j], top))
    raise AssertionError("no outward corner at the outermost vertex")


def _ring(k: int, phase: float = 0.0) -> list[float]:
    return [phase + 2 * math.pi * i / k for i in range(k)]


def _dense(cluster_of: Mapping[int, int]) -> dict[int, int]:
    ids = {c: i for i, c in enumerate(sorted(set(cluster_of.values())))}
    return {v: ids[c] for v, c in cluster_of.items()}


def _assign(
    n_layers: Sequence[Sequence[int]], clustering: str, rng: random.Random, k: int,
    polar: Mapping[int, Polar] | None = None,
) -> dict[int, int]:
    """Cluster map for layered families.

    ``sectors`` cuts the plane into ``2k`` angular wedges, each given one of
    ``k`` random clusters; vertices without a position pick at random.
    """
    out = {}
    wedge = [rng.randrange(k) for _ in range(2 * k)]
    for i, layer in enumerate(n_layers):
        for v in layer:
            if clustering in ("per-level", "per-triangle", "per-ring"):
                out[v] = i
            elif clustering == "single":
                out[v] = 0
            elif clustering == "random":
                out[v] = rng.randrange(k)
            elif clustering == "sectors":
                if polar is None or v not in polar:
                    out[v] = rng.randrange(k)
                else:
                    out[v] = wedge[int((polar[v][0] % (2 * math.pi)) / (math.pi / k)) % (2 * k)]
            elif clustering == "alternating":
                out[v] = (i + layer.index(v)) % k
            else:
                raise BadParams(f"unknown clustering {clustering!r}")
    return _dense(out)


def _concentric(sizes: Sequence[int], phases: Sequence[float], rungs) -> tuple[dict, list, list]:
    """Rings listed outermost first; ``rungs(i, ring_above, ring)`` joins consecutive rings."""
    polar: dict[int, Polar] = {}
    edges: list[tuple[int, int]] = []
    rings: list[list[int]] = []
    nxt = 0
    levels = len(sizes)
    for i, (size, phase) in enumerate(zip(sizes, phases)):
        ring = list(range(nxt, nxt + size))
        nxt += size
        for v, t in zip(ring, _ring(size, phase)):
            polar[v] = (t, float(levels - i))
        edges += [(ring[j], ring[(j + 1) % size]) for j in range(size)]
        if rings:
            edges += rungs(i, rings[-1], ring, polar)
        rings.append(ring)
    return polar, edges, rings


def _spokes(step: int = 1, offset: int = 0):
    def rungs(i, above, ring, polar):
        return [(above[j], ring[j]) for j in range(len(ring)) if (i + j + offset) % step == 0]

    return rungs


def _zip_rungs(i, above, ring, polar):
    return _zip_rings(above, ring, polar)


def nested_triangles(levels: int, clustering: str = "per-triangle", seed: int = 0, k: int = 2) -> CGraph:
    """``levels`` concentric triangles, corresponding corners joined."""
    if levels < 1:
        raise BadParams("levels must be at least 1")
    polar, edges, rings = _concentric([3] * levels, [math.pi / 2] * levels, _spokes())
    return CGraph(from_polar(polar, edges), _assign(rings, clustering, random.Random(seed), k, polar))


def buckytube(circumference: int, length: int, clustering: str = "per-ring", seed: int = 0, k: int = 2) -> CGraph:
    """Hexagonal tube: ``length`` rings of ``circumference`` vertices, rungs in a brick pattern."""
    if circumference < 4 or circumference % 2 or length < 1:
        raise BadParams("circumference must be even and at least 4, length at least 1")
    polar, edges, rings = _concentric([circumference] * length, [0.0] * length, _spokes(2))
    return CGraph(from_polar(polar, edges), _assign(rings, clustering, random.Random(seed), k, polar))


def cylinder_grid(circumference: int, length: int, clustering: str = "per-ring", seed: int = 0, k: int = 2) -> CGraph:
    if circumference < 3 or length < 1:
        raise BadParams("circumference at least 3 and length at least 1 required")
    polar, edges, rings = _concentric([circumference] * length, [0.0] * length, _spokes())
    return CGraph(from_polar(polar, edges), _assign(rings, clustering, random.Random(seed), k, polar))


def _zip_rings(outer: Sequence[int], inner: Sequence[int], polar: Mapping[int, Polar]) -> list[tuple[int, int]]:
    """Triangulate the annulus between two rings by merging them in angle order."""
    base = polar[outer[0]][0]

    def ang(v):
        return (polar[v][0] - base) % (2 * math.pi)

    a = sorted(outer, key=ang)
    b = sorted(inner, key=ang)
    ta = [ang(v) for v in a] + [2 * math.pi]
    tb = [ang(v) for v in b] + [ang(b[0]) + 2 * math.pi]
    i = j = 0
    edges = {edge_key(a[0], b[0])}
    while i < len(a) or j < len(b):
        if j == len(b) or (i < len(a) and ta[i + 1] <= tb[j + 1]):
            i += 1
        else:
            j += 1
        edges.add(edge_key(a[i % len(a)], b[j % len(b)]))
    return sorted(edges)


def h_nested(
    h: int, levels: int, caps: bool = True, clustering: str = "per-ring", seed: int = 0, k: int = 2,
    sizes: str = "random",
) -> CGraph:
    """Nested cycles of at most ``h`` vertices with triangulated strips between them.

    With ``caps`` an inner hub sits inside the innermost cycle and ear
    vertices are hung on two outer edges.
    """
    if h < 3 or levels < 1:
        raise BadParams("h must be at least 3 and levels at least 1")
    rng = random.Random(seed)
    ring_sizes = [h if sizes == "fixed" else rng.randint(3, h) for _ in range(levels)]
    phases = [rng.uniform(0, 2 * math.pi / sz) for sz in ring_sizes]
    polar, edges, rings = _concentric(ring_sizes, phases, _zip_rungs)
    layers = [list(r) for r in rings]
    hub = None
    if caps:
        nxt = len(polar)
        hub = nxt
        nxt += 1
        edges += [(hub, v) for v in rings[-1]]
        layers[-1].append(hub)
        top = rings[0]
        for j in (0, len(top) // 2):
            a, b = top[j], top[(j + 1) % len(top)]
            mid = polar[a][0] + _wrap(polar[b][0] - polar[a][0]) / 2
            polar[nxt] = (mid, levels + 1.0)
            edges += [(a, nxt), (b, nxt)]
            layers[0].append(nxt)
            nxt += 1
    g = from_polar(polar, sorted({edge_key(*e) for e in edges}), center=hub)
    return CGraph(g, _assign(layers, clustering, rng, k, polar))


def _stacked_triangulation(n: int, rng: random.Random) -> dict[int, list[int]]:
    rot: dict[int, list[int]] = {0: [1, 2], 1: [2, 0], 2: [0, 1]}
    tris = [((0, 1), (1, 2), (2, 0))]
    for v in range(3, n):
        i = rng.randrange(len(tris))
        face = tris.pop(i)
        add_vertex_in_face(rot, v, list(face))
        tris.extend(tuple(trace_face(rot, d)) for d in face)
    return rot


def _faces(rot: Mapping[int, Sequence[int]]) -> list[list[tuple[int, int]]]:
    seen = set()
    out = []
    for v in sorted(rot):
        for w in rot[v]:
            if (v, w) not in seen:
                f = trace_face(rot, (v, w))
                seen.update(f)
                out.append(f)
    return out


def _flip(rot: dict[int, list[int]], u: int, v: int) -> bool:
    """Flip edge ``uv`` of a triangulation; False if the flip is not allowed."""
    f1 = trace_face(rot, (u, v))
    f2 = trace_face(rot, (v, u))
    if len(f1) != 3 or len(f2) != 3 or len(rot[u]) <= 3 or len(rot[v]) <= 3:
        return False
    a = f1[1][1]
    b = f2[1][1]
    if a == b or b in rot[a]:
        return False
    remove_edge(rot, u, v)
    quad = trace_face(rot, (v, a))
    walk = [d[0] for d in quad]
    insert_chords(rot, quad, [(walk.index(a), walk.index(b))])
    return True


def random_planar(
    n: int, max_face: int = 6, seed: int = 0, clusters: int = 3, disconnect: float = 0.3,
    flips: int | None = None, deletions: float = 0.5,
) -> CGraph:
    """Random 2-connected plane c-graph with faces of length at most ``max_face``.

    A stacked triangulation is shuffled by edge flips; then random edges are
    deleted while the two faces they separate share no other vertex and the
    merged face stays within ``max_face``. Clusters are grown breadth-first
    from random seeds and a ``disconnect`` fraction of vertices is then
    reassigned at random.
    """
    if n < 3 or max_face < 3 or clusters < 1:
        raise BadParams("need n >= 3, max_face >= 3, clusters >= 1")
    rng = random.Random(seed)
    rot = _stacked_triangulation(n, rng)
    for _ in range(flips if flips is not None else 2 * n):
        u = rng.randrange(n)
        v = rng.choice(rot[u])
        _flip(rot, u, v)
    edges = sorted({edge_key(u, v) for u in rot for v in rot[u]})
    rng.shuffle(edges)
    budget = int(deletions * len(edges))
    for u, v in edges:
        if budget <= 0:
            break
        if len(rot[u]) <= 2 or len(rot[v]) <= 2:
            continue
        f1 = trace_face(rot, (u, v))
        f2 = trace_face(rot, (v, u))
        if len(f1) + len(f2) - 2 > max_face:
            continue
        if {d[0] for d in f1} & {d[0] for d in f2} != {u, v}:
            continue
        remove_edge(rot, u, v)
        budget -= 1
    faces = _faces(rot)
    outer = max(faces, key=len)[0]
    g = EmbeddedGraph(rot, outer)
    return CGraph(g, _grow_clusters(g, clusters, disconnect, rng))


def _grow_clusters(g: EmbeddedGraph, k: int, disconnect: float, rng: random.Random) -> dict[int, int]:
    vs = list(g.vertices)
    k = min(k, len(vs))
    seeds = rng.sample(vs, k)
    cl = {s: i for i, s in enumerate(seeds)}
    frontier = list(seeds)
    while len(cl) < len(vs):
        rng.shuffle(frontier)
        nxt = []
        for v in frontier:
            for w in g.rotation(v):
                if w not in cl:
                    cl[w] = cl[v]
                    nxt.append(w)
        frontier = nxt or [v for v in vs if v in cl]
    for v in vs:
        if rng.random() < disconnect:
            cl[v] = rng.randrange(k)
    return _dense(cl)


def cluster_separator(kind: str = "basic", seed: int = 0, size: int = 4, extra: int = 4) -> CGraph:
    """Instances where a cycle avoiding cluster 0 has cluster-0 vertices on both sides.

    ``basic``: a triangle of one cluster with a hub of cluster 0 inside and
    outside. ``ring``: a ring whose two other clusters alternate, so no
    cluster has its own enclosing cycle. ``nested``: several such rings.
    ``random``: a ring in random non-zero clusters with random stacked
    vertices added.
    """
    rng = random.Random(seed)
    if kind == "basic":
        rings = [[1, 1, 1]]
    elif kind == "ring":
        rings = [[1 + i % 2 for i in range(2 * max(2, size // 2))]]
    elif kind == "nested":
        rings = [[1 + (i + r) % 2 for i in range(2 * max(2, size // 2))] for r in range(3)]
    elif kind == "random":
        rings = [[rng.randint(1, 3) for _ in range(max(3, size))]]
    else:
        raise BadParams(f"unknown cluster_separator kind {kind!r}")
    polar, edges, ids = _concentric([len(c) for c in rings], [0.3 * r for r in range(len(rings))], _zip_rungs)
    cl = {v: c for ring, colors in zip(ids, rings) for v, c in zip(ring, colors)}
    inner_hub, outer_hub = len(polar), len(polar) + 1
    cl[inner_hub] = cl[outer_hub] = 0
    edges += [(inner_hub, v) for v in ids[-1]]
    g = from_polar(polar, sorted({edge_key(*e) for e in edges}), center=inner_hub)
    rot = {v: list(r) for v, r in g.rotations.items()}
    add_vertex_in_face(rot, outer_hub, g.faces[g.outer_face])
    g = EmbeddedGraph(rot, (outer_hub, rot[outer_hub][0]))
    if kind == "random":
        g, cl = _stack_random(g, cl, extra, rng)
    return CGraph(g, _dense(cl))


def _stack_random(g: EmbeddedGraph, cl: dict[int, int], count: int, rng: random.Random):
    rot = {v: list(r) for v, r in g.rotations.items()}
    outer_darts = set(g.faces[g.outer_face])
    cl = dict(cl)
    nxt = max(rot) + 1
    colors = sorted(set(cl.values()))
    for _ in range(count):
        faces = [f for f in _faces(rot) if not (set(f) & outer_darts)]
        face = rng.choice(faces)
        add_vertex_in_face(rot, nxt, face)
        cl[nxt] = rng.choice(colors)
        nxt += 1
    return EmbeddedGraph(rot, g.outer), cl


FAMILIES: dict[str, Callable[..., CGraph]] = {
    "nested_triangles": nested_triangles,
    "buckytube": buckytube,
    "cylinder_grid": cylinder_grid,
    "h_nested": h_nested,
    "random_planar": random_planar,
    "cluster_separator": cluster_separator,
}


def generate(family: str, params: Mapping | None = None, seed: int = 0) -> CGraph:
    if family not in FAMILIES:
        raise BadParams(f"unknown family {family!r}; choose from {sorted(FAMILIES)}")
    try:
        return FAMILIES[family](**dict(params or {}), seed=seed)
    except TypeError as exc:
        raise BadParams(str(exc)) from exc
