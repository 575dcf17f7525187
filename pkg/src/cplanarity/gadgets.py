"""Equivalence-preserving rewrites that make a c-graph 3-connected.

``edge_gadget`` replaces every edge ``(c, x)`` (``c`` the smaller id) by a
subdivision vertex ``w`` and two parallel paths ``c-w1-x``, ``c-w2-x`` drawn
in the two faces beside the edge, plus ``w1-w`` and ``w2-w``. The three new
vertices join the cluster of ``c``.

``vertex_ring_gadget`` subdivides every edge next to each endpoint and joins
consecutive subdivision vertices around each vertex into a ring.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import networkx as nx

from .cgraph import CGraph
from .embed import EmbeddedGraph
from .errors import PreconditionDegree

Origin = tuple  # ("original", v) or ("gadget", kind, anchor)


@dataclass(frozen=True)
class Provenance:
    origin: Mapping[int, Origin]

    def originals(self) -> dict[int, int]:
        """Transformed id -> input id, for vertices that survive."""
        return {v: o[1] for v, o in self.origin.items() if o[0] == "original"}

    def then(self, later: "Provenance") -> "Provenance":
        """Compose with a provenance computed on this transformation's output."""
        out = {}
        for v, o in later.origin.items():
            out[v] = self.origin[o[1]] if o[0] == "original" else o
        return Provenance(out)

    def to_json(self) -> list:
        rows = []
        for v in sorted(self.origin):
            o = self.origin[v]
            if o[0] == "original":
                rows.append({"vertex": v, "original": o[1]})
            else:
                rows.append({"vertex": v, "gadget": o[1], "anchor": list(o[2])})
        return rows

    @classmethod
    def identity(cls, vertices) -> "Provenance":
        return cls({v: ("original", v) for v in vertices})


def edge_gadget(cg: CGraph) -> tuple[CGraph, Provenance]:
    g = cg.graph
    rot = {v: list(r) for v, r in g.rotations.items()}
    cl = dict(cg.cluster_of)
    origin: dict[int, Origin] = {v: ("original", v) for v in g.vertices}
    outer = g.outer
    nxt = max(g.vertices) + 1
    for c, x in g.edges:
        w, w1, w2 = nxt, nxt + 1, nxt + 2
        nxt += 3
        i = rot[c].index(x)
        rot[c][i:i + 1] = [w1, w, w2]
        j = rot[x].index(c)
        rot[x][j:j + 1] = [w2, w, w1]
        rot[w] = [c, w1, x, w2]
        rot[w1] = [w, c, x]
        rot[w2] = [w, x, c]
        for v in (w, w1, w2):
            cl[v] = cl[c]
        origin[w] = ("gadget", "edge-sub", (c, x))
        origin[w1] = ("gadget", "edge-left", (c, x))
        origin[w2] = ("gadget", "edge-right", (c, x))
        if outer == (c, x):
            outer = (c, w1)
        elif outer == (x, c):
            outer = (x, w2)
    return CGraph(EmbeddedGraph(rot, outer), cl), Provenance(origin)


def vertex_ring_gadget(cg: CGraph) -> tuple[CGraph, Provenance]:
    g = cg.graph
    for v in g.vertices:
        if g.degree(v) < 3:
            raise PreconditionDegree(f"vertex {v} has degree {g.degree(v)} < 3")
    ring: dict[tuple[int, int], int] = {}
    nxt = max(g.vertices) + 1
    for d in sorted(g.darts()):
        ring[d] = nxt
        nxt += 1
    rot: dict[int, list[int]] = {}
    cl: dict[int, int] = {}
    origin: dict[int, Origin] = {}
    for c in g.vertices:
        r = g.rotation(c)
        k = len(r)
        rot[c] = [ring[(c, x)] for x in r]
        cl[c] = cg.cluster_of[c]
        origin[c] = ("original", c)
        for i, x in enumerate(r):
            v = ring[(c, x)]
            rot[v] = [c, ring[(c, r[i - 1])], ring[(x, c)], ring[(c, r[(i + 1) % k])]]
            cl[v] = cg.cluster_of[c]
            origin[v] = ("gadget", "ring", (c, x))
    outer = None
    if g.outer is not None:
        a, b = g.outer
        outer = (ring[(a, b)], ring[(b, a)])
    return CGraph(EmbeddedGraph(rot, outer), cl), Provenance(origin)


def make_three_connected(cg: CGraph) -> tuple[CGraph, Provenance]:
    first, p1 = edge_gadget(cg)
    second, p2 = vertex_ring_gadget(first)
    return second, p1.then(p2)


def to_networkx(g: EmbeddedGraph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(g.edges)
    return h


def _cut_vertex(adj: list[list[int]], skip: int) -> int | None:
    """An articulation point of the graph minus ``skip``; -1 if that graph is disconnected."""
    n = len(adj)
    start = 1 if skip == 0 else 0
    disc = [-1] * n
    low = [0] * n
    disc[start] = low[start] = 0
    t = 1
    root_children = 0
    stack = [(start, -1, iter(adj[start]))]
    while stack:
        v, parent, it = stack[-1]
        for w in it:
            if w == skip or w == parent:
                continue
            if disc[w] < 0:
                disc[w] = low[w] = t
                t += 1
                stack.append((w, v, iter(adj[w])))
                break
            low[v] = min(low[v], disc[w])
        else:
            stack.pop()
            if parent < 0:
                continue
            low[parent] = min(low[parent], low[v])
            if parent == start:
                root_children += 1
            elif low[v] >= disc[parent]:
                return parent
    if t < n - (skip >= 0):
        return -1
    return start if root_children > 1 else None


def separation_pair(g: EmbeddedGraph) -> tuple[int, ...] | None:
    """A cut vertex or separation pair of ``g``, or ``None`` if 3-connected.

    Runs one articulation-point search per deleted vertex, so it is
    quadratic; intended for desk-scale verification.
    """
    ids = {v: i for i, v in enumerate(g.vertices)}
    verts = list(g.vertices)
    adj = [[ids[u] for u in g.rotation(v)] for v in verts]
    if len(verts) < 3:
        return (verts[0],) if verts else None
    cut = _cut_vertex(adj, -1)
    if cut is not None:
        return (verts[cut],) if cut >= 0 else (verts[0],)
    for i, v in enumerate(verts):
        ap = _cut_vertex(adj, i)
        if ap == -1:
            return (v,)
        if ap is not None:
            return (v, verts[ap])
    return None


def is_three_connected(g: EmbeddedGraph) -> bool:
    return g.vertex_count >= 4 and separation_pair(g) is None
