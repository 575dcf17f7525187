"""Balanced simple-cycle separators of 2-connected plane graphs.

The generic separator grows a disk of inner faces in breadth-first order
over the dual graph. A face joins the disk only when it meets the disk's
boundary in one contiguous path and its remaining vertices are untouched,
so the boundary stays a simple cycle of the host graph at every step. Among
the balanced states seen, the shortest boundary wins.

The nested separator peels vertex layers from the outer face and returns a
layer cycle of length at most ``h`` that splits the graph most evenly.
"""

from __future__ import annotations

import heapq
import math
from collections import Counter, deque
from dataclasses import dataclass
from typing import Mapping, Sequence

from .embed import Cycle, EmbeddedGraph, cycle_sides
from .errors import NotNested, NotTwoConnected, TooSmall

UNTOUCHED, BOUNDARY, INTERIOR = 0, 1, 2


@dataclass(frozen=True)
class SeparatorReport:
    cycle: Cycle
    inside_count: int
    outside_count: int

    @property
    def size(self) -> int:
        return len(self.cycle)

    @property
    def max_side(self) -> int:
        return max(self.inside_count, self.outside_count)

    def is_balanced(self, n: int) -> bool:
        return self.max_side <= math.ceil(2 * n / 3)

    def to_json(self) -> dict:
        return {
            "cycle": list(self.cycle.vertices),
            "inside": self.inside_count,
            "outside": self.outside_count,
            "size": self.size,
        }


def _report(g: EmbeddedGraph, cycle: Cycle) -> SeparatorReport:
    sides = cycle_sides(g, cycle)
    return SeparatorReport(sides.cycle, len(sides.inside), len(sides.outside))


def _dual_distances(g: EmbeddedGraph, source: int) -> list[int]:
    fs = g.faces
    dist = [-1] * len(fs)
    dist[source] = 0
    queue = deque([source])
    while queue:
        f = queue.popleft()
        for u, v in fs[f]:
            h = fs.face_of_dart[(v, u)]
            if dist[h] < 0:
                dist[h] = dist[f] + 1
                queue.append(h)
    return dist


class _Disk:
    """A growing disk of faces whose boundary is a simple cycle."""

    def __init__(self, g: EmbeddedGraph, start: int, colors: Mapping[int, int] | None = None):
        self.g = g
        self.fs = g.faces
        self.colors = colors
        self.state = {v: UNTOUCHED for v in g.vertices}
        self.in_region = [False] * len(self.fs)
        self.boundary = 0
        self.interior = 0
        self.per_color: Counter = Counter()
        self.repeated = 0
        self.in_region[start] = True
        for u, _ in self.fs[start]:
            self._set(u, BOUNDARY)

    def _set(self, v: int, state: int) -> None:
        old = self.state[v]
        self.state[v] = state
        if old == BOUNDARY:
            self.boundary -= 1
            self._count(v, -1)
        elif old == INTERIOR:
            self.interior -= 1
        if state == BOUNDARY:
            self.boundary += 1
            self._count(v, 1)
        elif state == INTERIOR:
            self.interior += 1

    def _count(self, v: int, delta: int) -> None:
        if self.colors is None:
            return
        c = self.colors[v]
        before = self.per_color[c]
        after = before + delta
        self.per_color[c] = after
        self.repeated += (after if after >= 2 else 0) - (before if before >= 2 else 0)

    @property
    def coverable(self) -> int:
        """Boundary vertices whose cluster occurs at least twice on the boundary."""
        return self.boundary if self.colors is None else self.repeated

    def shared_run(self, f: int) -> tuple[int, int] | None:
        """(start index, length) of the darts of ``f`` shared with the disk, if addable."""
        darts = self.fs[f]
        k = len(darts)
        fod = self.fs.face_of_dart
        shared = [self.in_region[fod[(v, u)]] for u, v in darts]
        r = sum(shared)
        if r == 0 or r == k:
            return None
        starts = [i for i in range(k) if shared[i] and not shared[i - 1]]
        if len(starts) != 1:
            return None
        s = starts[0]
        for j in range(r + 1, k):
            if self.state[darts[(s + j) % k][0]] != UNTOUCHED:
                return None
        return s, r

    def add(self, f: int, run: tuple[int, int]) -> None:
        darts = self.fs[f]
        k = len(darts)
        s, r = run
        self.in_region[f] = True
        for j in range(1, r):
            self._set(darts[(s + j) % k][0], INTERIOR)
        for j in range(r + 1, k):
            self._set(darts[(s + j) % k][0], BOUNDARY)

    def cycle(self) -> Cycle:
        fod = self.fs.face_of_dart
        succ = {}
        for f, inside in enumerate(self.in_region):
            if inside:
                for u, v in self.fs[f]:
                    if not self.in_region[fod[(v, u)]]:
                        succ[u] = v
        start = min(succ)
        out = [start]
        v = succ[start]
        while v != start:
            out.append(v)
            v = succ[v]
        return Cycle(tuple(out))


def _grow(g: EmbeddedGraph, start: int, outer: int, colors=None):
    """Replay disk growth from ``start``; yield the disk after every step."""
    disk = _Disk(g, start, colors)
    dist = _dual_distances(g, start)
    fs = g.faces
    heap = []
    queued = set()

    def push_around(f):
        # faces rejected earlier may have become addable, so revisit every
        # face meeting a vertex of ``f``
        for u, _ in fs[f]:
            for w in g.rotation(u):
                h = fs.face_of_dart[(u, w)]
                if h != outer and not disk.in_region[h] and h not in queued:
                    queued.add(h)
                    heapq.heappush(heap, (dist[h], h))

    push_around(start)
    yield disk
    while heap:
        _, f = heapq.heappop(heap)
        queued.discard(f)
        if disk.in_region[f]:
            continue
        run = disk.shared_run(f)
        if run is None:
            continue
        disk.add(f, run)
        push_around(f)
        yield disk


def _start_faces(g: EmbeddedGraph, outer: int, samples: int = 8) -> list[int]:
    inner = [f for f in range(len(g.faces)) if f != outer]
    if len(inner) <= 40:
        return inner
    step = len(inner) / samples
    picks = [inner[int(i * step)] for i in range(samples)]
    dist = _dual_distances(g, outer)
    far = max(inner, key=lambda f: (dist[f], -f))
    return sorted(set(picks) | {far})


def progress_bound(max_side: int, size: int, coverable: int) -> int:
    """Largest instance a recursive step can build on one side of a separator.

    One side is kept, the cycle stays, and the other side becomes at most
    one star per block plus one apex per face, which is at most one vertex
    per coverable cycle vertex plus one.
    """
    return max_side + size + coverable + 1


def cycle_separator(
    g: EmbeddedGraph, threshold: int = 0, colors: Mapping[int, int] | None = None
) -> SeparatorReport:
    """A simple cycle of ``g`` leaving at most ``ceil(2n/3)`` vertices on each side.

    Candidates are ranked by whether a recursive step on either side would
    shrink the instance (see ``progress_bound``; without ``colors`` every
    cycle vertex counts as coverable), then by cycle length, then by the
    bound itself.
    """
    n = g.vertex_count
    if n <= threshold:
        raise TooSmall(f"n={n} is at or below the threshold {threshold}")
    if not g.is_two_connected():
        raise NotTwoConnected("separator needs a 2-connected graph")
    outer = g.require_outer()
    limit = math.ceil(2 * n / 3)
    best_key = None
    best = None
    for start in _start_faces(g, outer):
        for step, disk in enumerate(_grow(g, start, outer, colors)):
            inside = disk.interior
            outside = n - disk.interior - disk.boundary
            side = max(inside, outside)
            if side > limit:
                if inside > limit:
                    break
                continue
            est = progress_bound(side, disk.boundary, disk.coverable)
            key = (est >= n, disk.boundary, est)
            if best_key is None or key < best_key:
                best_key = key
                best = (start, step)
    if best is None:
        raise NotTwoConnected("no balanced simple cycle found")
    start, step = best
    for i, disk in enumerate(_grow(g, start, outer, colors)):
        if i == step:
            return _report(g, disk.cycle())
    raise AssertionError("replay diverged")


def vertex_layers(g: EmbeddedGraph) -> dict[int, int]:
    """Peeling depth of every vertex: 0 on the outer face, and so on inward."""
    outer = g.require_outer()
    fs = g.faces
    layer: dict[int, int] = {}
    face_seen = {outer}
    frontier = [outer]
    depth = 0
    while frontier:
        new_vertices = []
        for f in frontier:
            for u, _ in fs[f]:
                if u not in layer:
                    layer[u] = depth
                    new_vertices.append(u)
        nxt = []
        for u in new_vertices:
            for w in g.rotation(u):
                h = fs.face_of_dart[(u, w)]
                if h not in face_seen:
                    face_seen.add(h)
                    nxt.append(h)
        frontier = nxt
        depth += 1
    return layer


def _simple_boundary(g: EmbeddedGraph, region: set[int]) -> Cycle | None:
    fs = g.faces
    succ: dict[int, int] = {}
    for f in region:
        for u, v in fs[f]:
            if fs.face_of_dart[(v, u)] not in region:
                if u in succ:
                    return None
                succ[u] = v
    if not succ:
        return None
    start = min(succ)
    out = [start]
    v = succ[start]
    while v != start:
        if v not in succ or len(out) > len(succ):
            return None
        out.append(v)
        v = succ[v]
    if len(out) != len(succ):
        return None
    return Cycle(tuple(out))


def nested_cycles(g: EmbeddedGraph, h: int) -> list[Cycle]:
    """Boundaries of the peeling layers that are simple cycles of length at most ``h``."""
    outer = g.require_outer()
    layer = vertex_layers(g)
    fs = g.faces
    min_layer = [min(layer[u] for u, _ in fs[f]) for f in range(len(fs))]
    out = []
    for k in range(1, max(layer.values()) + 1):
        region = {f for f in range(len(fs)) if f != outer and min_layer[f] >= k}
        if not region or len(region) == len(fs) - 1:
            continue
        cyc = _simple_boundary(g, region)
        if cyc is not None and len(cyc) <= h:
            out.append(cyc)
    return out


def _present(g: EmbeddedGraph, cyc: Cycle) -> bool:
    vs = cyc.vertices
    return all(g.has_edge(u, v) for u, v in zip(vs, vs[1:] + vs[:1]))


def nested_cycle_separator(
    g: EmbeddedGraph, h: int, slack: int = 2, cycles: Sequence[Cycle] | None = None
) -> SeparatorReport:
    """A cycle of length at most ``h`` with sides at most ``ceil(n/2) + slack*h``.

    Candidates are the peeling-layer cycles of ``g`` plus any of ``cycles``
    still present in it. Passing the layer cycles of an ancestor keeps the
    search working after parts of the graph were replaced by cycle-stars,
    which can shift the peeling layers off the original rings.
    """
    n = g.vertex_count
    if n <= 5 * h:
        raise TooSmall(f"n={n} is at most 5h={5 * h}")
    candidates = nested_cycles(g, h)
    candidates += [c for c in cycles or () if len(c) <= h and _present(g, c)]
    best = None
    for cyc in candidates:
        rep = _report(g, cyc)
        if best is None or (rep.max_side, rep.size) < (best.max_side, best.size):
            best = rep
    if best is None or best.max_side > math.ceil(n / 2) + slack * h:
        raise NotNested("no short layer cycle splits the graph evenly")
    return best
