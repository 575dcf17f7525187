"""Plane graphs stored as rotation systems.

Every vertex carries the clockwise cyclic order of its neighbours. A dart is
an ordered pair ``(u, v)``. Faces are traced with one fixed successor rule:
the dart following ``(u, v)`` is ``(v, w)`` where ``w`` comes right after
``u`` in the clockwise rotation at ``v``. The face traced by a dart is
referred to as the face on its left. The outer face is designated by any
dart on it.

Vertex ids are arbitrary integers; only the instance files require them to
be ``0..n-1``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import (
    CycleMismatch,
    Disconnected,
    DuplicateEdge,
    MissingOuterFace,
    NonPlanarEmbedding,
    NonSymmetricRotation,
    NotACycle,
    VertexClash,
)

Dart = tuple[int, int]


def edge_key(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class FaceSet:
    """Faces as cyclic dart sequences, each starting at its smallest dart."""

    faces: tuple[tuple[Dart, ...], ...]
    face_of_dart: Mapping[Dart, int]

    def __len__(self) -> int:
        return len(self.faces)

    def __iter__(self) -> Iterator[tuple[Dart, ...]]:
        return iter(self.faces)

    def __getitem__(self, fid: int) -> tuple[Dart, ...]:
        return self.faces[fid]

    @property
    def lengths(self) -> tuple[int, ...]:
        return tuple(len(f) for f in self.faces)

    @property
    def max_length(self) -> int:
        return max(self.lengths, default=0)

    def walk(self, fid: int) -> tuple[int, ...]:
        """Boundary walk of a face as the sequence of dart tails."""
        return tuple(d[0] for d in self.faces[fid])


@dataclass(frozen=True)
class Cycle:
    vertices: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self) -> Iterator[int]:
        return iter(self.vertices)

    def __contains__(self, v) -> bool:
        return v in self.vertex_set

    @cached_property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.vertices)

    @property
    def darts(self) -> tuple[Dart, ...]:
        vs = self.vertices
        return tuple((vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs)))

    @cached_property
    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(edge_key(u, v) for u, v in self.darts)

    def reversed(self) -> "Cycle":
        return Cycle(tuple(reversed(self.vertices)))

    def neighbours(self, v: int) -> tuple[int, int]:
        """(previous, next) of ``v`` along the cycle."""
        i = self.vertices.index(v)
        k = len(self.vertices)
        return self.vertices[i - 1], self.vertices[(i + 1) % k]


class EmbeddedGraph:
    """Connected simple plane graph given by clockwise rotations.

    Instances are treated as immutable once built; all derived data is cached.
    """

    def __init__(
        self,
        rotations: Mapping[int, Sequence[int]],
        outer: Dart | Sequence[int] | None = None,
        *,
        validate: bool = True,
    ):
        self._rot: dict[int, tuple[int, ...]] = {
            int(v): tuple(int(u) for u in r) for v, r in rotations.items()
        }
        self.outer: Dart | None = (int(outer[0]), int(outer[1])) if outer is not None else None
        if validate:
            self._validate()

    # -- basic accessors ---------------------------------------------------

    @property
    def rotations(self) -> Mapping[int, tuple[int, ...]]:
        return self._rot

    def rotation(self, v: int) -> tuple[int, ...]:
        return self._rot[v]

    @cached_property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted(self._rot))

    @property
    def vertex_count(self) -> int:
        return len(self._rot)

    n = vertex_count

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted({edge_key(u, v) for u, r in self._rot.items() for v in r}))

    @cached_property
    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self._rot[v])

    def has_edge(self, u: int, v: int) -> bool:
        return edge_key(u, v) in self.edge_set

    @cached_property
    def _pos(self) -> dict[int, dict[int, int]]:
        return {v: {u: i for i, u in enumerate(r)} for v, r in self._rot.items()}

    def next_dart(self, dart: Dart) -> Dart:
        u, v = dart
        r = self._rot[v]
        return (v, r[(self._pos[v][u] + 1) % len(r)])

    def darts(self) -> Iterator[Dart]:
        for v in self.vertices:
            for u in self._rot[v]:
                yield (v, u)

    # -- faces ---------------------------------------------------------------

    @cached_property
    def faces(self) -> FaceSet:
        seen: set[Dart] = set()
        found: list[tuple[Dart, ...]] = []
        for d in sorted(self.darts()):
            if d in seen:
                continue
            walk = []
            cur = d
            while cur not in seen:
                seen.add(cur)
                walk.append(cur)
                cur = self.next_dart(cur)
            if cur != d:
                raise NonSymmetricRotation(f"face traversal from {d} does not close")
            # d is the smallest unvisited dart, hence the smallest in its face
            found.append(tuple(walk))
        found.sort(key=lambda f: f[0])
        face_of = {dd: i for i, f in enumerate(found) for dd in f}
        return FaceSet(tuple(found), face_of)

    @property
    def face_count(self) -> int:
        return len(self.faces)

    @property
    def max_face_size(self) -> int:
        return self.faces.max_length

    @property
    def outer_face(self) -> int | None:
        if self.outer is None:
            return None
        return self.faces.face_of_dart[self.outer]

    def require_outer(self) -> int:
        if self.outer is None:
            raise MissingOuterFace("operation needs a designated outer face")
        return self.faces.face_of_dart[self.outer]

    def with_outer(self, dart: Dart | None) -> "EmbeddedGraph":
        g = EmbeddedGraph(self._rot, dart, validate=False)
        if dart is not None and not g.has_edge(*dart):
            raise ValueError(f"outer dart {dart} is not an edge")
        return g

    # -- validation --------------------------------------------------------

    def _validate(self) -> None:
        rot = self._rot
        for v, r in rot.items():
            if len(set(r)) != len(r):
                raise DuplicateEdge(f"vertex {v} lists a neighbour twice")
            for u in r:
                if u == v:
                    raise DuplicateEdge(f"loop at vertex {v}")
                if u not in rot or v not in rot[u]:
                    raise NonSymmetricRotation(f"dart ({v}, {u}) has no twin")
        if not rot:
            raise Disconnected("empty graph")
        start = next(iter(rot))
        seen = {start}
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for u in rot[v]:
                if u not in seen:
                    seen.add(u)
                    queue.append(u)
        if len(seen) != len(rot):
            raise Disconnected(f"{len(rot) - len(seen)} vertices unreachable from {start}")
        if self.edge_count:
            chi = self.vertex_count - self.edge_count + self.face_count
            if chi != 2:
                raise NonPlanarEmbedding(f"Euler characteristic {chi} != 2")
        if self.outer is not None and not self.has_edge(*self.outer):
            raise ValueError(f"outer dart {self.outer} is not an edge")

    # -- misc --------------------------------------------------------------

    def is_two_connected(self) -> bool:
        """Face-boundary criterion: every face is a simple cycle."""
        if self.vertex_count < 3:
            return False
        return all(len(set(self.faces.walk(i))) == len(self.faces[i]) for i in range(len(self.faces)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, EmbeddedGraph):
            return NotImplemented
        return self._rot == other._rot and self.outer == other.outer

    def same_embedding(self, other: "EmbeddedGraph") -> bool:
        """Equal rotations up to the starting point of each cyclic order."""
        if set(self._rot) != set(other._rot):
            return False
        return all(cyclic_equal(self._rot[v], other._rot[v]) for v in self._rot)

    def __repr__(self) -> str:
        return f"EmbeddedGraph(V={self.vertex_count}, E={self.edge_count}, outer={self.outer})"

    def to_spec(self) -> dict:
        return {
            "rotation": {v: list(self._rot[v]) for v in self.vertices},
            "outer": list(self.outer) if self.outer else None,
        }


def cyclic_equal(a: Sequence[int], b: Sequence[int]) -> bool:
    if len(a) != len(b):
        return False
    if not a:
        return True
    try:
        k = list(b).index(a[0])
    except ValueError:
        return False
    return tuple(a) == tuple(b[k:]) + tuple(b[:k])


def rotate_to(seq: Sequence[int], first: int) -> list[int]:
    k = list(seq).index(first)
    return list(seq[k:]) + list(seq[:k])


def build_embedded_graph(
    n: int, rotation: Sequence[Sequence[int]], outer: Sequence[int] | None = None
) -> EmbeddedGraph:
    """Build and validate a graph on vertices ``0..n-1``."""
    if len(rotation) != n:
        raise NonSymmetricRotation(f"expected {n} rotations, got {len(rotation)}")
    return EmbeddedGraph({v: rotation[v] for v in range(n)}, outer)


def faces(g: EmbeddedGraph) -> FaceSet:
    return g.faces


def as_cycle(g: EmbeddedGraph, vertices: Iterable[int] | Cycle) -> Cycle:
    """Check that ``vertices`` form a simple cycle of ``g``."""
    cyc = vertices if isinstance(vertices, Cycle) else Cycle(tuple(vertices))
    vs = cyc.vertices
    if len(vs) < 3 or len(set(vs)) != len(vs):
        raise NotACycle(f"not a simple cycle: {vs}")
    for u, v in cyc.darts:
        if u not in g.rotations or not g.has_edge(u, v):
            raise NotACycle(f"({u}, {v}) is not an edge")
    return cyc


@dataclass(frozen=True)
class CycleSides:
    """Split of a plane graph by a simple cycle.

    ``cycle`` is oriented so that its forward darts trace interior faces.
    """

    cycle: Cycle
    inside: frozenset[int]
    outside: frozenset[int]
    inside_faces: frozenset[int]
    outside_faces: frozenset[int]

    def side_of_face(self, fid: int) -> str:
        return "inner" if fid in self.inside_faces else "outer"


def cycle_sides(g: EmbeddedGraph, vertices: Iterable[int] | Cycle) -> CycleSides:
    cyc = as_cycle(g, vertices)
    outer_face = g.require_outer()
    fs = g.faces
    parent = list(range(len(fs)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in g.edges:
        if edge_key(u, v) in cyc.edge_set:
            continue
        a, b = find(fs.face_of_dart[(u, v)]), find(fs.face_of_dart[(v, u)])
        if a != b:
            parent[a] = b
    root_out = find(outer_face)
    outside_faces = frozenset(f for f in range(len(fs)) if find(f) == root_out)
    inside_faces = frozenset(range(len(fs))) - outside_faces
    if not inside_faces:
        raise NotACycle("cycle does not separate the sphere")
    u, v = cyc.darts[0]
    if fs.face_of_dart[(u, v)] not in inside_faces:
        cyc = cyc.reversed()
    inside, outside = set(), set()
    for x in g.vertices:
        if x in cyc:
            continue
        f = fs.face_of_dart[(x, g.rotation(x)[0])]
        (inside if f in inside_faces else outside).add(x)
    return CycleSides(cyc, frozenset(inside), frozenset(outside), inside_faces, outside_faces)


def orient_cycle(g: EmbeddedGraph, vertices: Iterable[int] | Cycle) -> Cycle:
    return cycle_sides(g, vertices).cycle


def subgraph_side(g: EmbeddedGraph, rho: Iterable[int] | Cycle, side: str) -> EmbeddedGraph:
    """Keep ``rho`` plus everything strictly on one side of it.

    ``side="inner"`` gives the graph whose outer face is bounded by ``rho``;
    ``side="outer"`` keeps the exterior, where ``rho`` bounds an inner face.
    """
    if side not in ("inner", "outer"):
        raise ValueError(f"side must be 'inner' or 'outer', not {side!r}")
    sides = cycle_sides(g, rho)
    cyc = sides.cycle
    keep_faces = sides.inside_faces if side == "inner" else sides.outside_faces
    keep_vertices = set(cyc.vertices) | (sides.inside if side == "inner" else sides.outside)
    fod = g.faces.face_of_dart
    rot = {}
    for v in keep_vertices:
        rot[v] = [
            u
            for u in g.rotation(v)
            if edge_key(v, u) in cyc.edge_set or fod[(v, u)] in keep_faces
        ]
    if side == "inner":
        a, b = cyc.darts[0]
        outer = (b, a)
    else:
        outer = g.outer
    return EmbeddedGraph(rot, outer)


def _oriented_against_outer(g1: EmbeddedGraph, rho: Cycle) -> Cycle:
    """Orientation of ``rho`` whose reversed darts trace the outer face of ``g1``."""
    outer = g1.require_outer()
    fod = g1.faces.face_of_dart
    for cyc in (rho, rho.reversed()):
        if all(fod.get((b, a)) == outer for a, b in cyc.darts):
            if len(g1.faces[outer]) == len(cyc):
                return cyc
    raise CycleMismatch("cycle does not bound the outer face of the first graph")


def merge_along_cycle(g1: EmbeddedGraph, g2: EmbeddedGraph, rho: Iterable[int] | Cycle) -> EmbeddedGraph:
    """Glue ``g1`` (``rho`` on its outer face) into the ``rho`` face of ``g2``."""
    rho = rho if isinstance(rho, Cycle) else Cycle(tuple(rho))
    shared = set(g1.rotations) & set(g2.rotations)
    if shared != set(rho.vertices):
        raise VertexClash(f"graphs share {sorted(shared - rho.vertex_set)} outside the cycle")
    cyc = _oriented_against_outer(g1, rho)
    fod2 = g2.faces.face_of_dart
    hole = {fod2.get(d) for d in cyc.darts}
    if len(hole) != 1 or None in hole:
        raise CycleMismatch("cycle does not bound a face of the second graph")
    (hole_face,) = hole
    if hole_face == g2.outer_face or len(g2.faces[hole_face]) != len(cyc):
        raise CycleMismatch("cycle must bound an inner face of the second graph")

    rot: dict[int, list[int]] = {}
    for v, r in g1.rotations.items():
        if v not in cyc:
            rot[v] = list(r)
    for v, r in g2.rotations.items():
        if v not in cyc:
            rot[v] = list(r)
    for v in cyc.vertices:
        prev, nxt = cyc.neighbours(v)
        r1 = rotate_to(g1.rotation(v), prev)
        r2 = rotate_to(g2.rotation(v), nxt)
        if r1[-1] != nxt or r2[-1] != prev:
            raise CycleMismatch(f"rotation at {v} is inconsistent with the cycle")
        rot[v] = r1 + r2[1:-1]
    return EmbeddedGraph(rot, g2.outer)


# -- construction helpers on mutable rotation dicts --------------------------


def insert_after(rot: dict[int, list[int]], v: int, after: int, new: int) -> None:
    r = rot[v]
    r.insert(r.index(after) + 1, new)


def add_vertex_in_face(rot: dict[int, list[int]], new: int, corners: Sequence[Dart]) -> None:
    """Place ``new`` inside a face and join it to the given corners.

    ``corners`` are the entering darts of the chosen corners, listed in the
    face's traversal order.
    """
    for p, v in corners:
        insert_after(rot, v, p, new)
    rot[new] = [v for _, v in reversed(corners)]


def remove_edge(rot: dict[int, list[int]], u: int, v: int) -> None:
    rot[u].remove(v)
    rot[v].remove(u)


def trace_face(rot: Mapping[int, Sequence[int]], dart: Dart) -> list[Dart]:
    out = [dart]
    cur = dart
    while True:
        u, v = cur
        r = rot[v]
        cur = (v, r[(list(r).index(u) + 1) % len(r)])
        if cur == dart:
            return out
        out.append(cur)
