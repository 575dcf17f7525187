from __future__ import annotations

import pytest

from cplanarity.cgraph import CGraph
from cplanarity.embed import EmbeddedGraph, add_vertex_in_face, trace_face

ACCEPTANCE_LINES: list[str] = []


def cycle_rot(k: int) -> dict[int, list[int]]:
    return {i: [(i - 1) % k, (i + 1) % k] for i in range(k)}


def with_apex(rot: dict[int, list[int]], apex: int, dart) -> dict[int, list[int]]:
    """Copy of ``rot`` with ``apex`` joined to every corner of the face of ``dart``."""
    out = {v: list(r) for v, r in rot.items()}
    add_vertex_in_face(out, apex, trace_face(out, dart))
    return out


def triangle(clusters=(0, 0, 0)) -> CGraph:
    return CGraph(EmbeddedGraph(cycle_rot(3), (1, 0)), dict(enumerate(clusters)))


def c4_alternating() -> CGraph:
    return CGraph(EmbeddedGraph(cycle_rot(4), (1, 0)), {0: 0, 1: 1, 2: 0, 3: 1})


def enclosed_triangle():
    """Triangle of cluster 0 with a cluster-1 vertex inside joined to all corners.

    Returns the instance, the face id not touching the inner vertex and one
    face id that does.
    """
    rot = with_apex(cycle_rot(3), 3, (0, 1))
    g = EmbeddedGraph(rot)
    fod = g.faces.face_of_dart
    outside = next(f for f, face in enumerate(g.faces) if all(3 not in d for d in face))
    inside = fod[(3, rot[3][0])]
    return CGraph(g, {0: 0, 1: 0, 2: 0, 3: 1}), outside, inside


@pytest.fixture
def c4():
    return c4_alternating()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
