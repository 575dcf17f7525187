import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cplanarity.embed import (
    Cycle,
    EmbeddedGraph,
    build_embedded_graph,
    cycle_sides,
    merge_along_cycle,
    subgraph_side,
)
from cplanarity.errors import CycleMismatch, NonPlanarEmbedding, NonSymmetricRotation, VertexClash
from cplanarity.toolkit.generate import cylinder_grid, random_planar

from conftest import cycle_rot, with_apex


def c4_inner_apex() -> EmbeddedGraph:
    rot = with_apex(cycle_rot(4), 4, (0, 1))
    return EmbeddedGraph(rot, (1, 0))


def c4_outer_apex() -> EmbeddedGraph:
    rot = with_apex(cycle_rot(4), 5, (1, 0))
    return EmbeddedGraph(rot, (5, rot[5][0]))


def test_triangle_counts():
    g = build_embedded_graph(3, [[1, 2], [2, 0], [0, 1]])
    assert (g.vertex_count, g.edge_count, g.face_count) == (3, 3, 2)
    assert sorted(g.faces.lengths) == [3, 3]


def test_k4_has_four_triangles():
    g = EmbeddedGraph(with_apex(cycle_rot(3), 3, (0, 1)))
    assert g.face_count == 4
    assert set(g.faces.lengths) == {3}


def test_missing_twin_rejected():
    with pytest.raises(NonSymmetricRotation):
        build_embedded_graph(3, [[1, 2], [2], [0, 1]])


def test_bad_rotation_fails_euler():
    # K4 with one rotation flipped is not a plane embedding
    rot = with_apex(cycle_rot(3), 3, (0, 1))
    rot[3] = rot[3][::-1]
    with pytest.raises(NonPlanarEmbedding):
        EmbeddedGraph(rot)


def test_cube_faces():
    g = cylinder_grid(4, 2).graph
    assert g.vertex_count == 8
    assert g.faces.lengths == (4,) * 6


def test_path_single_face():
    g = EmbeddedGraph({0: [1], 1: [0, 2], 2: [1]})
    assert g.faces.lengths == (4,)


def test_c6_with_chord():
    rot = cycle_rot(6)
    rot[0].insert(1, 3)
    rot[3].insert(1, 0)
    g = EmbeddedGraph(rot)
    assert sorted(g.faces.lengths) == [4, 4, 6]


def test_face_lengths_sum_to_twice_edges():
    g = random_planar(40, seed=3).graph
    assert sum(g.faces.lengths) == 2 * g.edge_count
    assert g.faces.max_length == g.max_face_size


def test_merge_two_triangles():
    g1 = EmbeddedGraph(cycle_rot(3), (1, 0))
    g2 = EmbeddedGraph(cycle_rot(3), (1, 0))
    m = merge_along_cycle(g1, g2, [0, 1, 2])
    assert (m.vertex_count, m.edge_count) == (3, 3)


def test_merge_octahedron_like():
    m = merge_along_cycle(c4_inner_apex(), c4_outer_apex(), [0, 1, 2, 3])
    assert (m.vertex_count, m.edge_count, m.face_count) == (6, 12, 8)


def test_merge_rejects_non_face_cycle():
    rot = cycle_rot(4)
    rot[0].insert(1, 2)
    rot[2].insert(1, 0)
    with pytest.raises(CycleMismatch):
        merge_along_cycle(c4_inner_apex(), EmbeddedGraph(rot, (1, 0)), [0, 1, 2, 3])


def test_merge_rejects_vertex_clash():
    g2 = EmbeddedGraph(with_apex(cycle_rot(4), 4, (1, 0)), (4, 0))
    with pytest.raises(VertexClash):
        merge_along_cycle(c4_inner_apex(), g2, [0, 1, 2, 3])


def test_split_inverts_merge():
    g1, g2 = c4_inner_apex(), c4_outer_apex()
    m = merge_along_cycle(g1, g2, [0, 1, 2, 3])
    inner = subgraph_side(m, [0, 1, 2, 3], "inner")
    outer = subgraph_side(m, [0, 1, 2, 3], "outer")
    assert inner.same_embedding(g1)
    assert outer.same_embedding(g2)
    assert inner.faces[inner.outer_face] and len(inner.faces[inner.outer_face]) == 4


def test_split_bare_cycle():
    g = EmbeddedGraph(cycle_rot(5), (1, 0))
    for side in ("inner", "outer"):
        s = subgraph_side(g, range(5), side)
        assert s.edge_set == g.edge_set


def test_cycle_sides_counts():
    m = merge_along_cycle(c4_inner_apex(), c4_outer_apex(), [0, 1, 2, 3])
    sides = cycle_sides(m, Cycle((0, 1, 2, 3)))
    assert sides.inside == {4}
    assert sides.outside == {5}


def test_face_enumeration_deterministic():
    a = random_planar(30, seed=11).graph
    b = random_planar(30, seed=11).graph
    assert a.faces.faces == b.faces.faces


@settings(max_examples=40, deadline=None)
@given(st.integers(4, 60), st.integers(0, 10**6))
def test_euler_on_random_graphs(n, seed):
    g = random_planar(n, seed=seed).graph
    assert g.vertex_count - g.edge_count + g.face_count == 2


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_merge_split_round_trip(seed):
    g = random_planar(30, seed=seed).graph
    from cplanarity.separator import cycle_separator

    rho = cycle_separator(g).cycle
    inner = subgraph_side(g, rho, "inner")
    outer = subgraph_side(g, rho, "outer")
    back = merge_along_cycle(inner, outer, rho)
    assert back.same_embedding(g)
    assert back.vertex_count == g.vertex_count and back.edge_set == g.edge_set
