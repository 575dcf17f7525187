import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cplanarity.cgraph import CGraph
from cplanarity.cyclestar import (
    CycleStar,
    Star,
    catalan,
    contract_to_cycle_star,
    cycle_star_from_json,
    enumerate_cycle_stars,
    stellate,
)
from cplanarity.embed import Cycle, EmbeddedGraph, cycle_sides
from cplanarity.saturate import apply_saturation, resolve_triples

from conftest import cycle_rot, with_apex


def ring(colors) -> CGraph:
    k = len(colors)
    return CGraph(EmbeddedGraph(cycle_rot(k), (1, 0)), dict(enumerate(colors)))


def set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]


def crossing(a, b):
    return any(x0 < y0 < x1 < y1 or y0 < x0 < y1 < x1
               for x0, x1 in itertools.combinations(sorted(a), 2)
               for y0, y1 in itertools.combinations(sorted(b), 2))


def count_by_brute_force(colors):
    out = set()
    for part in set_partitions(list(range(len(colors)))):
        if any(len({colors[i] for i in b}) > 1 for b in part):
            continue
        if any(crossing(a, b) for a, b in itertools.combinations(part, 2)):
            continue
        out.add(frozenset(frozenset(b) for b in part if len(b) > 1))
    return out


def test_three_same_cluster():
    stars = list(enumerate_cycle_stars(ring([0, 0, 0]), range(3)))
    assert len(stars) == 5 == catalan(3)
    assert sorted(len(cs.stars) for cs in stars) == [0, 1, 1, 1, 1]


def test_three_distinct_clusters():
    (only,) = enumerate_cycle_stars(ring([0, 1, 2]), range(3))
    assert only.stars == ()


def test_four_same_cluster():
    assert len(list(enumerate_cycle_stars(ring([0] * 4), range(4)))) == 14


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 2), min_size=3, max_size=8))
def test_enumeration_matches_partition_counter(colors):
    k = len(colors)
    got = list(enumerate_cycle_stars(ring(colors), range(k)))
    for cs in got:
        cs.check()
    blocks = [frozenset(frozenset(s.attach) for s in cs.stars) for cs in got]
    assert len(blocks) == len(set(blocks))
    assert set(blocks) == count_by_brute_force(colors)


def test_catalan():
    assert [catalan(k) for k in range(6)] == [1, 1, 2, 5, 14, 42]


def test_contract_alternating_c4(c4):
    inner = next(f for f in range(c4.graph.face_count) if f != c4.graph.outer_face)
    outer = c4.graph.outer_face
    witness = apply_saturation(c4, resolve_triples(c4, [(inner, 0, 2), (outer, 1, 3)]))
    cs = contract_to_cycle_star(witness, range(4), "inner")
    assert cs.stars == (Star(0, (0, 2)),)
    out = contract_to_cycle_star(witness, range(4), "outer")
    assert out.stars == (Star(1, (1, 3)),)


def test_contract_empty_interior():
    cs = contract_to_cycle_star(ring([0, 1, 2, 3]), range(4), "inner")
    assert cs.stars == ()


def test_contract_drops_single_attachment():
    rot = with_apex(cycle_rot(4), 4, (0, 1))
    rot = with_apex(rot, 5, (1, 0))
    cg = CGraph(EmbeddedGraph(rot, (5, rot[5][0])), {0: 0, 1: 1, 2: 2, 3: 1, 4: 0, 5: 1})
    side_of_4 = "inner" if 4 in cycle_sides(cg.graph, range(4)).inside else "outer"
    other = "outer" if side_of_4 == "inner" else "inner"
    assert contract_to_cycle_star(cg, range(4), side_of_4).stars == ()
    assert contract_to_cycle_star(cg, range(4), other).stars == (Star(1, (1, 3)),)


def test_stellate_empty_inner():
    cs = CycleStar(Cycle((0, 1, 2, 3)), (0, 1, 0, 1), ())
    g = stellate(cs, "inner").graph
    assert (g.vertex_count, g.edge_count) == (5, 8)
    assert len(g.faces[g.outer_face]) == 4
    assert all(len(f) == 3 for i, f in enumerate(g.faces) if i != g.outer_face)


def test_stellate_star_inner():
    cs = CycleStar(Cycle((0, 1, 2, 3)), (0, 1, 0, 2), (Star(0, (0, 2)),))
    out = stellate(cs, "inner")
    g = out.graph
    assert g.vertex_count == 4 + 1 + 2
    assert all(len(f) == 3 for i, f in enumerate(g.faces) if i != g.outer_face)
    assert contract_to_cycle_star(out, range(4), "inner") == cs


def test_stellate_empty_outer():
    cs = CycleStar(Cycle((0, 1, 2, 3)), (0, 1, 0, 1), (), "outer")
    g = stellate(cs, "outer").graph
    assert len(g.faces[g.outer_face]) == 3
    assert sorted(len(f) for f in g.faces) == [3, 3, 3, 3, 4]


def test_star_must_be_monochromatic():
    cs = CycleStar(Cycle((0, 1, 2, 3)), (0, 1, 0, 1), (Star(0, (0, 1)),))
    with pytest.raises(ValueError):
        cs.check()


def test_bad_side():
    with pytest.raises(ValueError):
        CycleStar(Cycle((0, 1, 2)), (0, 0, 0), (), "left")


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 2), min_size=3, max_size=7), st.sampled_from(["inner", "outer"]))
def test_stellate_realizes_stars(colors, mode):
    k = len(colors)
    for cs in enumerate_cycle_stars(ring(colors), range(k), mode):
        out = stellate(cs, mode)
        g = out.graph
        sides = cycle_sides(g, range(k))
        fresh = sides.inside if mode == "inner" else sides.outside
        assert fresh == set(g.vertices) - set(range(k))
        attach = sorted(tuple(sorted(x for x in g.rotation(v) if x < k)) for v in fresh if out.cluster_of[v] in colors)
        assert attach == sorted(tuple(sorted(s.attach)) for s in cs.stars)
        # the far side of the cycle is one face, everything else is a triangle
        lengths = sorted(g.faces.lengths)
        assert lengths[-1] == k and set(lengths[:-1]) == {3}
        assert cycle_star_from_json(cs.to_json(), cs.cluster_of, mode) == cs
