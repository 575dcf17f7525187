import pytest

from cplanarity.cgraph import CGraph
from cplanarity.decision import CONDITION_II, Witness
from cplanarity.embed import EmbeddedGraph
from cplanarity.errors import TooLarge
from cplanarity.oracle import brute_force_cplanar, verify_witness
from cplanarity.saturate import apply_saturation, resolve_triples
from cplanarity.solver import test_cplanarity as decide
from cplanarity.toolkit.generate import cluster_separator, random_planar

from conftest import cycle_rot, enclosed_triangle, triangle, with_apex


def faces_of(c4):
    outer = c4.graph.outer_face
    inner = next(f for f in range(c4.graph.face_count) if f != outer)
    return inner, outer


def test_c4_yes(c4):
    d = brute_force_cplanar(c4)
    assert d.answer and len(d.witness.added) == 2
    assert verify_witness(c4, d.witness).ok


def test_cluster_separator_no():
    assert not brute_force_cplanar(cluster_separator("basic")).answer


def test_c_connected_yes_without_edges():
    d = brute_force_cplanar(triangle())
    assert d.answer and d.witness.added == []


def test_enclosed_vertex_has_admissible_face():
    cg, _, _ = enclosed_triangle()
    assert brute_force_cplanar(cg).answer


def test_condition_ii_switch():
    # every cluster is connected, but the triangle encloses a foreign vertex on either side
    rot = with_apex(with_apex(cycle_rot(3), 3, (0, 1)), 4, (1, 0))
    cg = CGraph(EmbeddedGraph(rot), {0: 0, 1: 0, 2: 0, 3: 1, 4: 2})
    assert brute_force_cplanar(cg, condition_ii=False).answer
    d = brute_force_cplanar(cg)
    assert not d.answer and d.reason == CONDITION_II


def test_cap():
    cg = random_planar(60, seed=1, clusters=6, disconnect=0.5)
    with pytest.raises(TooLarge):
        brute_force_cplanar(cg, cap=2)


def test_solver_witness_verifies(c4):
    d = decide(c4)
    assert verify_witness(c4, d.witness).ok


def test_interleaved_chords(c4):
    inner, outer = faces_of(c4)
    sup = apply_saturation(c4, resolve_triples(c4, [(inner, 0, 2), (outer, 1, 3)]))
    w = Witness(c4, sup, [(inner, 0, 2), (inner, 1, 3)])
    codes = {code for code, _ in verify_witness(c4, w).violations}
    assert "c" in codes


def test_missing_connection(c4):
    inner, _ = faces_of(c4)
    sup = apply_saturation(c4, resolve_triples(c4, [(inner, 0, 2)]))
    w = Witness(c4, sup, [(inner, 0, 2)])
    codes = {code for code, _ in verify_witness(c4, w).violations}
    assert codes == {"d"}


def test_non_candidate_edge(c4):
    inner, outer = faces_of(c4)
    sup = apply_saturation(c4, resolve_triples(c4, [(inner, 0, 2), (outer, 1, 3)]))
    w = Witness(c4, sup, [(inner, 0, 2), (outer, 1, 2)])
    assert "b" in {code for code, _ in verify_witness(c4, w).violations}


def test_wrong_base_graph(c4):
    d = decide(c4)
    other = random_planar(4, seed=0)
    assert "a" in {code for code, _ in verify_witness(other, d.witness).violations}
