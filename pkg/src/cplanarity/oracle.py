"""Exhaustive reference decision for small instances, and the witness checker.

The search picks, cluster by cluster, a spanning tree of the cluster's
components out of its candidate edges, rejecting any edge that crosses one
already chosen in the same face. Restricting to spanning trees loses
nothing: dropping edges from a valid saturation keeps it noncrossing, so a
valid saturation exists iff a valid forest-shaped one does.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cgraph import CGraph, check_condition_ii
from .decision import CONDITION_II, EXHAUSTED, Decision, Witness
from .embed import cyclic_equal, edge_key
from .errors import CPlanarityError, TooLarge
from .saturate import (
    CandidateEdge,
    apply_saturation,
    candidate_saturating_edges,
    chords_cross,
)

DEFAULT_CAP = 30


def brute_force_cplanar(cg: CGraph, cap: int = DEFAULT_CAP, condition_ii: bool = True) -> Decision:
    cands = candidate_saturating_edges(cg)
    if len(cands) > cap:
        raise TooLarge(f"{len(cands)} candidate edges exceed the cap of {cap}")
    if condition_ii and not check_condition_ii(cg).ok:
        return Decision(False, reason=CONDITION_II)
    comps = cg.components
    todo = [mu for mu in cg.clusters if comps.count(mu) > 1]
    per_cluster = {mu: [c for c in cands if c.cluster == mu] for mu in todo}
    chosen: list[CandidateEdge] = []
    nodes = [0]

    def crosses(c: CandidateEdge) -> bool:
        return any(o.face == c.face and chords_cross(o.positions, c.positions) for o in chosen)

    def solve_cluster(i: int) -> bool:
        if i == len(todo):
            return True
        mu = todo[i]
        pool = per_cluster[mu]
        need = comps.count(mu) - 1
        parent = {p: p for p in {comps.component_of[c.u] for c in pool} | {comps.component_of[c.v] for c in pool}}

        def root(x):
            while parent[x] != x:
                x = parent[x]
            return x

        def pick(start: int, left: int) -> bool:
            nodes[0] += 1
            if left == 0:
                return solve_cluster(i + 1)
            for j in range(start, len(pool) - left + 1):
                c = pool[j]
                a, b = root(comps.component_of[c.u]), root(comps.component_of[c.v])
                if a == b or crosses(c):
                    continue
                parent[a] = b
                chosen.append(c)
                if pick(j + 1, left - 1):
                    return True
                chosen.pop()
                parent[a] = a
            return False

        return pick(0, need)

    if not solve_cluster(0):
        return Decision(False, reason=EXHAUSTED, stats={"nodes": nodes[0], "candidates": len(cands)})
    triples = sorted((c.face, c.u, c.v) for c in chosen)
    sup = apply_saturation(cg, chosen)
    return Decision(True, Witness(cg, sup, triples), stats={"nodes": nodes[0], "candidates": len(cands)})


@dataclass
class VerifyReport:
    violations: list[tuple[str, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, code: str, message: str) -> None:
        self.violations.append((code, message))

    def to_json(self) -> dict:
        return {"ok": self.ok, "violations": [{"check": c, "detail": m} for c, m in self.violations]}


def verify_witness(cg: CGraph, w: Witness) -> VerifyReport:
    """Check a witness against ``cg``.

    Codes: ``a`` base graph recovered, ``b`` added edges are candidates,
    ``c`` noncrossing inside each face, ``d`` clusters connected, ``e``
    valid plane embedding matching the declared faces.
    """
    rep = VerifyReport()
    sup = w.super_graph
    g = cg.graph
    added = {edge_key(u, v) for _, u, v in w.added}

    if set(sup.graph.vertices) != set(g.vertices):
        rep.add("a", "vertex sets differ")
        return rep
    if dict(sup.cluster_of) != dict(cg.cluster_of):
        rep.add("a", "cluster assignment differs")
    if set(sup.graph.edges) - added != set(g.edges):
        rep.add("a", "super graph minus the added edges is not the instance")
    else:
        for v in g.vertices:
            kept = tuple(u for u in sup.graph.rotation(v) if edge_key(u, v) not in added)
            if not cyclic_equal(kept, g.rotation(v)):
                rep.add("a", f"rotation at {v} differs from the instance")
                break

    index = {c.key: c for c in candidate_saturating_edges(cg)}
    chosen = []
    for f, u, v in w.added:
        c = index.get((f, *edge_key(u, v)))
        if c is None:
            rep.add("b", f"({f}, {u}, {v}) is not a candidate saturating edge")
        else:
            chosen.append(c)

    by_face: dict[int, list[CandidateEdge]] = {}
    for c in chosen:
        by_face.setdefault(c.face, []).append(c)
    for f, group in by_face.items():
        for i, a in enumerate(group):
            for b in group[i + 1:]:
                if chords_cross(a.positions, b.positions):
                    rep.add("c", f"({a.u}, {a.v}) crosses ({b.u}, {b.v}) in face {f}")

    for mu, members in sup.clusters.items():
        seen = {members[0]}
        stack = [members[0]]
        while stack:
            x = stack.pop()
            for y in sup.graph.rotation(x):
                if y not in seen and sup.cluster_of[y] == mu:
                    seen.add(y)
                    stack.append(y)
        if len(seen) != len(members):
            rep.add("d", f"cluster {mu} is disconnected")

    g2 = sup.graph
    if g2.vertex_count - g2.edge_count + g2.face_count != 2:
        rep.add("e", "super graph fails Euler's formula")
    elif rep.ok:
        try:
            expected = apply_saturation(cg, chosen).graph
        except (CPlanarityError, ValueError) as exc:
            rep.add("e", f"added edges cannot be drawn: {exc}")
        else:
            if not expected.same_embedding(g2):
                rep.add("e", "added edges are not drawn in their declared faces")
    return rep

