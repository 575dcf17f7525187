"""Divide-and-conquer c-planarity test for embedded flat c-graphs.

``testcp`` splits the instance along a balanced cycle ``rho``. For every
cycle-star ``S`` that the inside could contribute, the inside is replaced by
a stellated copy of ``S`` and the outside is solved recursively. A solution
of the outside is contracted in turn into a cycle-star for the outside,
which replaces the outside while the inside is solved. Chords of the two
recursive solutions are combined into a saturation of the original graph.
Small instances go to an exhaustive search.
"""

from __future__ import annotations

import logging
from collections import Counter
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from dataclasses import dataclass, field, replace

from .cgraph import CGraph, check_condition_ii, is_cluster_separator
from .cyclestar import CycleStar, contract_to_cycle_star, enumerate_cycle_stars, stellate
from .decision import CLUSTER_SEPARATOR, CONDITION_II, EXHAUSTED, UNCONNECTABLE, Decision, Witness
from .embed import Cycle, EmbeddedGraph, edge_key, merge_along_cycle, rotate_to, subgraph_side
from .errors import MergeIncompatible, NotNested, NotTwoConnected, TooSmall
from .gadgets import make_three_connected
from .oracle import verify_witness
from .saturate import CandidateEdge, apply_saturation, candidate_saturating_edges, chords_cross, connectable
from .separator import SeparatorReport, cycle_separator, nested_cycle_separator, nested_cycles, progress_bound
from .unionfind import RollbackUnionFind

log = logging.getLogger(__name__)

DEFAULT_THRESHOLD = 64


@dataclass
class SolverOptions:
    threshold: int = DEFAULT_THRESHOLD
    nested: int | None = None
    gadgets: str = "auto"  # auto | always | never
    workers: int = 1
    parallel_any: bool = False
    check_witness: bool = True
    memo_size: int = 20000


@dataclass
class SolverStats:
    calls: int = 0
    base_cases: int = 0
    max_depth: int = 0
    stars_tried: int = 0
    base_nodes: int = 0
    candidates: int = 0
    separators: list[int] = field(default_factory=list)
    nested_used: int = 0
    memo_hits: int = 0

    def merge(self, other: "SolverStats") -> None:
        self.calls += other.calls
        self.base_cases += other.base_cases
        self.max_depth = max(self.max_depth, other.max_depth)
        self.stars_tried += other.stars_tried
        self.base_nodes += other.base_nodes
        self.candidates = max(self.candidates, other.candidates)
        self.separators += other.separators
        self.nested_used += other.nested_used
        self.memo_hits += other.memo_hits

    def as_dict(self) -> dict:
        return {
            "calls": self.calls,
            "base_cases": self.base_cases,
            "depth": self.max_depth,
            "stars_tried": self.stars_tried,
            "base_nodes": self.base_nodes,
            "max_candidates": self.candidates,
            "max_separator": max(self.separators, default=0),
            "nested_separators": self.nested_used,
            "memo_hits": self.memo_hits,
        }


def base_case(cg: CGraph, stats: SolverStats | None = None) -> Decision:
    """Depth-first search over candidate edges, trying inclusion first.

    A branch is cut when even every remaining candidate that does not cross
    an already chosen chord could not connect all clusters.
    """
    stats = stats if stats is not None else SolverStats()
    stats.base_cases += 1
    cands = sorted(candidate_saturating_edges(cg))
    stats.candidates = max(stats.candidates, len(cands))
    comp = cg.components.component_of
    uf = RollbackUnionFind(set(comp.values()))
    target = cg.cluster_count
    chosen: list[CandidateEdge] = []
    by_face: dict[int, list[CandidateEdge]] = {}

    def crossing(c: CandidateEdge) -> bool:
        return any(chords_cross(o.positions, c.positions) for o in by_face.get(c.face, ()))

    def hopeful(i: int) -> bool:
        mark = uf.snapshot()
        for c in cands[i:]:
            if not crossing(c):
                uf.union(comp[c.u], comp[c.v])
                if uf.components == target:
                    break
        ok = uf.components == target
        uf.rollback(mark)
        return ok

    def dfs(i: int) -> bool:
        stats.base_nodes += 1
        if uf.components == target:
            return True
        if i == len(cands) or not hopeful(i):
            return False
        c = cands[i]
        if not uf.connected(comp[c.u], comp[c.v]) and not crossing(c):
            mark = uf.snapshot()
            uf.union(comp[c.u], comp[c.v])
            chosen.append(c)
            by_face.setdefault(c.face, []).append(c)
            if dfs(i + 1):
                return True
            by_face[c.face].pop()
            chosen.pop()
            uf.rollback(mark)
        return dfs(i + 1)

    if not dfs(0):
        return Decision(False, reason=EXHAUSTED)
    sup = apply_saturation(cg, chosen)
    return Decision(True, Witness(cg, sup, sorted((c.face, c.u, c.v) for c in chosen)))


def _union(a: CGraph, b: CGraph, graph: EmbeddedGraph) -> CGraph:
    cl = dict(a.cluster_of)
    cl.update(b.cluster_of)
    return CGraph(graph, {v: cl[v] for v in graph.vertices})


@dataclass
class _Split:
    cg: CGraph
    rho: Cycle
    minus: CGraph
    plus: CGraph
    first_vertex: int
    first_cluster: int


def _split(cg: CGraph, rho: Cycle) -> _Split:
    g = cg.graph
    return _Split(
        cg,
        rho,
        cg.with_graph(subgraph_side(g, rho, "inner")),
        cg.with_graph(subgraph_side(g, rho, "outer")),
        max(g.vertices) + 1,
        max(cg.clusters) + 1,
    )


def outer_instance(sp: _Split, cs: CycleStar) -> CGraph:
    r_minus = stellate(cs, "inner", sp.first_vertex, sp.first_cluster)
    return _union(sp.plus, r_minus, merge_along_cycle(r_minus.graph, sp.plus.graph, sp.rho))


def inner_instance(sp: _Split, h_plus: CGraph) -> CGraph:
    s_plus = contract_to_cycle_star(h_plus, sp.rho, "outer")
    r_plus = stellate(s_plus, "outer", sp.first_vertex, sp.first_cluster)
    return _union(sp.minus, r_plus, merge_along_cycle(sp.minus.graph, r_plus.graph, sp.rho))


def _chords_of(cg: CGraph, sub: CGraph, sup: CGraph) -> list[tuple[int, int, int]]:
    """Edges of ``sup`` between vertices of ``cg`` that ``sub`` lacks, with their face in ``cg``."""
    g = cg.graph
    fod = g.faces.face_of_dart
    out = []
    for u, v in sup.graph.edges:
        if u not in g.rotations or v not in g.rotations or sub.graph.has_edge(u, v):
            continue
        r = sup.graph.rotation(u)
        i = r.index(v)
        p = next(r[i - s] for s in range(1, len(r)) if g.has_edge(u, r[i - s]))
        out.append((fod[(p, u)], u, v))
    return out


def assemble_witness(cg: CGraph, inner: tuple[CGraph, CGraph], outer: tuple[CGraph, CGraph]) -> Witness:
    """Combine the chords of the two recursive witnesses into one saturation of ``cg``.

    ``inner`` and ``outer`` are ``(instance, witness super graph)`` pairs. A
    chord is kept only if it joins two parts of its cluster not yet joined by
    ``cg`` and the chords kept before it; this drops chords that were needed
    only because the other side had been summarized.
    """
    index = {c.key: c for c in candidate_saturating_edges(cg)}
    comp = cg.components.component_of
    uf = RollbackUnionFind(set(comp.values()))
    chosen = []
    for sub, sup in (inner, outer):
        for f, u, v in sorted(_chords_of(cg, sub, sup)):
            if uf.connected(comp[u], comp[v]):
                continue
            c = index.get((f, *edge_key(u, v)))
            if c is None:
                raise MergeIncompatible(f"chord ({u}, {v}) in face {f} is not a candidate")
            uf.union(comp[u], comp[v])
            chosen.append(c)
    try:
        sup = apply_saturation(cg, chosen)
    except ValueError as exc:
        raise MergeIncompatible(str(exc)) from exc
    w = Witness(cg, sup, sorted((c.face, c.u, c.v) for c in chosen))
    report = verify_witness(cg, w)
    if not report.ok:
        raise MergeIncompatible(f"assembled witness fails verification: {report.violations}")
    return w


def instance_key(cg: CGraph) -> tuple:
    """Hashable identity of an instance: rotations, outer face and clusters."""
    g = cg.graph
    outer = g.outer_face
    return (
        tuple((v, tuple(rotate_to(g.rotation(v), min(g.rotation(v))))) for v in sorted(g.vertices)),
        None if outer is None else min(g.faces[outer]),
        tuple(sorted(cg.cluster_of.items())),
    )


class Solver:
    def __init__(self, options: SolverOptions | None = None, rings: list[Cycle] | None = None):
        self.options = options or SolverOptions()
        self.stats = SolverStats()
        # short nested cycles of the top-level graph, reused as separators further down
        self.rings = list(rings or ())
        # sibling cycle-stars often rebuild the same sub-instance further down
        self.memo: dict[tuple, Decision] = {}

    def separator(self, cg: CGraph) -> SeparatorReport | None:
        """A separator whose recursive instances are smaller than ``cg``, if any."""
        g = cg.graph
        n = cg.n
        rep = None
        if self.options.nested:
            try:
                rep = nested_cycle_separator(g, self.options.nested, cycles=self.rings)
                self.stats.nested_used += 1
            except (NotNested, TooSmall):
                rep = None
        if rep is None:
            try:
                rep = cycle_separator(g, colors=cg.cluster_of)
            except (TooSmall, NotTwoConnected):
                return None
        counts = Counter(cg.cluster_of[v] for v in rep.cycle)
        coverable = sum(c for c in counts.values() if c >= 2)
        if progress_bound(rep.max_side, rep.size, coverable) >= n:
            return None
        return rep

    @property
    def base_size(self) -> int:
        """Largest instance sent to exhaustive search; nested separators need more than 5h vertices."""
        h = self.options.nested
        return max(self.options.threshold, 5 * h) if h else self.options.threshold

    def testcp(self, cg: CGraph, depth: int = 0) -> Decision:
        key = instance_key(cg)
        hit = self.memo.get(key)
        if hit is not None:
            self.stats.memo_hits += 1
            return hit
        d = self._testcp(cg, depth)
        if len(self.memo) >= self.options.memo_size:
            del self.memo[next(iter(self.memo))]
        self.memo[key] = d
        return d

    def _testcp(self, cg: CGraph, depth: int) -> Decision:
        self.stats.calls += 1
        self.stats.max_depth = max(self.stats.max_depth, depth)
        if cg.n <= self.base_size or cg.is_c_connected():
            return base_case(cg, self.stats)
        if not cg.graph.is_two_connected():
            raise NotTwoConnected("recursive step needs a 2-connected graph")
        rep = self.separator(cg)
        if rep is None:
            return base_case(cg, self.stats)
        self.stats.separators.append(rep.size)
        rho = rep.cycle
        if is_cluster_separator(cg, rho):
            return Decision(False, reason=CLUSTER_SEPARATOR)
        # cheap necessary condition; most stellated sub-instances fail it
        if not connectable(cg):
            return Decision(False, reason=UNCONNECTABLE)
        sp = _split(cg, rho)
        for cs in enumerate_cycle_stars(cg, rho):
            w = self.try_star(sp, cs, depth)
            if w is not None:
                return Decision(True, w)
        return Decision(False, reason=EXHAUSTED)

    def try_star(self, sp: _Split, cs: CycleStar, depth: int) -> Witness | None:
        self.stats.stars_tried += 1
        c_plus = outer_instance(sp, cs)
        assert c_plus.n < sp.cg.n, "recursion must shrink the instance"
        d_plus = self.testcp(c_plus, depth + 1)
        if not d_plus:
            return None
        h_plus = d_plus.witness.super_graph
        c_minus = inner_instance(sp, h_plus)
        assert c_minus.n < sp.cg.n, "recursion must shrink the instance"
        d_minus = self.testcp(c_minus, depth + 1)
        if not d_minus:
            return None
        return assemble_witness(sp.cg, (c_minus, d_minus.witness.super_graph), (c_plus, h_plus))

    def top_level(self, cg: CGraph) -> Decision:
        """``testcp`` with the first split's cycle-stars fanned out to worker processes."""
        opts = self.options
        if opts.nested and not self.rings and cg.graph.outer is not None:
            self.rings = nested_cycles(cg.graph, opts.nested)
        if opts.workers <= 1 or cg.n <= self.base_size or cg.is_c_connected():
            return self.testcp(cg)
        self.stats.calls += 1
        rep = self.separator(cg)
        if rep is None:
            return base_case(cg, self.stats)
        self.stats.separators.append(rep.size)
        if is_cluster_separator(cg, rep.cycle):
            return Decision(False, reason=CLUSTER_SEPARATOR)
        sp = _split(cg, rep.cycle)
        stars = list(enumerate_cycle_stars(cg, rep.cycle))
        sub_opts = replace(opts, workers=1)
        with ProcessPoolExecutor(max_workers=opts.workers) as pool:
            futures = {pool.submit(_star_job, sp, cs, sub_opts, self.rings): i for i, cs in enumerate(stars)}
            results: dict[int, tuple[Witness | None, SolverStats]] = {}
            pending = set(futures)
            while pending:
                done, pending = wait(pending, return_when=FIRST_COMPLETED)
                for fut in done:
                    results[futures[fut]] = fut.result()
                winner = self._winner(results, len(stars))
                if winner is not None:
                    for fut in pending:
                        fut.cancel()
                    break
        for _, st in results.values():
            st.max_depth += 1
            self.stats.merge(st)
        winner = self._winner(results, len(stars))
        if winner is not None and results[winner][0] is not None:
            return Decision(True, results[winner][0])
        return Decision(False, reason=EXHAUSTED)

    def _winner(self, results: dict, total: int) -> int | None:
        """Index of the reported star, or ``None`` while undecided."""
        if self.options.parallel_any:
            hits = [i for i, (w, _) in results.items() if w is not None]
            if hits:
                return min(hits)
        for i in range(total):
            if i not in results:
                return None
            if results[i][0] is not None:
                return i
        return total - 1 if total else None


def outer_check(cg: CGraph, rho: Cycle, options: SolverOptions | None = None) -> list[tuple[CycleStar, Witness]]:
    """Every cycle-star of the inside for which the outside instance is c-planar, with its witness.

    ``Solver.testcp`` interleaves this with ``inner_check`` star by star and
    stops at the first success; this eager form is for inspection.
    """
    solver = Solver(options or SolverOptions())
    sp = _split(cg, rho)
    out = []
    for cs in enumerate_cycle_stars(cg, rho):
        d = solver.testcp(outer_instance(sp, cs), 1)
        if d:
            out.append((cs, d.witness))
    return out


def inner_check(
    cg: CGraph, rho: Cycle, admissible: list[tuple[CycleStar, Witness]], options: SolverOptions | None = None
) -> Decision:
    solver = Solver(options or SolverOptions())
    sp = _split(cg, rho)
    for cs, w_plus in admissible:
        c_minus = inner_instance(sp, w_plus.super_graph)
        d_minus = solver.testcp(c_minus, 1)
        if d_minus:
            return Decision(True, assemble_witness(cg, (c_minus, d_minus.witness.super_graph),
                                                   (w_plus.instance, w_plus.super_graph)))
    return Decision(False, reason=EXHAUSTED)


def _star_job(sp: _Split, cs: CycleStar, options: SolverOptions, rings: list[Cycle]):
    s = Solver(options, rings)
    return s.try_star(sp, cs, 0), s.stats


def test_cplanarity(cg: CGraph, options: SolverOptions | None = None, **kwargs) -> Decision:
    """Decide c-planarity of an embedded flat c-graph.

    Any face may serve as the outer face when checking that no cluster
    cycle encloses a foreign vertex.

    Keyword arguments override fields of ``options``.
    """
    opts = replace(options or SolverOptions(), **kwargs)
    solver = Solver(opts)
    cond = check_condition_ii(cg)
    if not cond.ok:
        return Decision(False, reason=CONDITION_II, stats={"violation": cond.violation})
    work, prov = cg, None
    wants_gadgets = opts.gadgets == "always" or (
        opts.gadgets == "auto" and cg.n > opts.threshold and not cg.graph.is_two_connected()
    )
    if wants_gadgets:
        work, prov = make_three_connected(cg)
    decision = solver.top_level(work)
    decision.stats.update(solver.stats.as_dict())
    decision.stats["n"] = work.n
    if decision.witness is not None:
        decision.witness.provenance = prov
        if opts.check_witness:
            report = verify_witness(work, decision.witness)
            if not report.ok:
                raise MergeIncompatible(f"witness fails verification: {report.violations}")
    return decision


test_cplanarity.__test__ = False  # keep pytest from collecting it
