"""Acceptance criteria, one test each, with a pass/fail line per criterion.

Run with ``pytest tests/test_acceptance.py`` or as a script. Witnesses of
every YES answer are collected as the suites run and re-verified by the
witness-soundness test, which therefore runs last.
"""

from __future__ import annotations

import math
import sys
import time
import warnings
from collections import Counter

import pytest

from conftest import ACCEPTANCE_LINES
from cplanarity.cgraph import CGraph, check_condition_ii
from cplanarity.cyclestar import catalan, enumerate_cycle_stars, noncrossing_partitions
from cplanarity.decision import Decision
from cplanarity.embed import EmbeddedGraph
from cplanarity.errors import NotThreeConnectedContext
from cplanarity.gadgets import is_three_connected, make_three_connected
from cplanarity.mso import emit_mso2, naive_model_check
from cplanarity.oracle import brute_force_cplanar, verify_witness
from cplanarity.saturate import candidate_saturating_edges
from cplanarity.separator import cycle_separator
from cplanarity.solver import test_cplanarity as decide
from cplanarity.toolkit.corpus import FAMILY_WEIGHTS, mixed_corpus
from cplanarity.toolkit.generate import (
    buckytube,
    cluster_separator,
    cylinder_grid,
    h_nested,
    nested_triangles,
    random_planar,
)

from test_cyclestar import count_by_brute_force

YES_WITNESSES: list[tuple[str, CGraph, Decision]] = []
TRANSFORM_CAP = 400


def record(number: int, ok: bool, detail: str) -> None:
    ACCEPTANCE_LINES.append(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")


def keep(suite: str, cg: CGraph, d: Decision) -> Decision:
    if d.answer:
        YES_WITNESSES.append((suite, cg, d))
    return d


@pytest.fixture(scope="module")
def small_transformed():
    """Corpus instances with n <= 10 next to their 3-connected expansions."""
    return [(fam, cg, make_three_connected(cg)[0]) for fam, cg in mixed_corpus(200, seed=404, max_n=10)]


def test_oracle_equivalence():
    t0 = time.perf_counter()
    corpus = list(mixed_corpus(600, seed=2026))
    mismatches, no_count, recursed = [], 0, 0
    for i, (fam, cg) in enumerate(corpus):
        truth = brute_force_cplanar(cg).answer
        no_count += not truth
        for threshold in (64, 4):
            d = keep("oracle-equivalence", cg, decide(cg, threshold=threshold))
            recursed += d.stats.get("depth", 0) > 0
            if d.answer != truth:
                mismatches.append((i, fam, threshold))
    elapsed = time.perf_counter() - t0
    families = {fam for fam, _ in corpus}
    ok = (not mismatches and no_count >= 50 and families == set(FAMILY_WEIGHTS)
          and max(cg.n for _, cg in corpus) <= 24 and max(cg.graph.max_face_size for _, cg in corpus) <= 6
          and elapsed < 600)
    record(1, ok, f"{len(corpus)} instances, {no_count} NO, {len(mismatches)} mismatches, "
                  f"{recursed} recursive runs, {elapsed:.1f}s")
    assert not mismatches, mismatches[:5]
    assert no_count >= 50 and families == set(FAMILY_WEIGHTS)
    assert elapsed < 600


def ring(s: int) -> CGraph:
    rot = {i: [(i - 1) % s, (i + 1) % s] for i in range(s)}
    return CGraph(EmbeddedGraph(rot, (1, 0)), {i: 0 for i in range(s)})


def test_catalan_cross_check():
    expected = [1, 2, 5, 14, 42, 132, 429, 1430]
    got, independent = [], []
    for s in range(1, 9):
        parts = list(noncrossing_partitions([0] * s))
        if s >= 3:
            assert len(list(enumerate_cycle_stars(ring(s), range(s)))) == len(parts)
        got.append(len(parts))
        independent.append(len(count_by_brute_force([0] * s)))
    ok = got == expected == independent == [catalan(s) for s in range(1, 9)]
    record(3, ok, f"counts {got}")
    assert ok


def test_gadget_equivalence(small_transformed):
    mismatches, not3 = [], []
    for i, (fam, cg, tc) in enumerate(small_transformed):
        if not is_three_connected(tc.graph):
            not3.append(i)
        a = brute_force_cplanar(cg).answer
        b = keep("gadget-equivalence", tc, brute_force_cplanar(tc, cap=TRANSFORM_CAP)).answer
        if a != b:
            mismatches.append((i, fam))
    ok = not mismatches and not not3
    record(4, ok, f"{len(small_transformed)} instances, {len(mismatches)} answer mismatches, "
                  f"{len(not3)} not 3-connected")
    assert ok, (mismatches[:5], not3[:5])


def test_cluster_separator_soundness():
    wrong = []
    count = 0
    for kind in ("basic", "ring", "nested", "random"):
        for size in (3, 4, 6, 8):
            for seed in range(3):
                cg = cluster_separator(kind, seed=seed, size=size)
                fi = emit_mso2(make_three_connected(cg)[0])
                answers = (
                    decide(cg).answer,
                    decide(cg, threshold=4).answer,
                    brute_force_cplanar(cg).answer,
                    naive_model_check(fi),
                )
                count += 1
                if any(answers):
                    wrong.append((kind, size, seed, answers))
    record(5, not wrong, f"{count} instances, {len(wrong)} not answered NO by all three")
    assert not wrong, wrong


def separator_corpus():
    for i, n in enumerate([50, 100, 200, 400, 800, 1200, 1600, 2000] * 10):
        yield random_planar(n, 4 + i % 5, seed=i).graph
    for i in range(30):
        yield cylinder_grid(4 + i % 20, 3 + (7 * i) % 40).graph
    for i in range(30):
        yield buckytube(6, 2 + (11 * i) % 150).graph
    for i in range(30):
        yield h_nested(3 + i % 4, 5 + (13 * i) % 60, caps=i % 2 == 0, seed=i).graph
    for i in range(30):
        yield nested_triangles(4 + 22 * i, "single").graph


def test_separator_contract():
    bad, consts, count = [], [], 0
    for g in separator_corpus():
        count += 1
        n, ell = g.vertex_count, g.max_face_size
        assert n <= 2000 and g.is_two_connected()
        rep = cycle_separator(g)
        const = rep.size / (ell * math.sqrt(n))
        consts.append(const)
        if rep.max_side > math.ceil(2 * n / 3) or rep.size > 8 * ell * math.sqrt(n):
            bad.append((n, ell, rep.size, rep.max_side))
    ok = not bad and count >= 200
    record(6, ok, f"{count} instances, {len(bad)} violations, size/(ell*sqrt n) max {max(consts):.3f} "
                  f"mean {sum(consts) / len(consts):.3f}")
    assert ok, bad[:5]


def test_mso_equivalence(small_transformed):
    checked, skipped, mismatches, with_ii = 0, 0, [], 0
    with warnings.catch_warnings():
        warnings.simplefilter("error", NotThreeConnectedContext)
        for i, (fam, cg, tc) in enumerate(small_transformed):
            if len(candidate_saturating_edges(tc)) > 20:
                skipped += 1
                continue
            model = naive_model_check(emit_mso2(tc))
            saturation = brute_force_cplanar(tc, cap=TRANSFORM_CAP, condition_ii=False).answer
            checked += 1
            if model != saturation:
                mismatches.append((i, fam, "iii"))
            if check_condition_ii(tc).ok:
                with_ii += 1
                if model != brute_force_cplanar(tc, cap=TRANSFORM_CAP).answer:
                    mismatches.append((i, fam, "full"))
    ok = not mismatches and checked > 0
    record(7, ok, f"{checked} instances ({with_ii} with an admissible outer face), {skipped} over the |E*| cap, "
                  f"{len(mismatches)} mismatches")
    assert ok, mismatches[:5]


def h_nested_corpus():
    for h in (3, 4, 5, 6):
        for levels in (10, 20, 30):
            for clustering in ("alternating", "sectors", "per-ring"):
                for seed in range(2):
                    cg = h_nested(h, levels, caps=True, clustering=clustering, seed=seed, k=3, sizes="fixed")
                    if cg.n <= 200:
                        yield h, cg


def test_xp_path():
    disagree, slow, count, worst, answers = [], [], 0, 0.0, Counter()
    for h, cg in h_nested_corpus():
        count += 1
        t = time.perf_counter()
        a = keep("xp-path", cg, decide(cg, nested=h, threshold=16))
        spent = time.perf_counter() - t
        worst = max(worst, spent)
        b = keep("xp-path", cg, decide(cg, threshold=16))
        truth = brute_force_cplanar(cg).answer
        answers[a.label] += 1
        if spent > 300:
            slow.append((h, cg.n, spent))
        if not a.answer == b.answer == truth:
            disagree.append((h, cg.n, a.answer, b.answer, truth))
    ok = not disagree and not slow
    record(8, ok, f"{count} instances ({answers['yes']} YES), {len(disagree)} disagreements with the generic "
                  f"path or the oracle, slowest nested run {worst:.1f}s")
    assert ok, (disagree, slow)


def test_recursion_depth():
    rows, bad = [], []
    for levels in (4, 8, 15, 30, 45, 60):
        for clustering, k in (("alternating", 3), ("random", 2)):
            for seed in range(3):
                cg = nested_triangles(levels, clustering, seed=seed, k=k)
                d = keep("recursion", cg, decide(cg, threshold=8))
                depth = d.stats.get("depth", 0)
                rows.append((cg.n, depth))
                if depth > 4 * math.log2(cg.n):
                    bad.append((levels, clustering, seed, depth))
    deepest = max(rows, key=lambda r: r[1])
    ok = not bad and deepest[1] > 0
    record(9, ok, f"{len(rows)} instances, max depth {deepest[1]} at n={deepest[0]} "
                  f"(bound {4 * math.log2(deepest[0]):.1f}), {len(bad)} over the bound")
    assert ok, bad


def test_witness_soundness():
    failures = []
    for suite, cg, d in YES_WITNESSES:
        w = d.witness
        base = w.instance if w.provenance is not None else cg
        rep = verify_witness(base, w)
        if not rep.ok:
            failures.append((suite, rep.violations[:2]))
    suites = Counter(s for s, _, _ in YES_WITNESSES)
    ok = not failures and len(YES_WITNESSES) > 0
    record(2, ok, f"{len(YES_WITNESSES)} YES witnesses from {dict(suites)}, {len(failures)} failed verification")
    assert ok, failures[:5]


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v", "-p", "no:cacheprovider"]))
