"""Seeded mixtures of small generated instances, for sweeps and equivalence checks."""

from __future__ import annotations

import random
from typing import Iterator

from ..cgraph import CGraph
from ..saturate import candidate_saturating_edges
from .generate import buckytube, cluster_separator, cylinder_grid, h_nested, nested_triangles, random_planar

FAMILY_WEIGHTS = {
    "random_planar": 4,
    "nested_triangles": 1,
    "buckytube": 1,
    "h_nested": 1,
    "cylinder_grid": 1,
    "cluster_separator": 1,
}


def _draw(fam: str, rng: random.Random) -> CGraph:
    s = rng.randrange(10**6)
    if fam == "random_planar":
        return random_planar(rng.randint(6, 24), rng.randint(4, 6), seed=s, clusters=rng.randint(2, 5),
                             disconnect=rng.random() * 0.5)
    if fam == "nested_triangles":
        return nested_triangles(rng.randint(2, 8), rng.choice(["random", "alternating", "single"]), seed=s,
                                k=rng.randint(2, 4))
    if fam == "buckytube":
        return buckytube(rng.choice([4, 6]), rng.randint(1, 4), rng.choice(["random", "alternating", "sectors"]),
                         seed=s, k=rng.randint(2, 3))
    if fam == "h_nested":
        return h_nested(rng.randint(3, 5), rng.randint(2, 4), rng.random() < 0.5,
                        rng.choice(["random", "per-ring", "sectors"]), seed=s, k=rng.randint(2, 4))
    if fam == "cylinder_grid":
        return cylinder_grid(rng.randint(3, 6), rng.randint(2, 4), rng.choice(["random", "alternating", "sectors"]),
                             seed=s, k=rng.randint(2, 3))
    return cluster_separator(rng.choice(["basic", "ring", "nested", "random"]), seed=s, size=rng.randint(3, 6))


def mixed_corpus(count: int, seed: int = 0, max_n: int = 24, max_face: int = 6,
                 max_candidates: int = 30) -> Iterator[tuple[str, CGraph]]:
    """Yield ``count`` (family, instance) pairs within the given size limits.

    Draws that break a limit are discarded and redrawn, so the family mix
    is skewed slightly toward families that stay small.
    """
    rng = random.Random(seed)
    fams = [f for f, w in FAMILY_WEIGHTS.items() for _ in range(w)]
    made = 0
    while made < count:
        fam = rng.choice(fams)
        cg = _draw(fam, rng)
        if cg.n > max_n or cg.graph.max_face_size > max_face:
            continue
        if len(candidate_saturating_edges(cg)) > max_candidates:
            continue
        made += 1
        yield fam, cg
