"""Answers and certificates returned by the solver and the oracle."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .cgraph import CGraph
from .gadgets import Provenance

CLUSTER_SEPARATOR = "cluster-separator"
EXHAUSTED = "exhausted"
CONDITION_II = "condition-ii"
UNCONNECTABLE = "unconnectable"


@dataclass
class Witness:
    """A c-connected plane super c-graph of ``instance``.

    ``added`` lists the inserted edges as ``(face, u, v)`` triples, faces
    numbered as in ``instance``. When gadgets were applied, ``instance`` is
    the transformed graph and ``provenance`` maps it back to the input.
    """

    instance: CGraph
    super_graph: CGraph
    added: list[tuple[int, int, int]]
    provenance: Provenance | None = None


@dataclass
class Decision:
    answer: bool
    witness: Witness | None = None
    reason: str | None = None
    stats: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.answer != (self.witness is not None):
            raise ValueError("a YES decision needs a witness and a NO decision must not have one")

    def __bool__(self) -> bool:
        return self.answer

    @property
    def label(self) -> str:
        return "yes" if self.answer else "no"
