"""JSON reading and writing for instances and witnesses.

Instance files look like::

    {"format": 1, "n": 3, "rotation": [[1, 2], [2, 0], [0, 1]],
     "clusters": [0, 0, 0], "outer": [0, 1]}

Vertices are ``0..n-1`` and cluster ids are ``0..k-1`` with no gaps.
"""

from __future__ import annotations

import json
from typing import Any

from ..cgraph import CGraph
from ..decision import Witness
from ..embed import EmbeddedGraph, build_embedded_graph, edge_key
from ..errors import CPlanarityError, SchemaError
from ..gadgets import Provenance
from ..saturate import apply_saturation, candidate_saturating_edges

FORMAT = 1


def _load(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def _field(doc: dict, name: str, kind: type, where: str = "instance"):
    if name not in doc:
        raise SchemaError(f"{where}: missing field '{name}'")
    value = doc[name]
    if not isinstance(value, kind) or isinstance(value, bool):
        raise SchemaError(f"{where}: field '{name}' must be {kind.__name__}")
    return value


def _int_list(values, where: str) -> list[int]:
    if not isinstance(values, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in values):
        raise SchemaError(f"{where}: expected a list of integers")
    return values


def _check_format(doc: dict, where: str) -> None:
    fmt = doc.get("format", FORMAT)
    if fmt != FORMAT:
        raise SchemaError(f"{where}: unsupported format {fmt!r}")


def instance_from_dict(doc: Any) -> CGraph:
    if not isinstance(doc, dict):
        raise SchemaError("instance: expected a JSON object")
    _check_format(doc, "instance")
    n = _field(doc, "n", int)
    rotation = _field(doc, "rotation", list)
    clusters = _field(doc, "clusters", list)
    if len(rotation) != n:
        raise SchemaError(f"instance: 'rotation' has {len(rotation)} entries, expected n = {n}")
    for v, r in enumerate(rotation):
        for u in _int_list(r, f"rotation[{v}]"):
            if not 0 <= u < n:
                raise SchemaError(f"rotation[{v}]: vertex {u} out of range")
    _int_list(clusters, "clusters")
    if len(clusters) != n:
        raise SchemaError(f"instance: 'clusters' has {len(clusters)} entries, expected n = {n}")
    used = set(clusters)
    if used != set(range(len(used))):
        missing = sorted(set(range(max(used, default=-1) + 1)) - used)
        raise SchemaError(f"clusters: ids must be dense from 0, missing {missing}")
    outer = doc.get("outer")
    if outer is not None:
        if len(_int_list(outer, "outer")) != 2:
            raise SchemaError("outer: expected a dart [u, v]")
        outer = tuple(outer)
    try:
        g = build_embedded_graph(n, rotation, outer)
    except CPlanarityError as exc:
        raise type(exc)(f"instance: {exc}") from None
    return CGraph(g, dict(enumerate(clusters)))


def parse_instance(text: str) -> CGraph:
    return instance_from_dict(_load(text))


def normalize(cg: CGraph) -> tuple[CGraph, dict[int, int]]:
    """Relabel vertices and clusters densely; returns the graph and the vertex map."""
    vmap = {v: i for i, v in enumerate(sorted(cg.graph.vertices))}
    cmap = {c: i for i, c in enumerate(sorted(set(cg.cluster_of.values())))}
    if all(k == v for k, v in vmap.items()) and all(k == v for k, v in cmap.items()):
        return cg, vmap
    g = cg.graph
    rot = {vmap[v]: [vmap[u] for u in g.rotation(v)] for v in g.vertices}
    outer = (vmap[g.outer[0]], vmap[g.outer[1]]) if g.outer else None
    return CGraph(EmbeddedGraph(rot, outer), {vmap[v]: cmap[c] for v, c in cg.cluster_of.items()}), vmap


def instance_to_dict(cg: CGraph) -> dict:
    cg, _ = normalize(cg)
    g = cg.graph
    doc: dict[str, Any] = {
        "format": FORMAT,
        "n": g.vertex_count,
        "rotation": [list(g.rotation(v)) for v in range(g.vertex_count)],
        "clusters": [cg.cluster_of[v] for v in range(g.vertex_count)],
    }
    if g.outer:
        doc["outer"] = list(g.outer)
    return doc


def serialize_instance(cg: CGraph) -> str:
    return json.dumps(instance_to_dict(cg)) + "\n"


def witness_to_dict(w: Witness) -> dict:
    inst, vmap = normalize(w.instance)
    old, new = w.instance.graph.faces, inst.graph.faces
    added = []
    for f, u, v in w.added:
        a, b = old[f][0]
        added.append({"face": new.face_of_dart[(vmap[a], vmap[b])], "u": vmap[u], "v": vmap[v]})
    return {
        "format": FORMAT,
        "added": added,
        "origin": w.provenance.to_json() if w.provenance else [],
        "instance": instance_to_dict(inst),
        "super": instance_to_dict(w.super_graph),
    }


def serialize_witness(w: Witness) -> str:
    return json.dumps(witness_to_dict(w)) + "\n"


def _provenance_from_json(rows: list) -> Provenance | None:
    if not rows:
        return None
    origin = {}
    for i, row in enumerate(rows):
        if not isinstance(row, dict) or "vertex" not in row:
            raise SchemaError(f"origin[{i}]: expected an object with 'vertex'")
        if "original" in row:
            origin[row["vertex"]] = ("original", row["original"])
        else:
            origin[row["vertex"]] = (row.get("gadget"), tuple(row.get("anchor", ())))
    return Provenance(origin)


def parse_witness(text: str, instance: CGraph | None = None) -> Witness:
    """Read a witness file.

    ``instance`` is taken from the file unless given. When the file carries
    no ``super`` graph, the added edges are drawn into their faces; a triple
    that names no candidate edge then raises ``SchemaError``.
    """
    doc = _load(text)
    if not isinstance(doc, dict):
        raise SchemaError("witness: expected a JSON object")
    _check_format(doc, "witness")
    added = []
    for i, e in enumerate(_field(doc, "added", list, "witness")):
        if not isinstance(e, dict):
            raise SchemaError(f"added[{i}]: expected an object")
        added.append(tuple(_field(e, k, int, f"added[{i}]") for k in ("face", "u", "v")))
    if instance is None:
        instance = instance_from_dict(_field(doc, "instance", dict, "witness"))
    if "super" in doc:
        sup = instance_from_dict(_field(doc, "super", dict, "witness"))
    else:
        index = {c.key: c for c in candidate_saturating_edges(instance)}
        try:
            chosen = [index[(f, *edge_key(u, v))] for f, u, v in added]
        except KeyError as exc:
            raise SchemaError(f"added: {exc.args[0]} is not a candidate edge") from None
        sup = apply_saturation(instance, chosen)
    return Witness(instance, sup, added, _provenance_from_json(doc.get("origin", [])))
