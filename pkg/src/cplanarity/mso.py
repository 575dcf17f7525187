"""MSO2 formula for the saturation question, its text form, and a naive evaluator.

The formula has the shape::

    (exists E+ (subset E*) (and (planar E_G E+) (connected V1 E_G E+) ...))

``E_G`` holds the edges of the input, ``E*`` its candidate saturating edges
and ``V1..Vc`` the vertex sets of the clusters that are not connected yet.
The two predicates are kept as named macros:

``planar E_G X``
    the edges of ``X`` can be added to the fixed embedding of ``E_G``,
    each inside its face, with no two crossing. On a 3-connected graph the
    embedding is unique, so this agrees with planarity of ``E_G + X``.
``connected V E_G X``
    ``V`` induces a connected subgraph of ``E_G + X``.

The text form lists one declaration per labelled set, then the formula.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Union

from .cgraph import CGraph
from .embed import EmbeddedGraph, edge_key
from .errors import NotThreeConnectedContext, SchemaError, TooLarge
from .gadgets import is_three_connected
from .saturate import build_diamond

DEFAULT_CAP = 20

Edge = tuple[int, int]
StarEdge = tuple[int, int, int]  # u, v, face


@dataclass(frozen=True)
class Atom:
    name: str
    args: tuple[str, ...]


@dataclass(frozen=True)
class And:
    args: tuple["Formula", ...]


@dataclass(frozen=True)
class Exists:
    var: str
    domain: str
    body: "Formula"


Formula = Union[Atom, And, Exists]

# Whether an atom can only become true (+1) or only false (-1) as its set variable grows.
POLARITY = {"planar": -1, "connected": 1}


def cplanar_formula(names: list[str]) -> Exists:
    conj = [Atom("planar", ("E_G", "E+"))] + [Atom("connected", (v, "E_G", "E+")) for v in names]
    return Exists("E+", "E*", And(tuple(conj)))


@dataclass(frozen=True)
class FormulaInstance:
    """Labels over the input plus candidate edges, and the formula over them."""

    rotation: tuple[tuple[int, tuple[int, ...]], ...]
    e_g: tuple[Edge, ...]
    e_star: tuple[StarEdge, ...]
    vertex_sets: tuple[tuple[str, int, tuple[int, ...]], ...]  # name, cluster, vertices
    formula: Formula

    @cached_property
    def graph(self) -> EmbeddedGraph:
        return EmbeddedGraph({v: r for v, r in self.rotation})

    @property
    def c(self) -> int:
        return len(self.vertex_sets)

    def to_text(self) -> str:
        return emit_text(self)


def emit_mso2(cg: CGraph, check: bool = True) -> FormulaInstance:
    """Labels and formula for ``cg``, which should already be 3-connected."""
    g = cg.graph
    if check and not is_three_connected(g):
        warnings.warn(
            "graph is not 3-connected; the formula may accept a different embedding",
            NotThreeConnectedContext,
            stacklevel=2,
        )
    dia = build_diamond(cg)
    comps = cg.components
    sets = []
    for mu in cg.clusters:
        if comps.count(mu) > 1:
            sets.append((f"V{len(sets) + 1}", mu, tuple(sorted(cg.clusters[mu]))))
    return FormulaInstance(
        tuple((v, tuple(g.rotation(v))) for v in sorted(g.vertices)),
        tuple(dia.base_edges),
        tuple(sorted((c.u, c.v, c.face) for c in dia.candidates)),
        tuple(sets),
        cplanar_formula([s[0] for s in sets]),
    )


def _fmt(f: Formula) -> str:
    if isinstance(f, Atom):
        return "(" + " ".join((f.name, *f.args)) + ")"
    if isinstance(f, And):
        return "(and" + "".join(" " + _fmt(a) for a in f.args) + ")"
    return f"(exists {f.var} (subset {f.domain}) {_fmt(f.body)})"


def emit_text(fi: FormulaInstance) -> str:
    lines = [
        "; cplanar formula, format 1",
        "; (planar E X): X fits into the faces of the embedded graph without crossings",
        "; (connected V E X): V induces a connected subgraph of E plus X",
    ]
    for v, r in fi.rotation:
        lines.append(f"(rotation {v}" + "".join(f" {u}" for u in r) + ")")
    lines.append("(edges E_G" + "".join(f" ({u} {v})" for u, v in fi.e_g) + ")")
    lines.append("(edges E*" + "".join(f" ({u} {v} {f})" for u, v, f in fi.e_star) + ")")
    for name, mu, vs in fi.vertex_sets:
        lines.append(f"(vertices {name} (cluster {mu})" + "".join(f" {v}" for v in vs) + ")")
    lines.append("(formula " + _fmt(fi.formula) + ")")
    return "\n".join(lines) + "\n"


_TOKEN = re.compile(r";[^\n]*|\(|\)|[^\s()]+")


def _tokens(text: str) -> Iterator[str]:
    for m in _TOKEN.finditer(text):
        t = m.group()
        if not t.startswith(";"):
            yield t


def _read(text: str) -> list:
    stack: list[list] = [[]]
    for t in _tokens(text):
        if t == "(":
            stack.append([])
        elif t == ")":
            if len(stack) == 1:
                raise SchemaError("unbalanced ')'")
            done = stack.pop()
            stack[-1].append(done)
        else:
            stack[-1].append(t)
    if len(stack) != 1:
        raise SchemaError("unbalanced '('")
    return stack[0]


def _formula(x) -> Formula:
    if not isinstance(x, list) or not x:
        raise SchemaError(f"bad formula term {x!r}")
    head = x[0]
    if head == "and":
        return And(tuple(_formula(a) for a in x[1:]))
    if head == "exists":
        if len(x) != 4 or not isinstance(x[2], list) or x[2][0] != "subset":
            raise SchemaError("expected (exists VAR (subset SET) BODY)")
        return Exists(x[1], x[2][1], _formula(x[3]))
    if any(isinstance(a, list) for a in x):
        raise SchemaError(f"bad atom {x!r}")
    return Atom(head, tuple(x[1:]))


def parse_text(text: str) -> FormulaInstance:
    rotation, e_g, e_star, sets, formula = [], [], [], [], None
    try:
        for decl in _read(text):
            kind = decl[0]
            if kind == "rotation":
                rotation.append((int(decl[1]), tuple(int(u) for u in decl[2:])))
            elif kind == "edges" and decl[1] == "E_G":
                e_g = [tuple(int(a) for a in e) for e in decl[2:]]
            elif kind == "edges" and decl[1] == "E*":
                e_star = [tuple(int(a) for a in e) for e in decl[2:]]
            elif kind == "vertices":
                sets.append((decl[1], int(decl[2][1]), tuple(int(v) for v in decl[3:])))
            elif kind == "formula":
                formula = _formula(decl[1])
            else:
                raise SchemaError(f"unknown declaration {kind!r}")
    except (IndexError, TypeError, ValueError) as exc:
        if isinstance(exc, SchemaError):
            raise
        raise SchemaError(f"malformed declaration: {exc}") from None
    if formula is None:
        raise SchemaError("no formula")
    return FormulaInstance(tuple(rotation), tuple(e_g), tuple(e_star), tuple(sets), formula)


class _Model:
    """Interpretation of the predicates over one formula instance."""

    def __init__(self, fi: FormulaInstance):
        g = fi.graph
        self.edges = {"E_G": [edge_key(u, v) for u, v in fi.e_g]}
        self.vsets = {name: set(vs) for name, _, vs in fi.vertex_sets}
        self.star = list(fi.e_star)
        fs = g.faces
        self.pos = []
        for u, v, f in self.star:
            walk = [d[0] for d in fs[f]]
            a, b = sorted((walk.index(u), walk.index(v)))
            self.pos.append((f, a, b))

    def planar(self, base: str, chosen: list[int]) -> bool:
        by_face: dict[int, list[tuple[int, int]]] = {}
        for i in chosen:
            f, a, b = self.pos[i]
            for c, d in by_face.get(f, ()):
                if a < c < b < d or c < a < d < b:
                    return False
            by_face.setdefault(f, []).append((a, b))
        return True

    def connected(self, vset: str, base: str, chosen: list[int]) -> bool:
        vs = self.vsets[vset]
        adj: dict[int, list[int]] = {v: [] for v in vs}
        pairs = self.edges[base] + [self.star[i][:2] for i in chosen]
        for u, v in pairs:
            if u in vs and v in vs:
                adj[u].append(v)
                adj[v].append(u)
        start = next(iter(vs))
        seen, stack = {start}, [start]
        while stack:
            for y in adj[stack.pop()]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == len(vs)

    def atom(self, a: Atom, chosen: list[int]) -> bool:
        fn = getattr(self, a.name, None)
        if a.name not in POLARITY or fn is None:
            raise SchemaError(f"unknown predicate {a.name!r}")
        return fn(*a.args[:-1], chosen)


def naive_model_check(fi: FormulaInstance, cap: int = DEFAULT_CAP) -> bool:
    """Decide the formula by trying subsets of ``E*``.

    The search fixes candidates one at a time. A branch dies when an atom
    that only gets worse as the set grows already fails, or when an atom
    that only gets better fails even with every undecided candidate added.
    """
    f = fi.formula
    if not isinstance(f, Exists) or f.domain != "E*":
        raise SchemaError("formula must quantify a subset of E*")
    if len(fi.e_star) > cap:
        raise TooLarge(f"|E*| = {len(fi.e_star)} exceeds the cap of {cap}")
    atoms = list(f.body.args) if isinstance(f.body, And) else [f.body]
    for a in atoms:
        if not isinstance(a, Atom):
            raise SchemaError("only conjunctions of atoms are supported under the quantifier")
    model = _Model(fi)
    down = [a for a in atoms if POLARITY.get(a.name) == -1]
    up = [a for a in atoms if POLARITY.get(a.name) == 1]
    m = len(fi.e_star)
    chosen: list[int] = []

    def search(i: int) -> bool:
        if not all(model.atom(a, chosen) for a in down):
            return False
        if not all(model.atom(a, chosen + list(range(i, m))) for a in up):
            return False
        if i == m:
            return True
        chosen.append(i)
        if search(i + 1):
            return True
        chosen.pop()
        return search(i + 1)

    return search(0)
