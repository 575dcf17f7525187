"""``cplan`` command line.

Exit codes: 0 yes (or ok), 1 no (or verification failed), 2 bad input,
3 timeout.
"""

from __future__ import annotations

import argparse
import json
import logging
import signal
import sys
import warnings
from contextlib import contextmanager
from pathlib import Path

from .cgraph import check_condition_ii
from .errors import CPlanarityError, NotThreeConnectedContext, SchemaError
from .gadgets import is_three_connected, make_three_connected
from .mso import emit_mso2
from .oracle import DEFAULT_CAP, brute_force_cplanar, verify_witness
from .saturate import candidate_saturating_edges
from .separator import cycle_separator, nested_cycle_separator
from .solver import DEFAULT_THRESHOLD, SolverOptions, test_cplanarity
from .toolkit import bench as bench_mod
from .toolkit.generate import FAMILIES, generate
from .toolkit.io import FORMAT, parse_instance, parse_witness, serialize_instance, serialize_witness
from .toolkit.render import render_svg

YES, NO, BAD_INPUT, TIMED_OUT = 0, 1, 2, 3


class Timeout(Exception):
    pass


@contextmanager
def time_limit(seconds: float | None):
    if not seconds:
        yield
        return

    def fire(signum, frame):
        raise Timeout()

    old = signal.signal(signal.SIGALRM, fire)
    signal.setitimer(signal.ITIMER_REAL, seconds)
    try:
        yield
    finally:
        signal.setitimer(signal.ITIMER_REAL, 0)
        signal.signal(signal.SIGALRM, old)


def _read(path: str) -> str:
    return sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")


def _write(path: str | None, text: str) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _report(decision, as_json: bool) -> None:
    if as_json:
        doc = {"format": FORMAT, "answer": decision.label, "reason": decision.reason}
        doc["stats"] = {k: v for k, v in decision.stats.items() if isinstance(v, (int, float, str))}
        print(json.dumps(doc))
    else:
        print(decision.label if decision.answer else f"no ({decision.reason})")


def cmd_check(args) -> int:
    cg = parse_instance(_read(args.instance))
    opts = SolverOptions(
        threshold=args.threshold,
        nested=args.nested,
        gadgets=args.gadgets,
        workers=args.workers,
        parallel_any=args.parallel_any,
    )
    with time_limit(args.timeout):
        d = test_cplanarity(cg, opts)
    _report(d, args.json)
    if d.answer and args.emit_witness:
        _write(args.emit_witness, serialize_witness(d.witness))
    return YES if d.answer else NO


def cmd_oracle(args) -> int:
    cg = parse_instance(_read(args.instance))
    with time_limit(args.timeout):
        d = brute_force_cplanar(cg, cap=args.cap)
    _report(d, args.json)
    if d.answer and args.emit_witness:
        _write(args.emit_witness, serialize_witness(d.witness))
    return YES if d.answer else NO


def cmd_verify(args) -> int:
    cg = parse_instance(_read(args.instance))
    w = parse_witness(_read(args.witness))
    if w.provenance is not None:
        # the witness lives on the gadget expansion of the instance
        cg = make_three_connected(cg)[0]
    rep = verify_witness(cg, w)
    print(json.dumps({"format": FORMAT, **rep.to_json()}))
    return YES if rep.ok else NO


def _params(pairs: list[str]) -> dict:
    out = {}
    for p in pairs:
        if "=" not in p:
            raise SchemaError(f"parameter {p!r} is not KEY=VALUE")
        k, v = p.split("=", 1)
        try:
            out[k] = json.loads(v)
        except json.JSONDecodeError:
            out[k] = v
    return out


def cmd_gen(args) -> int:
    cg = generate(args.family, _params(args.param), args.seed)
    _write(args.output, serialize_instance(cg))
    return YES


def cmd_render(args) -> int:
    cg = parse_instance(_read(args.instance))
    w = parse_witness(_read(args.witness)) if args.witness else None
    if w is not None:
        cg = w.instance
    _write(args.output, render_svg(cg, w))
    return YES


def cmd_emit_mso(args) -> int:
    if args.expand:
        print("--expand is reserved and not implemented", file=sys.stderr)
        return BAD_INPUT
    cg = parse_instance(_read(args.instance))
    if args.gadgets:
        cg = make_three_connected(cg)[0]
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", NotThreeConnectedContext)
        fi = emit_mso2(cg)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    _write(args.output, fi.to_text())
    return YES


def cmd_stats(args) -> int:
    cg = parse_instance(_read(args.instance))
    g = cg.graph
    cond = check_condition_ii(cg)
    doc = {
        "format": FORMAT,
        "n": g.vertex_count,
        "edges": g.edge_count,
        "faces": g.face_count,
        "max_face": g.max_face_size,
        "clusters": cg.cluster_count,
        "disconnected_clusters": len(cg.disconnected_clusters()),
        "candidates": len(candidate_saturating_edges(cg)),
        "two_connected": g.is_two_connected(),
        "three_connected": is_three_connected(g),
        "admissible_outer_faces": sorted(cond.admissible_outer),
    }
    if args.separator:
        try:
            rep = nested_cycle_separator(g, args.nested) if args.nested else cycle_separator(g)
        except CPlanarityError as exc:
            doc["separator"] = {"error": f"{type(exc).__name__}: {exc}"}
        else:
            doc["separator"] = rep.to_json()
    print(json.dumps(doc))
    return YES


def cmd_bench(args) -> int:
    corpus = json.loads(_read(args.corpus))
    rows, summary = bench_mod.bench(corpus, timeout=args.timeout, workers=args.workers)
    out = bench_mod.write_csv(rows, timing=not args.no_timing)
    _write(args.output, out)
    if args.summary:
        _write(args.summary, json.dumps({"format": FORMAT, "families": summary}, indent=2) + "\n")
    return YES


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cplan", description="Clustered planarity for embedded flat c-graphs.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def decide_flags(q):
        q.add_argument("instance")
        q.add_argument("--timeout", type=float, default=None, help="seconds before giving up (exit 3)")
        q.add_argument("--emit-witness", metavar="PATH", help="write the witness JSON on a yes answer")
        q.add_argument("--json", action="store_true", help="print the decision as JSON")

    q = sub.add_parser("check", help="decide with the divide-and-conquer solver")
    decide_flags(q)
    q.add_argument("--threshold", type=int, default=DEFAULT_THRESHOLD)
    q.add_argument("--nested", type=int, default=None, metavar="H", help="prefer nested cycle separators of size H")
    q.add_argument("--gadgets", choices=["auto", "always", "never"], default="auto")
    q.add_argument("--workers", type=int, default=1)
    q.add_argument("--parallel-any", action="store_true", help="report whichever worker finds a witness first")
    q.add_argument("--seed", type=int, default=0, help="accepted for symmetry; the solver is deterministic")
    q.set_defaults(func=cmd_check)

    q = sub.add_parser("oracle", help="decide by exhaustive search")
    decide_flags(q)
    q.add_argument("--cap", type=int, default=DEFAULT_CAP)
    q.set_defaults(func=cmd_oracle)

    q = sub.add_parser("verify", help="check a witness against an instance")
    q.add_argument("instance")
    q.add_argument("witness")
    q.set_defaults(func=cmd_verify)

    q = sub.add_parser("gen", help="generate an instance")
    q.add_argument("family", choices=sorted(FAMILIES))
    q.add_argument("param", nargs="*", help="KEY=VALUE generator parameters")
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("-o", "--output")
    q.set_defaults(func=cmd_gen)

    q = sub.add_parser("render", help="draw an instance as SVG")
    q.add_argument("instance")
    q.add_argument("--witness")
    q.add_argument("-o", "--output")
    q.set_defaults(func=cmd_render)

    q = sub.add_parser("emit-mso", help="write the MSO2 formula of an instance")
    q.add_argument("instance")
    q.add_argument("-o", "--output")
    q.add_argument("--gadgets", action="store_true", help="apply the 3-connectivity gadgets first")
    q.add_argument("--expand", action="store_true", help="reserved")
    q.set_defaults(func=cmd_emit_mso)

    q = sub.add_parser("stats", help="print instance statistics as JSON")
    q.add_argument("instance")
    q.add_argument("--separator", action="store_true", help="include a balanced cycle separator")
    q.add_argument("--nested", type=int, default=None, metavar="H", help="use the nested separator for size H")
    q.set_defaults(func=cmd_stats)

    q = sub.add_parser("bench", help="run a benchmark corpus and write CSV")
    q.add_argument("corpus")
    q.add_argument("-o", "--output")
    q.add_argument("--summary", metavar="PATH", help="write the growth summary JSON")
    q.add_argument("--timeout", type=float, default=None)
    q.add_argument("--workers", type=int, default=None)
    q.add_argument("--no-timing", action="store_true", help="omit wall-clock columns")
    q.set_defaults(func=cmd_bench)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except Timeout:
        print("timeout", file=sys.stderr)
        return TIMED_OUT
    except (CPlanarityError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
