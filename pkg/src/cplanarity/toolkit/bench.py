"""Benchmark runner: decide a corpus of generated instances and write CSV rows.

A corpus file looks like::

    {"format": 1, "timeout": 60, "workers": 2, "threshold": 64,
     "runs": [{"family": "h_nested", "params": {"h": 4, "caps": true},
               "sweep": {"levels": [5, 10, 20]}, "seeds": [0, 1],
               "nested": 4}]}

Every run expands to the product of its sweep values and seeds. Each
instance is solved in its own process so that a timeout can kill it.
Rows come out in corpus order whatever order the workers finish in.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
import multiprocessing as mp
import time
from multiprocessing.connection import wait
from typing import Any, Iterable

import numpy as np

from ..errors import SchemaError, TooSmall
from ..separator import cycle_separator
from ..solver import DEFAULT_THRESHOLD, SolverOptions, test_cplanarity
from .generate import generate

COLUMNS = [
    "family", "params", "seed", "n", "ell", "clusters", "status", "answer", "reason",
    "seconds", "depth", "calls", "stars_tried", "base_nodes", "max_candidates",
    "sep_size", "sep_max_side", "sep_const",
]
TIMING = {"seconds"}


def expand(corpus: dict) -> list[dict[str, Any]]:
    if not isinstance(corpus, dict) or "runs" not in corpus:
        raise SchemaError("corpus: missing field 'runs'")
    jobs = []
    for i, run in enumerate(corpus["runs"]):
        if "family" not in run:
            raise SchemaError(f"runs[{i}]: missing field 'family'")
        sweep = run.get("sweep", {})
        keys = sorted(sweep)
        for values in itertools.product(*(sweep[k] for k in keys)):
            params = dict(run.get("params", {}))
            params.update(zip(keys, values))
            for seed in run.get("seeds", [0]):
                jobs.append({
                    "family": run["family"],
                    "params": params,
                    "seed": seed,
                    "nested": run.get("nested"),
                    "threshold": run.get("threshold", corpus.get("threshold", DEFAULT_THRESHOLD)),
                })
    return jobs


def measure(job: dict) -> dict[str, Any]:
    """Generate, split once with the cycle separator, and decide one instance."""
    cg = generate(job["family"], job["params"], job["seed"])
    g = cg.graph
    row: dict[str, Any] = {
        "family": job["family"],
        "params": json.dumps(job["params"], sort_keys=True),
        "seed": job["seed"],
        "n": cg.n,
        "ell": g.max_face_size,
        "clusters": cg.cluster_count,
    }
    if g.is_two_connected():
        try:
            rep = cycle_separator(g)
            row["sep_size"] = rep.size
            row["sep_max_side"] = rep.max_side
            row["sep_const"] = round(rep.size / (g.max_face_size * math.sqrt(cg.n)), 4)
        except TooSmall:
            pass
    opts = SolverOptions(threshold=job["threshold"], nested=job.get("nested"))
    t = time.perf_counter()
    d = test_cplanarity(cg, opts)
    row["seconds"] = round(time.perf_counter() - t, 4)
    row["status"] = "ok"
    row["answer"] = d.label
    row["reason"] = d.reason or ""
    for k in ("depth", "calls", "stars_tried", "base_nodes", "max_candidates"):
        row[k] = d.stats.get(k, "")
    return row


def _child(conn, job):
    try:
        conn.send(("ok", measure(job)))
    except Exception as exc:  # reported as a row, never fatal
        conn.send(("error", f"{type(exc).__name__}: {exc}"))
    finally:
        conn.close()


def _failed(job: dict, status: str, detail: str = "") -> dict[str, Any]:
    return {
        "family": job["family"],
        "params": json.dumps(job["params"], sort_keys=True),
        "seed": job["seed"],
        "status": status,
        "reason": detail,
    }


def run_jobs(jobs: list[dict], timeout: float | None = None, workers: int = 1) -> list[dict[str, Any]]:
    ctx = mp.get_context("fork")
    rows: list[dict | None] = [None] * len(jobs)
    todo = list(enumerate(jobs))[::-1]
    live: dict = {}  # sentinel -> (index, process, conn, deadline)
    while todo or live:
        while todo and len(live) < max(1, workers):
            i, job = todo.pop()
            recv, send = ctx.Pipe(duplex=False)
            p = ctx.Process(target=_child, args=(send, job), daemon=True)
            p.start()
            send.close()
            deadline = time.monotonic() + timeout if timeout else None
            live[recv] = (i, p, deadline)
        now = time.monotonic()
        waits = [d - now for _, _, d in live.values() if d is not None]
        ready = wait(list(live), timeout=max(0.0, min(waits)) if waits else None)
        for conn in ready:
            i, p, _ = live.pop(conn)
            try:
                status, payload = conn.recv()
            except EOFError:
                status, payload = "error", "worker died"
            p.join()
            rows[i] = payload if status == "ok" else _failed(jobs[i], "error", payload)
        now = time.monotonic()
        for conn, (i, p, deadline) in list(live.items()):
            if deadline is not None and now >= deadline:
                p.kill()
                p.join()
                live.pop(conn)
                rows[i] = _failed(jobs[i], "timeout")
    return [r for r in rows if r is not None]


def write_csv(rows: Iterable[dict], out=None, timing: bool = True) -> str:
    cols = [c for c in COLUMNS if timing or c not in TIMING]
    buf = out or io.StringIO()
    w = csv.DictWriter(buf, fieldnames=cols, extrasaction="ignore", lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({c: r.get(c, "") for c in cols})
    return buf.getvalue() if out is None else ""


def growth_summary(rows: list[dict]) -> dict[str, Any]:
    """Per family, the slope of log2(seconds) against sqrt(ell * n) * log2(n)."""
    out: dict[str, Any] = {}
    fams = sorted({r["family"] for r in rows})
    for fam in fams:
        ok = [r for r in rows if r["family"] == fam and r.get("status") == "ok" and r["seconds"] > 0]
        entry: dict[str, Any] = {
            "instances": sum(r["family"] == fam for r in rows),
            "decided": len(ok),
            "timeouts": sum(r["family"] == fam and r.get("status") == "timeout" for r in rows),
        }
        consts = [r["sep_const"] for r in ok if r.get("sep_const") not in (None, "")]
        if consts:
            entry["max_sep_const"] = max(consts)
        if len({r["n"] for r in ok}) >= 2:
            x = np.array([math.sqrt(r["ell"] * r["n"]) * math.log2(r["n"]) for r in ok])
            y = np.log2([r["seconds"] for r in ok])
            slope, intercept = np.polyfit(x, y, 1)
            entry["log2_time_slope"] = round(float(slope), 5)
            entry["log2_time_intercept"] = round(float(intercept), 3)
        out[fam] = entry
    return out


def bench(corpus: dict, timeout: float | None = None, workers: int | None = None) -> tuple[list[dict], dict]:
    jobs = expand(corpus)
    timeout = corpus.get("timeout") if timeout is None else timeout
    workers = corpus.get("workers", 1) if workers is None else workers
    rows = run_jobs(jobs, timeout, workers)
    return rows, growth_summary(rows)
