import csv
import io
import json
import xml.etree.ElementTree as ET

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cplanarity.cli import main
from cplanarity.errors import BadParams, NonSymmetricRotation, SchemaError
from cplanarity.oracle import verify_witness
from cplanarity.solver import test_cplanarity as decide
from cplanarity.toolkit import bench
from cplanarity.toolkit.generate import FAMILIES, buckytube, cluster_separator, generate, nested_triangles
from cplanarity.toolkit.io import (
    normalize,
    parse_instance,
    parse_witness,
    serialize_instance,
    serialize_witness,
)
from cplanarity.toolkit.render import render_svg, tutte_layout

from conftest import triangle

TRIANGLE = '{"format": 1, "n": 3, "rotation": [[1, 2], [2, 0], [0, 1]], "clusters": [0, 0, 0], "outer": [1, 0]}'
C4 = '{"format": 1, "n": 4, "rotation": [[3, 1], [0, 2], [1, 3], [2, 0]], "clusters": [0, 1, 0, 1], "outer": [1, 0]}'


# -- io


def test_parse_triangle():
    cg = parse_instance(TRIANGLE)
    assert cg.n == 3 and cg.graph.outer == (1, 0)
    assert parse_instance(serialize_instance(cg)).graph.same_embedding(cg.graph)


def test_missing_clusters():
    doc = json.loads(TRIANGLE)
    del doc["clusters"]
    with pytest.raises(SchemaError, match="clusters"):
        parse_instance(json.dumps(doc))


def test_cluster_gap():
    doc = json.loads(TRIANGLE)
    doc["clusters"] = [0, 2, 2]
    with pytest.raises(SchemaError, match=r"missing \[1\]"):
        parse_instance(json.dumps(doc))


def test_bad_json_position():
    with pytest.raises(SchemaError, match="line 1"):
        parse_instance('{"n": 3,')


def test_bad_rotation_reported():
    doc = json.loads(TRIANGLE)
    doc["rotation"][1] = [2]
    with pytest.raises(NonSymmetricRotation):
        parse_instance(json.dumps(doc))


def test_wrong_format_version():
    doc = json.loads(TRIANGLE)
    doc["format"] = 2
    with pytest.raises(SchemaError, match="format"):
        parse_instance(json.dumps(doc))


def test_normalize_relabels():
    cg = nested_triangles(4, "alternating", seed=2, k=3)
    dense, vmap = normalize(cg)
    assert sorted(vmap.values()) == list(range(cg.n))
    assert sorted(set(dense.cluster_of.values())) == list(range(cg.cluster_count))


def test_witness_round_trip():
    cg = parse_instance(C4)
    d = decide(cg)
    text = serialize_witness(d.witness)
    doc = json.loads(text)
    assert doc["format"] == 1 and len(doc["added"]) == 2
    back = parse_witness(text)
    assert verify_witness(back.instance, back).ok
    del doc["super"]
    rebuilt = parse_witness(json.dumps(doc))
    assert verify_witness(rebuilt.instance, rebuilt).ok


def test_witness_foreign_edge():
    doc = json.loads(serialize_witness(decide(parse_instance(C4)).witness))
    del doc["super"]
    doc["added"][0] = {"face": 0, "u": 0, "v": 1}
    with pytest.raises(SchemaError):
        parse_witness(json.dumps(doc))


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(sorted(FAMILIES)), st.integers(0, 10**6))
def test_serialize_round_trip(family, seed):
    params = {
        "nested_triangles": {"levels": 4, "clustering": "random"},
        "buckytube": {"circumference": 6, "length": 2},
        "cylinder_grid": {"circumference": 5, "length": 3},
        "h_nested": {"h": 4, "levels": 4},
        "random_planar": {"n": 20},
        "cluster_separator": {"kind": "random"},
    }[family]
    cg = generate(family, params, seed)
    text = serialize_instance(cg)
    back = parse_instance(text)
    assert serialize_instance(back) == text
    assert back.graph.face_count == cg.graph.face_count


# -- generate


def test_nested_triangles_shape():
    cg = nested_triangles(3, "per-triangle")
    assert cg.n == 9 and cg.cluster_count == 3


def test_cluster_separator_basic_shape():
    cg = cluster_separator("basic")
    assert cg.n == 5 and cg.cluster_count == 2
    assert not decide(cg).answer


def test_buckytube_faces():
    cg = buckytube(6, 4)
    assert cg.graph.max_face_size <= 6
    assert cg.cluster_count == 4


def test_generate_is_deterministic():
    a = generate("random_planar", {"n": 30, "clusters": 4}, 5)
    b = generate("random_planar", {"n": 30, "clusters": 4}, 5)
    assert serialize_instance(a) == serialize_instance(b)


def test_generate_bad_family():
    with pytest.raises(BadParams):
        generate("petersen", {})
    with pytest.raises(BadParams):
        generate("nested_triangles", {"floors": 3})


# -- render


def test_render_triangle():
    svg = render_svg(triangle())
    root = ET.fromstring(svg)
    ns = "{http://www.w3.org/2000/svg}"
    assert len(root.findall(f".//{ns}circle")) == 3
    assert len(root.findall(f".//{ns}path[@data-cluster]")) == 1
    assert render_svg(triangle()) == svg


def test_render_witness_chords():
    cg = parse_instance(C4)
    w = decide(cg).witness
    root = ET.fromstring(render_svg(cg, w))
    dashed = [p for p in root.iter() if p.get("data-face") is not None]
    assert sorted(int(p.get("data-face")) for p in dashed) == [0, 1]


def test_tutte_layout_outer_on_circle():
    cg = nested_triangles(4, "single")
    pos = tutte_layout(cg.graph)
    outer = {u for u, _ in cg.graph.faces[cg.graph.outer_face]}
    for v in outer:
        x, y = pos[v]
        assert abs(x * x + y * y - 1) < 1e-9
    for v in set(pos) - outer:
        x, y = pos[v]
        assert x * x + y * y < 1


# -- bench


CORPUS = {
    "format": 1,
    "runs": [{"family": "nested_triangles", "params": {"clustering": "alternating", "k": 3},
              "sweep": {"levels": [3, 6]}, "seeds": [0, 1], "threshold": 8}],
}


def test_bench_expand_and_rows():
    jobs = bench.expand(CORPUS)
    assert len(jobs) == 4
    rows, summary = bench.bench(CORPUS, workers=2)
    assert [r["seed"] for r in rows] == [0, 1, 0, 1]
    assert all(r["status"] == "ok" for r in rows)
    assert summary["nested_triangles"]["decided"] == 4
    text = bench.write_csv(rows, timing=False)
    parsed = list(csv.DictReader(io.StringIO(text)))
    assert "seconds" not in parsed[0] and len(parsed) == 4
    again = bench.write_csv(bench.bench(CORPUS)[0], timing=False)
    assert again == text


def test_bench_timeout_row():
    corpus = {"runs": [{"family": "nested_triangles", "params": {"levels": 60, "clustering": "alternating", "k": 3},
                        "threshold": 8}]}
    rows = bench.run_jobs(bench.expand(corpus), timeout=0.2)
    assert rows[0]["status"] == "timeout"


def test_bench_schema():
    with pytest.raises(SchemaError):
        bench.expand({"format": 1})


# -- cli


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def files(tmp_path):
    tri = tmp_path / "tri.json"
    tri.write_text(TRIANGLE)
    c4 = tmp_path / "c4.json"
    c4.write_text(C4)
    sep = tmp_path / "sep.json"
    sep.write_text(serialize_instance(cluster_separator("basic")))
    return tmp_path, tri, c4, sep


def test_cli_check(capsys, files):
    tmp, tri, c4, sep = files
    assert run(capsys, "check", str(tri))[0] == 0
    code, out, _ = run(capsys, "check", str(sep), "--json")
    assert code == 1
    doc = json.loads(out)
    assert doc["format"] == 1 and doc["answer"] == "no" and doc["reason"] == "condition-ii"


def test_cli_witness_and_verify(capsys, files):
    tmp, tri, c4, sep = files
    wpath = tmp / "w.json"
    assert run(capsys, "check", str(c4), "--emit-witness", str(wpath))[0] == 0
    code, out, _ = run(capsys, "verify", str(c4), str(wpath))
    assert code == 0 and json.loads(out)["ok"]
    opath = tmp / "o.json"
    assert run(capsys, "oracle", str(c4), "--emit-witness", str(opath))[0] == 0
    assert run(capsys, "verify", str(c4), str(opath))[0] == 0


def test_cli_verify_gadget_witness(capsys, files):
    tmp, tri, c4, sep = files
    wpath = tmp / "w.json"
    assert run(capsys, "check", str(c4), "--gadgets", "always", "--emit-witness", str(wpath))[0] == 0
    code, out, _ = run(capsys, "verify", str(c4), str(wpath))
    assert code == 0, out


def test_cli_bad_input(capsys, files):
    tmp, *_ = files
    bad = tmp / "bad.json"
    bad.write_text('{"n": 3}')
    code, _, err = run(capsys, "check", str(bad))
    assert code == 2 and "rotation" in err
    assert run(capsys, "check", str(tmp / "absent.json"))[0] == 2


def test_cli_timeout(capsys, tmp_path):
    path = tmp_path / "big.json"
    path.write_text(serialize_instance(generate(
        "nested_triangles", {"levels": 60, "clustering": "alternating", "k": 3})))
    assert run(capsys, "check", str(path), "--threshold", "8", "--timeout", "0.1")[0] == 3


def test_cli_gen_and_stats(capsys, tmp_path):
    out = tmp_path / "g.json"
    assert run(capsys, "gen", "buckytube", "circumference=6", "length=3", "--seed", "2", "-o", str(out))[0] == 0
    code, text, _ = run(capsys, "stats", str(out), "--separator")
    doc = json.loads(text)
    assert code == 0 and doc["format"] == 1 and doc["max_face"] <= 6
    assert doc["separator"]["size"] >= 3
    assert run(capsys, "gen", "buckytube", "nonsense")[0] == 2


def test_cli_render(capsys, files):
    tmp, tri, c4, sep = files
    code, out, _ = run(capsys, "render", str(tri))
    assert code == 0 and "<svg" in out


def test_cli_emit_mso(capsys, files):
    tmp, tri, c4, sep = files
    code, out, err = run(capsys, "emit-mso", str(c4))
    assert code == 0 and "(formula (exists E+" in out and "warning" in err
    code, out, err = run(capsys, "emit-mso", str(c4), "--gadgets")
    assert code == 0 and err == ""
    assert run(capsys, "emit-mso", str(c4), "--expand")[0] == 2


def test_cli_bench(capsys, tmp_path):
    path = tmp_path / "corpus.json"
    path.write_text(json.dumps(CORPUS))
    summary = tmp_path / "summary.json"
    code, out, _ = run(capsys, "bench", str(path), "--no-timing", "--summary", str(summary))
    assert code == 0 and out.splitlines()[0].startswith("family,params")
    assert json.loads(summary.read_text())["format"] == 1
