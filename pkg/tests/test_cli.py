import csv
import io
import json
import subprocess
import sys

import numpy as np
import pytest

from ratmoduli.cli import document_to_map, main, map_to_document
from ratmoduli.ratmap import RationalMap
from ratmoduli.sampling import SplitMix64, random_canonical_map

EX4 = {"degree": 3, "num": [[0, 0], [-2, 0], [-4, 0], [-3, 0]], "den": [[-1, 0], [-1, 0], [0, 0], [1, 0]]}
N3 = {"degree": 2, "num": [[0, 0], [1, 0], [-1, 0]], "den": [[1, 0], [-1, 0], [1, 0]]}
DOUBLE = {"degree": 2, "num": [[0, 0], [0, 0], [1, 0]], "den": [[1, 0], [-1, 0], [1, 0]]}
DEGENERATE = {"degree": 2, "num": [[0, 0], [1, 0], [0, 0]], "den": [[0, 0], [1, 0], [1, 0]]}


def run(argv, capsys, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    return _write


def test_analyze_triple_cubic(capsys, write):
    code, out, _ = run(["analyze", "--in", write("m.json", json.dumps(EX4))], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["overlap_type"] == [3, 1]
    assert doc["stratum_dims"] == [5, 2]
    assert doc["sigma"] is None
    assert doc["locus_residual"] == [0.0, 0.0]
    norm = document_to_map(doc["normalized"])
    assert abs(norm.a(0)) < 1e-9 and abs(norm.b(1) + 1) < 1e-9 and abs(norm.b(0) - 1) < 1e-9


def test_analyze_n3_from_stdin(capsys, monkeypatch):
    code, out, _ = run(["analyze"], capsys, json.dumps(N3), monkeypatch)
    assert code == 0
    doc = json.loads(out)
    assert doc["overlap_type"] == [3]
    assert np.allclose(np.array(doc["sigma"]), [[3, 0], [3, 0], [1, 0]], atol=1e-12)
    assert doc["decomposition"][0]["alphas"] == [[1.0, 0.0], [-1.0, 0.0], [1.0, 0.0]]


@pytest.mark.parametrize(
    "text, needle",
    [
        ("{bad", "malformed JSON"),
        (json.dumps({"degree": 2, "num": [[0, 0]]}), "missing 'den'"),
        (json.dumps(DEGENERATE), "resultant"),
        (json.dumps({"degree": 2, "num": [[1, 0]], "den": [[1, 0], [1, 0], [2, 0]]}), "monic"),
        (json.dumps({"degree": 3, "num": [[1, 0]], "den": [[1, 0], [1, 0], [1, 0]]}), "degree"),
        (json.dumps({"degree": 2, "num": [["x", 0]], "den": [[1, 0], [1, 0], [1, 0]]}), "num[0]"),
    ],
)
def test_analyze_invalid_input(capsys, monkeypatch, text, needle):
    code, out, err = run(["analyze"], capsys, text, monkeypatch)
    assert code == 2 and out == ""
    assert needle in err


def test_degree_check(capsys, write):
    path = write("m.json", json.dumps(N3))
    assert run(["analyze", "--degree-check", "2", "--in", path], capsys)[0] == 0
    code, _, err = run(["analyze", "--degree-check", "3", "--in", path], capsys)
    assert code == 2 and "expected degree 3" in err


def test_bad_tolerance_flag(capsys, write):
    code, _, err = run(["analyze", "--tol-zero", "-1", "--in", write("m.json", json.dumps(N3))], capsys)
    assert code == 2 and "tolerance" in err


def test_missing_input_file(capsys, tmp_path):
    code, _, err = run(["analyze", "--in", str(tmp_path / "nope.json")], capsys)
    assert code == 4


def test_numerical_failure_exit_code(capsys, write, monkeypatch):
    import ratmoduli.normalform as nf

    monkeypatch.setattr(nf, "_p_candidates", lambda E, tol: iter(()))
    code, _, err = run(["analyze", "--in", write("m.json", json.dumps(DOUBLE))], capsys)
    assert code == 3 and "normalization failed" in err


def test_from_spectrum(capsys):
    code, out, _ = run(["from-spectrum", "--spectrum", "1,1,1"], capsys)
    assert code == 0 and json.loads(out) == {
        "degree": 2,
        "num": [[0.0, 0.0], [1.0, 0.0], [-1.0, 0.0]],
        "den": [[1.0, 0.0], [-1.0, 0.0], [1.0, 0.0]],
    }
    code, out, _ = run(["from-spectrum", "--spectrum", "0,0,2"], capsys)
    assert code == 0 and json.loads(out)["num"] == [[0.0, 0.0], [0.0, 0.0], [1.5, 0.0]]
    code, out, err = run(["from-spectrum", "--spectrum", "0,0,0"], capsys)
    assert code == 2 and "Fatou index formula violated" in err
    code, _, _ = run(["from-spectrum", "--spectrum", "1,2"], capsys)
    assert code == 2


def test_from_spectrum_complex_values(capsys):
    m1, m2 = 0.5 + 1j, -1j
    m3 = 1 - 1 / (1 - 1 / (1 - m1) - 1 / (1 - m2))
    spec = f"{m1},{m2},{m3}".replace("(", "").replace(")", "")
    code, out, _ = run(["from-spectrum", "--spectrum", spec], capsys)
    assert code == 0
    from ratmoduli.ratmap import fixed_points, multiset_distance

    r = document_to_map(json.loads(out))
    assert multiset_distance(fixed_points(r).multipliers(), [m1, m2, m3]) < 1e-7


def test_batch(capsys, write):
    lines = [json.dumps(EX4), json.dumps(N3), json.dumps(DOUBLE)]
    code, out, _ = run(["batch", write("ok.ndjson", "\n".join(lines) + "\n")], capsys)
    assert code == 0
    docs = [json.loads(x) for x in out.splitlines()]
    assert [d["overlap_type"] for d in docs] == [[3, 1], [3], [2, 1]]

    lines = [json.dumps(EX4), json.dumps(DEGENERATE), json.dumps(N3)]
    code, out, _ = run(["batch", write("bad.ndjson", "\n".join(lines))], capsys)
    assert code == 1
    docs = [json.loads(x) for x in out.splitlines()]
    assert len(docs) == 3
    assert docs[1] == {
        "line": 2,
        "error": {
            "kind": "invalid_input",
            "exit_code": 2,
            "message": docs[1]["error"]["message"],
        },
    }
    assert "resultant" in docs[1]["error"]["message"]
    assert docs[2]["overlap_type"] == [3]

    code, out, _ = run(["batch", write("empty.ndjson", "")], capsys)
    assert code == 0 and out == ""


def test_fixed_points_csv(capsys, write, tmp_path):
    out_path = tmp_path / "fp.csv"
    code, _, _ = run(["fixed-points-csv", "--in", write("m.json", json.dumps(EX4)), "--out", str(out_path)], capsys)
    assert code == 0
    rows = list(csv.reader(out_path.open()))
    assert rows[0] == ["re", "im", "multiplicity", "mult_re", "mult_im", "index_re", "index_im"]
    assert len(rows) == 3
    first, second = rows[1], rows[2]
    assert float(first[0]) == pytest.approx(-1) and first[2] == "3" and first[5:] == ["", ""]
    assert float(first[3]) == pytest.approx(1, abs=1e-8)
    assert float(second[0]) == 0 and second[2] == "1"
    assert [float(x) for x in (second[3], second[4], second[5], second[6])] == [2, 0, -1, 0]

    code, out, _ = run(["fixed-points-csv", "--in", write("d.json", json.dumps(DOUBLE))], capsys)
    assert [r[2] for r in csv.reader(io.StringIO(out))][1:] == ["1", "2"]

    code, _, err = run(
        ["fixed-points-csv", "--in", write("m2.json", json.dumps(EX4)), "--out", str(tmp_path / "no" / "x.csv")],
        capsys,
    )
    assert code == 4 and "cannot write" in err


def test_gen_is_seeded(capsys):
    a = run(["gen", "--seed", "5", "--degree", "3", "--count", "4"], capsys)
    b = run(["gen", "--seed", "5", "--degree", "3", "--count", "4"], capsys)
    c = run(["gen", "--seed", "6", "--degree", "3", "--count", "4"], capsys)
    assert a == b and a[1] != c[1]
    docs = [json.loads(x) for x in a[1].splitlines()]
    assert len(docs) == 4 and all(d["degree"] == 3 for d in docs)
    rng = SplitMix64(5)
    assert document_to_map(docs[0]) == random_canonical_map(3, rng)
    assert run(["gen", "--degree", "1"], capsys)[0] == 2


def test_analyze_is_byte_deterministic(capsys, write):
    path = write("m.json", json.dumps(EX4))
    assert run(["analyze", "--in", path], capsys) == run(["analyze", "--in", path], capsys)


def test_document_round_trip_bitwise():
    rng = SplitMix64(42)
    for d in (2, 3, 5):
        r = random_canonical_map(d, rng)
        doc = map_to_document(r)
        text = json.dumps(doc)
        back = document_to_map(json.loads(text))
        assert back == r
        assert json.dumps(map_to_document(back)) == text


def test_usage_errors_exit_2(capsys):
    assert main(["no-such-command"]) == 2
    assert main(["from-spectrum"]) == 2
    capsys.readouterr()


def test_module_entry_point(tmp_path):
    path = tmp_path / "m.json"
    path.write_text(json.dumps(N3))
    proc = subprocess.run(
        [sys.executable, "-m", "ratmoduli", "analyze", "--in", str(path)], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["overlap_type"] == [3]
