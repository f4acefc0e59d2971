import csv
import json
from fractions import Fraction
from pathlib import Path

import pytest

from icl.cli import main, parse_range
from icl.graphs import read_graph, serialize_graph
from icl.index_code import IndexCode, verify

DATA = Path(__file__).parent / "data"

GOLDEN = [
    (["analyze", "--input", "three_user.txt"], "analyze_three_user.json"),
    (["analyze", "--input", "c5_complement.txt"], "analyze_c5_complement.json"),
    (["code", "--input", "three_user.txt", "--scheme", "scalar"], "code_three_user_scalar.json"),
    (["code", "--input", "c5_complement.txt", "--scheme", "fractional"], "code_c5_fractional.json"),
    (["code", "--input", "random8.txt", "--scheme", "binary", "--seed", "7"], "code_random8_binary.json"),
    (["universal", "--m", "281", "--k", "9"], "universal_281_9.json"),
    (["sweep", "--k", "9", "--m-range", "280:290"], "sweep_k9.csv"),
]


def run(argv, tmp_path, name="out"):
    argv = [str(DATA / a) if a.endswith((".txt", ".json")) and "/" not in a else a for a in argv]
    out = tmp_path / name
    code = main([*argv, "--output", str(out)])
    return code, out.read_bytes() if out.exists() else None


def invariants(path):
    return {row["invariant"]: row for row in json.loads(Path(path).read_text())}


@pytest.mark.parametrize("argv,golden", GOLDEN, ids=[g for _, g in GOLDEN])
def test_golden_outputs_byte_identical(argv, golden, tmp_path):
    code, first = run(argv, tmp_path, "a")
    _, second = run(argv, tmp_path, "b")
    assert code == 0
    assert first == second == (DATA / golden).read_bytes()


# ---------------------------------------------------------------------------
# analyze
# ---------------------------------------------------------------------------


def test_analyze_three_user():
    inv = invariants(DATA / "analyze_three_user.json")
    assert inv["chi"]["value"] == "3" and inv["chi_local"]["value"] == "3"
    assert inv["chi_f"]["value"] == "3" and inv["chi_fractional_local"]["value"] == "3"
    assert inv["minrank2"]["value"] == "3"


def test_analyze_c5_complement():
    inv = invariants(DATA / "analyze_c5_complement.json")
    assert inv["chi_fractional_local"]["value"] == "5/2"
    assert inv["chi_f"]["value"] == "5/2"
    assert inv["chi_local"]["value"] == "3" and inv["minrank2"]["value"] == "3"


def test_analyze_complete_all_ones(tmp_path):
    code, out = run(["analyze", "--input", "k4_bidirected.txt"], tmp_path)
    assert code == 0
    assert {row["value"] for row in json.loads(out)} == {"1"}


def test_analyze_formats(tmp_path, capsys):
    assert main(["analyze", "--input", str(DATA / "c5_complement.txt"), "--format", "text"]) == 0
    text = capsys.readouterr().out
    assert "chi_fractional_local: 5/2" in text
    code, out = run(["analyze", "--input", "c5_complement.txt", "--format", "csv"], tmp_path)
    rows = list(csv.DictReader(out.decode().splitlines()))
    assert {r["invariant"]: r["value"] for r in rows}["chi_f"] == "5/2"


def test_json_and_edge_list_inputs_agree(tmp_path):
    _, a = run(["analyze", "--input", "c5_complement.txt"], tmp_path, "a")
    _, b = run(["analyze", "--input", "c5_complement.json"], tmp_path, "b")
    assert a == b


# ---------------------------------------------------------------------------
# exit codes
# ---------------------------------------------------------------------------


@pytest.mark.parametrize(
    "content",
    ["3\n0 0\n", "3\n0 5\n", "3\n0 1\n0 1\n", "3\nzero one\n", "", '{"n": 2, "edges": [[0, 2]]}'],
)
def test_invalid_input_exit_2(content, tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text(content)
    assert main(["analyze", "--input", str(path)]) == 2


def test_missing_file_exit_2(tmp_path):
    assert main(["analyze", "--input", str(tmp_path / "nope.txt")]) == 2


def test_cap_exit_3(tmp_path, monkeypatch):
    assert main(["analyze", "--input", str(DATA / "three_user.txt"), "--cap-n", "2"]) == 3
    monkeypatch.setenv("ICL_CAP_N", "2")
    assert main(["code", "--input", str(DATA / "three_user.txt")]) == 3


def test_binary_requires_seed():
    assert main(["code", "--input", str(DATA / "three_user.txt"), "--scheme", "binary"]) == 2


def test_verify_exit_status_matches_verdict(tmp_path):
    good = DATA / "code_three_user_scalar.json"
    assert main(["verify", "--input", str(DATA / "three_user.txt"), "--code", str(good)]) == 0
    obj = json.loads(good.read_text())
    obj["matrix"]["data"][0] = [0, 0, 0]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(obj))
    out = tmp_path / "report.json"
    assert main(["verify", "--input", str(DATA / "three_user.txt"), "--code", str(bad), "--output", str(out)]) == 4
    assert json.loads(out.read_text())["failing_users"] == [0]


def test_code_binary_length(tmp_path):
    obj = json.loads((DATA / "code_random8_binary.json").read_text())
    assert obj["matrix"]["rows"] == obj["metadata"]["coloring"]["local_value"] + 6
    assert obj["verification"]["valid"]


def test_family_oddeven(tmp_path, capsys):
    out = tmp_path / "oe.txt"
    assert main(["family", "oddeven", "--n", "10", "--output", str(out)]) == 0
    summary = json.loads(capsys.readouterr().out)
    assert summary["chi_local"] <= 6 and summary["chi_f_shadow"] == "10"
    assert read_graph(out).n == 10


def test_family_universal(tmp_path, capsys):
    out = tmp_path / "u.json"
    assert main(["family", "universal", "--m", "4", "--k", "2", "--output", str(out)]) == 0
    summary = json.loads(capsys.readouterr().out)
    assert summary["num_vertices"] == 12 == read_graph(out).n


def test_universal_invalid_params():
    assert main(["universal", "--m", "3", "--k", "5"]) == 2


def test_sweep_json(tmp_path):
    code, out = run(["sweep", "--k-range", "2:4", "--m-range", "2:16", "--format", "json"], tmp_path)
    obj = json.loads(out)
    assert code == 0
    assert all(row["bound_ok"] for row in obj["rows"])
    assert Fraction(obj["max_ratio"]["ratio_exact"]) == max(Fraction(r["ratio_exact"]) for r in obj["rows"])


def test_parse_range():
    assert parse_range("3:5") == range(3, 6)
    assert parse_range("7") == range(7, 8)
    with pytest.raises(ValueError):
        parse_range("5:3")


# ---------------------------------------------------------------------------
# lossless round trips of every golden file
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("path", sorted(DATA.glob("*.txt")) + [DATA / "c5_complement.json"], ids=lambda p: p.name)
def test_graph_files_round_trip(path):
    g = read_graph(path)
    fmt = "json" if path.suffix == ".json" else "edge_list"
    assert serialize_graph(g, fmt) == path.read_text()


@pytest.mark.parametrize("path", sorted(DATA.glob("analyze_*.json")), ids=lambda p: p.name)
def test_analyze_numbers_round_trip(path):
    for row in json.loads(path.read_text()):
        value = Fraction(row["value"])
        assert str(value) == row["value"]
        assert float(row["decimal"]) == pytest.approx(float(value), rel=1e-11)
        if "weights" in row["witness"]:
            weights = [Fraction(w) for w in row["witness"]["weights"]]
            assert [str(w) for w in weights] == row["witness"]["weights"]


@pytest.mark.parametrize("path", sorted(DATA.glob("code_*.json")), ids=lambda p: p.name)
def test_code_files_round_trip(path):
    obj = json.loads(path.read_text())
    code = IndexCode.from_json(obj)
    again = code.to_json()
    for key in ("scheme", "field", "matrix", "blocks", "message_len", "rate", "rate_decimal", "transmitted_bits"):
        assert again[key] == obj[key]
    graphs = {"code_three_user": "three_user.txt", "code_c5": "c5_complement.txt", "code_random8": "random8.txt"}
    graph = next(g for prefix, g in graphs.items() if path.stem.startswith(prefix))
    assert verify(code, read_graph(DATA / graph)).to_json() == obj["verification"]


def test_universal_and_sweep_numbers_round_trip():
    obj = json.loads((DATA / "universal_281_9.json").read_text())
    assert Fraction(obj["chi_f"]) == Fraction(obj["num_vertices"], obj["alpha"])
    assert Fraction(obj["ratio_exact"]) == Fraction(obj["chi_f"]) / obj["k"]
    rows = list(csv.DictReader((DATA / "sweep_k9.csv").read_text().splitlines()))
    assert len(rows) == 11
    for row in rows:
        assert Fraction(row["chi_f"]) == Fraction(int(row["num_vertices"]), int(row["alpha"]))
        assert float(row["ratio"]) == pytest.approx(float(Fraction(row["chi_f"]) / 9), rel=1e-11)
