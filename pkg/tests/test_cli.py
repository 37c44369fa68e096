import csv
import io
import json
import subprocess
import sys

import pytest

from gwloc.cli import run


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def test_gw_points():
    code, text = call("gw", "--g", "0", "--d", "3", "--r", "2", "--points", "8", "--workers", "1")
    rec = json.loads(text)
    assert code == 0 and rec["value"] == "12"
    assert rec["query"]["insertions"] == [2] * 8
    assert "elapsed_ms" not in rec


def test_gw_timing_and_verbose_dump():
    code, text = call("gw", "--g", "0", "--d", "1", "--r", "2", "--insertions", "2,2", "--timing", "-v", "--method", "graphs", "--workers", "1")
    rec = json.loads(text)
    assert code == 0 and "elapsed_ms" in rec and len(rec["per_graph"]) == rec["graph_count"]


def test_gw_explicit_weights():
    code, text = call("gw", "--g", "0", "--d", "2", "--r", "2", "--points", "5", "--weights", "1,-7,20", "--workers", "1")
    assert code == 0 and json.loads(text)["weight_vectors_used"] == [["1", "-7", "20"]]


def test_count():
    code, text = call("count", "--g", "1", "--d", "3", "--workers", "1")
    assert code == 0 and json.loads(text)["value"] == "1"


def test_multicover_modes():
    code, text = call("multicover", "--g", "1", "--d", "4", "--mode", "partition")
    assert code == 0 and json.loads(text)["value"] == "1/48"
    code, text = call("multicover", "--g", "1", "--d", "2", "--mode", "both", "--trials", "2", "--workers", "1")
    rec = json.loads(text)
    assert rec["graph_value"] == rec["partition_value"] == "1/24"
    code, text = call("multicover", "--g", "0", "--d", "3", "--mode", "graph", "--weights", "0,-1", "--workers", "1")
    assert json.loads(text)["value"] == "1/27"


def test_multicover_genus2_with_table():
    code, text = call("multicover", "--g", "2", "--d", "1", "--mode", "partition", "--hodge-table", "tests/data/hodge_g2_d1.txt")
    rec = json.loads(text)
    assert code == 0 and rec["value"] == rec["conjecture_value"] == "1/240"


def test_series_and_conjecture():
    code, text = call("series", "--kind", "gamma", "--order", "3")
    assert [json.loads(l)["value"] for l in text.splitlines()] == ["-1/24", "1/48", "-1/72"]
    code, text = call("conjecture", "--g", "2", "--d", "1")
    assert json.loads(text) == {"g": 2, "d": 1, "value": "1/240", "chi_form": "1/240"}


def test_csv_and_text_formats():
    code, text = call("conjecture", "--gmax", "3", "--dmax", "2", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(text)))
    assert len(rows) == 4 and rows[0]["value"] == "1/240"
    code, text = call("series", "--kind", "manin", "--order", "2", "--format", "text")
    assert text.splitlines()[0] == "k=1 series=manin value=-1"


def test_graphs_json():
    code, text = call("graphs", "--r", "1", "--d", "3")
    assert code == 0 and len(json.loads(text)) == 6


@pytest.mark.parametrize(
    "argv, code",
    [
        (["gw", "--g", "2", "--d", "1", "--r", "2", "--points", "4"], 3),
        (["gw", "--g", "0", "--d", "1", "--r", "2", "--points", "3"], 2),
        (["gw", "--g", "0", "--d", "1", "--r", "2", "--insertions", "3,2"], 2),
        (["multicover", "--g", "2", "--d", "2", "--mode", "partition", "--hodge-table", "tests/data/hodge_g2_d1.txt"], 4),
        (["graphs", "--r", "2", "--d", "2", "--n", "3", "--cap", "10"], 5),
        (["gw", "--g", "0", "--d", "2", "--r", "2", "--points", "5", "--weights", "0,-1,1"], 6),
        (["multicover", "--g", "2", "--d", "1", "--mode", "graph"], 2),
    ],
)
def test_exit_codes(argv, code, capsys):
    assert run(argv + ["--workers", "1"], io.StringIO()) == code
    assert "gwloc: error:" in capsys.readouterr().err


def test_argparse_rejects_bad_weights():
    with pytest.raises(SystemExit) as info:
        run(["gw", "--g", "0", "--d", "1", "--r", "1", "--weights", "1,1"], io.StringIO())
    assert info.value.code == 2


def test_cache_flag_writes_file(tmp_path):
    p = tmp_path / "cache.txt"
    code, _ = call("count", "--g", "1", "--d", "2", "--cache", str(p), "--workers", "1")
    assert code == 0 and p.read_text().startswith("# gwloc integral cache")


def _subprocess(*argv):
    return subprocess.run([sys.executable, "-m", "gwloc", *argv], capture_output=True, text=True, check=True).stdout


def test_output_is_deterministic_across_processes():
    argv = ("gw", "--g", "1", "--d", "3", "--r", "2", "--points", "9", "--trials", "2")
    first = _subprocess(*argv, "--workers", "1")
    assert first == _subprocess(*argv, "--workers", "1") == _subprocess(*argv, "--workers", "2")
