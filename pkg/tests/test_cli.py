import json
from importlib.resources import files

import pytest

from graphrecon.cli import main

WORKED = str(files("graphrecon").joinpath("data/worked_example.json"))


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_gen_and_full_recon(capsys, tmp_path):
    path = tmp_path / "g.json"
    code, _ = run(capsys, "gen", "--n", "9", "--alpha", "0.5", "--seed", "2",
                  "--min-angle", "1e-6", "--out", str(path))
    assert code == 0
    code, out = run(capsys, "recon", "full", "--input", str(path))
    assert code == 0
    res = json.loads(out.out)
    assert res["queries"] == 9 * 9 - 9 + 3
    assert len(res["edges"]) == len(json.loads(path.read_text())["edges"])


def test_gen_is_deterministic(capsys):
    _, a = run(capsys, "gen", "--n", "6", "--seed", "5")
    _, b = run(capsys, "gen", "--n", "6", "--seed", "5")
    assert a.out == b.out


def test_recon_phases(capsys):
    code, out = run(capsys, "recon", "vertices", "--input", WORKED)
    assert code == 0 and json.loads(out.out)["queries"] == 3
    code, out = run(capsys, "recon", "edges", "--input", WORKED)
    res = json.loads(out.out)
    assert code == 0 and res["queries"] == 12
    assert res["edges"] == [[0, 1], [1, 2], [1, 3], [2, 3]]


def test_roundtrip_command(capsys):
    code, out = run(capsys, "roundtrip", "--input", WORKED)
    res = json.loads(out.out)
    assert code == 0 and res["success"] and res["total_queries"] == 15
    code, out = run(capsys, "roundtrip", "--n", "12", "--alpha", "0.0", "--count", "3",
                    "--workers", "2")
    assert code == 0 and json.loads(out.out)["count"] == 3


def test_exit_codes(capsys, tmp_path):
    code, out = run(capsys, "recon", "full", "--input", str(tmp_path / "missing.json"))
    assert code == 4 and "error" in json.loads(out.out)
    code, out = run(capsys, "recon", "full", "--input", WORKED, "--min-angle", "0.5")
    assert code == 3 and json.loads(out.out)["error"] == "min_angle"
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _ = run(capsys, "roundtrip", "--input", str(bad))
    assert code == 4
    code, _ = run(capsys, "gen", "--n", "0")
    assert code == 4


def test_mismatch_exit_code(capsys, tmp_path):
    # collinear projection makes the edge phase refuse the instance
    path = tmp_path / "g.json"
    path.write_text(json.dumps({"dim": 3, "vertices": [[0, 0, 0.1], [1, 1, 0.7], [2, 2, 0.4]],
                                "edges": [[0, 1]]}))
    code, out = run(capsys, "roundtrip", "--input", str(path))
    assert code == 2 and json.loads(out.out)["success"] is False


def test_oracle_dump(capsys):
    code, out = run(capsys, "oracle-dump", "--input", WORKED, "--direction", "0,2")
    lines = out.out.splitlines()
    assert code == 0 and lines[0] == "# direction 0,1"
    assert lines[1] == "dim,birth,death,birth_simplex,death_simplex"
    assert len(lines) == 2 + 5
    code, out = run(capsys, "oracle-dump", "--input", WORKED, "--direction", "1,0", "--hom-dim", "1")
    assert len(out.out.splitlines()) == 2 + 1
    code, _ = run(capsys, "oracle-dump", "--input", WORKED, "--direction", "1,0,0")
    assert code == 4


def test_verify(capsys):
    code, out = run(capsys, "verify", "--n-max", "5", "--graphs", "1", "--directions", "4")
    res = json.loads(out.out)
    assert code == 0 and res["checked"] == 20 and res["success"]


def test_minangle_and_bench(capsys, tmp_path):
    code, out = run(capsys, "minangle", "--n", "6", "--trials", "10")
    assert code == 0 and out.out.startswith("# graphrecon-minangle v1")
    csv_path = tmp_path / "b.csv"
    code, out = run(capsys, "bench", "--n", "5,7,9", "--graphs", "1", "--repeats", "1",
                    "--vertex-repeats", "2", "--alpha", "0.2,0.8", "--out", str(csv_path))
    assert code == 0
    assert csv_path.read_text().startswith("# graphrecon-bench v1")
    summary = json.loads(out.err)
    assert {"vertex_nlogn", "edge_n3", "vertex_alpha"} <= set(summary)


def test_help_lists_commands(capsys):
    with pytest.raises(SystemExit):
        main(["--help"])
    text = capsys.readouterr().out
    for cmd in ("gen", "recon", "oracle-dump", "roundtrip", "bench", "minangle", "verify"):
        assert cmd in text
