import json

import pytest

from tukeyregion import RunConfig, export_region, run_benchmark
from tukeyregion.cli import main


def test_benchmark_grid():
    recs = run_benchmark(RunConfig(ns=[20, 40], ps=[3], taus=[0.05, 0.1], algorithm="both"))
    assert len(recs) == 8
    assert [(r.p, r.tau, r.n) for r in recs] == sorted((r.p, r.tau, r.n) for r in recs)
    cells = {}
    for r in recs:
        assert r.error is None
        cells.setdefault((r.n, r.tau), set()).add(r.direction_count)
    assert all(len(v) == 1 for v in cells.values())
    for n in (20, 40):
        assert cells[(n, 0.05)] <= {m for m in range(max(cells[(n, 0.1)]) + 1)}
    again = run_benchmark(RunConfig(ns=[20, 40], ps=[3], taus=[0.05, 0.1], algorithm="both"))
    assert [r.direction_count for r in again] == [r.direction_count for r in recs]
    table = export_region(recs, "table").decode()
    assert table.splitlines()[0].split()[:3] == ["n", "p", "tau"]


def test_benchmark_records_failures():
    recs = run_benchmark(RunConfig(ns=[5], ps=[2], taus=[1.0], algorithm="bfs"))
    assert recs[0].error is not None


def test_config_validation():
    with pytest.raises(ValueError):
        RunConfig(taus=[0.0])
    with pytest.raises(ValueError):
        RunConfig(algorithm="hps")


def test_cli_region_verify_roundtrip(tmp_path, capsys):
    data = tmp_path / "d.csv"
    assert main(["gen", "--n", "20", "--p", "3", "--seed", "3", "--out", str(data)]) == 0
    out = tmp_path / "r.json"
    assert main(["region", "--input", str(data), "--tau", "0.1", "--out", str(out), "--verify"]) == 0
    assert json.loads(out.read_text())["n"] == 20
    assert main(["verify", "--input", str(data), "--region", str(out)]) == 0
    assert "PASS cut-count" in capsys.readouterr().out
    d = json.loads(out.read_text())
    d["halfspaces"][0]["offset"] += 0.1
    out.write_text(json.dumps(d))
    assert main(["verify", "--input", str(data), "--region", str(out)]) == 1


def test_cli_multiple_taus_and_off(tmp_path):
    out = tmp_path / "r.off"
    assert main(["region", "--input", "gaussian:30:3:2", "--tau", "0.05", "--tau", "0.1",
                 "--format", "off", "--out", str(out)]) == 0
    assert sorted(p.name for p in tmp_path.iterdir()) == ["r_tau0.05.off", "r_tau0.1.off"]


def test_cli_input_errors(tmp_path, capsys):
    assert main(["region", "--input", str(tmp_path / "missing.csv")]) == 2
    bad = tmp_path / "b.csv"
    bad.write_text("1,2\n3,x\n4,5\n")
    assert main(["region", "--input", str(bad)]) == 2
    assert "row 2, column 2" in capsys.readouterr().err
    assert main(["region"]) == 2
    sq = tmp_path / "sq.csv"
    sq.write_text("0,0\n1,0\n1,1\n0,1\n")
    assert main(["region", "--input", str(sq), "--tau", "0.5", "--format", "off"]) == 2


def test_cli_bench(capsys):
    assert main(["bench", "--n", "20", "--p", "2", "--tau", "0.1", "--format", "json"]) == 0
    rows = json.loads(capsys.readouterr().out)
    assert len(rows) == 2 and rows[0]["direction_count"] == rows[1]["direction_count"]
