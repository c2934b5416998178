import json

import pytest

from qmctheta.cli import main


def test_theta_family_cycle(capsys):
    rc = main(["theta", "--family", "cycle:5"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "kappa = 2.2360" in out
    assert "bound[qmc]" in out and "bound[xx]" in out and "bound[mc]" in out


def test_theta_edge_file(tmp_path, capsys):
    p = tmp_path / "k2.txt"
    p.write_text("# one edge\nn 2\n0 1\n")
    rc = main(["theta", "--graph", str(p)])
    out = capsys.readouterr().out
    assert rc == 0
    assert "n=2 m=1" in out
    assert "kappa = 2" in out


def test_theta_dimacs_file(tmp_path, capsys):
    p = tmp_path / "tri.col"
    p.write_text("c triangle\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n")
    rc = main(["theta", "--graph", str(p)])
    out = capsys.readouterr().out
    assert rc == 0
    assert "kappa = 3" in out


def test_theta_edgeless_exit(capsys):
    rc = main(["theta", "--family", "complete:1"])
    out = capsys.readouterr().out
    assert rc == 1
    assert "bound = 0 (no edges)" in out


def test_theta_json_report(tmp_path):
    out_path = tmp_path / "rep.json"
    rc = main(["theta", "--family", "petersen", "--json", str(out_path)])
    assert rc == 0
    rep = json.loads(out_path.read_text())
    assert rep["report_version"] == 1
    assert rep["passed"] is True
    assert rep["graph"]["n"] == 10 and rep["graph"]["m"] == 15
    assert abs(rep["kappa"] - 2.5) < 1e-4
    assert rep["constants"]["c3"]["symbolic"] == "8/(3*pi)"
    assert set(rep["bounds"]) == {"qmc", "xx", "mc"}


def test_verify_single_edge_passes(tmp_path, capsys):
    out_path = tmp_path / "rep.json"
    rc = main(
        ["verify", "--family", "complete:2", "--trials", "200", "--json", str(out_path)]
    )
    out = capsys.readouterr().out
    assert rc == 0
    assert "[pass] exact_ge_bound" in out
    assert "[pass] mean_ge_bound_3sigma" in out
    assert "[pass] best_le_exact" in out
    assert "[pass] exact_ge_trivial" in out
    rep = json.loads(out_path.read_text())
    assert rep["passed"] is True
    assert abs(rep["exact"]["qmc"] - 1.0) < 1e-8
    names = [c["name"] for c in rep["checks"]]
    assert names == [
        "exact_ge_bound",
        "mean_ge_bound_3sigma",
        "best_le_exact",
        "exact_ge_trivial",
    ]
    for c in rep["checks"]:
        assert c["slack"] >= 0.0
        assert {"lhs_name", "rhs_name", "op", "lhs", "rhs"} <= set(c)


def test_verify_mc_cycle(capsys):
    rc = main(["verify", "--family", "cycle:5", "--model", "mc", "--trials", "500"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "exact[mc] = 4" in out


def test_verify_xx_model(capsys):
    rc = main(["verify", "--family", "cycle:4", "--model", "xx", "--trials", "500"])
    assert rc == 0
    out = capsys.readouterr().out
    assert "model=xx" in out


def test_verify_skips_exact_above_cap(capsys):
    rc = main(
        ["verify", "--family", "cycle:6", "--trials", "200", "--max-exact-n", "5"]
    )
    out = capsys.readouterr().out
    assert rc == 0
    assert "skipped" in out
    assert "exact_ge_bound" not in out


def test_gp_single_edge(tmp_path, capsys):
    out_path = tmp_path / "rep.json"
    rc = main(["gp", "--family", "complete:2", "--trials", "300", "--json", str(out_path)])
    out = capsys.readouterr().out
    assert rc == 0
    assert "[pass] ratio_ge_0498_3sigma" in out
    assert "[pass] relaxation_ge_exact" in out
    rep = json.loads(out_path.read_text())
    assert rep["gp"]["reference_kind"] == "exact"
    assert abs(rep["gp"]["relaxation_value"] - 1.0) < 1e-5


def test_sweep_stdout_and_rerun_identical(capsys):
    argv = ["sweep", "complete:2", "cycle:5", "--trials", "200"]
    rc = main(argv)
    first = capsys.readouterr().out
    assert rc == 0
    header = first.splitlines()[0]
    assert header == (
        "graph,n,m,kappa,bound_qmc,bound_xx,bound_mc,"
        "mc_exact,qmc_exact,gp_relax,gp_ratio,seed,graph_seed"
    )
    assert len(first.splitlines()) == 3
    rc = main(argv)
    second = capsys.readouterr().out
    assert first == second


def test_sweep_csv_file(tmp_path, capsys):
    out_path = tmp_path / "table.csv"
    rc = main(
        [
            "sweep",
            "erdos_renyi:8:500",
            "--graph-seed",
            "7",
            "--trials",
            "100",
            "--csv",
            str(out_path),
        ]
    )
    capsys.readouterr()
    assert rc == 0
    lines = out_path.read_text().splitlines()
    assert len(lines) == 2
    cells = dict(zip(lines[0].split(","), lines[1].split(",")))
    assert cells["graph"] == "erdos_renyi:8:500"
    assert cells["graph_seed"] == "7"
    assert cells["n"] == "8"
    assert float(cells["kappa"]) >= 2.0
    assert float(cells["qmc_exact"]) >= float(cells["bound_qmc"]) - 1e-6
    assert float(cells["mc_exact"]) >= float(cells["bound_mc"]) - 1e-6


def test_sweep_blank_cells_above_cap(capsys):
    rc = main(["sweep", "cycle:9", "--max-exact-n", "5", "--trials", "50"])
    out = capsys.readouterr().out
    assert rc == 0
    cells = dict(zip(*[line.split(",") for line in out.splitlines()[:2]]))
    assert cells["mc_exact"] == ""
    assert cells["qmc_exact"] == ""
    assert cells["gp_relax"] != ""  # relaxation has its own (3n <= 120) cap


def test_unknown_family_exit_2(capsys):
    rc = main(["theta", "--family", "hypercube:4"])
    err = capsys.readouterr().err
    assert rc == 2
    assert "error:" in err


def test_bad_family_params_exit_2(capsys):
    rc = main(["theta", "--family", "cycle:five"])
    assert rc == 2
    assert "error:" in capsys.readouterr().err


def test_missing_file_exit_2(tmp_path, capsys):
    rc = main(["theta", "--graph", str(tmp_path / "nope.txt")])
    assert rc == 2
    assert "error:" in capsys.readouterr().err


def test_no_source_exit_2(capsys):
    rc = main(["theta"])
    assert rc == 2
    assert "required" in capsys.readouterr().err


def test_parse_error_exit_2(tmp_path, capsys):
    p = tmp_path / "bad.txt"
    p.write_text("0 0\n")
    rc = main(["theta", "--graph", str(p)])
    assert rc == 2
    assert "error:" in capsys.readouterr().err
