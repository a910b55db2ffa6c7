import csv
import json
import subprocess
import sys

import pytest

from stefan_chain.cli import build_parser, main


def run(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


class TestGamma:
    def test_dirichlet(self, capsys):
        code, out, _ = run(["gamma", "--bc", "dirichlet", "--v0", "1", "--l0", "1", "--wm0", "0.5"], capsys)
        doc = json.loads(out)
        assert code == 0 and abs(doc["gamma"] - 0.516) < 1e-3
        assert set(doc) == {"gamma", "coeff_a", "coeff_b", "bc"}

    def test_degenerate(self, capsys):
        code, _, err = run(["gamma", "--bc", "dirichlet", "--v0", "1", "--l0", "1", "--wm0", "1"], capsys)
        assert code == 3 and "degenerate" in err

    def test_neumann(self, capsys):
        code, out, _ = run(["gamma", "--bc", "neumann", "--v0", "1", "--l0", "1", "--wm0", "0.5", "--h0", "1"],
                           capsys)
        assert code == 0 and 0.6 < json.loads(out)["gamma"] < 0.65

    @pytest.mark.parametrize("args", [["gamma", "--v0", "inf"], ["gamma", "--v0", "abc"], ["gamma", "--bc", "x"],
                                      ["nope"], []])
    def test_bad_flags(self, args, capsys):
        with pytest.raises(SystemExit) as info:
            main(args)
        assert info.value.code == 2

    def test_invalid_parameters(self, capsys):
        code, _, err = run(["gamma", "--v0", "0.2"], capsys)
        assert code == 2 and "invalid" in err


class TestChain:
    def test_endpoints(self, tmp_path):
        out = tmp_path / "c.csv"
        assert main(["chain", "--samples", "2", "-o", str(out)]) == 0
        rows = list(csv.DictReader(out.open()))
        summary = json.loads((tmp_path / "c.csv.json").read_text())
        assert set(summary) == {"s", "X0", "X1", "Y0", "Y1"}
        assert float(rows[0]["z"]) == 0.0 and float(rows[0]["y"]) == summary["Y0"]
        assert float(rows[-1]["z"]) == summary["s"] and float(rows[-1]["y"]) == summary["Y1"]

    def test_rows_match_library(self, tmp_path):
        from stefan_chain import transforms as tr
        from stefan_chain.similarity import SimilarityParams, build_solution
        out = tmp_path / "c.csv"
        main(["chain", "--samples", "9", "-o", str(out), "--summary", str(tmp_path / "s.json")])
        sol = build_solution(SimilarityParams())
        header = out.open().readline().strip()
        assert header == "z,t,w,w_z,x,psi,y,theta"
        for row in csv.DictReader(out.open()):
            vals = {k: float(v) for k, v in row.items()}
            c = tr.chain_sample(sol, vals["z"], 1.0)
            assert vals["w"] == c.w and vals["psi"] == c.psi
            assert vals["theta"] == pytest.approx((1 + vals["x"]) * vals["psi"], rel=1e-12)
            assert vals["w"] == pytest.approx(tr.reconstruct_w(sol, vals["z"], 1.0), rel=1e-8)

    def test_stdout_summary_to_stderr(self, capsys):
        code, out, err = run(["chain", "--samples", "3"], capsys)
        assert code == 0 and len(out.strip().splitlines()) == 4
        assert set(json.loads(err)) == {"s", "X0", "X1", "Y0", "Y1"}


class TestVerify:
    def test_monotone_instance_all(self, capsys):
        code, out, _ = run(["verify", "--suite", "all", "--l0", "5"], capsys)
        doc = json.loads(out)
        assert code == 0 and doc["passed"] is True
        assert [r["suite"] for r in doc["reports"]] == ["p1", "p2", "p3", "p4", "signs"]

    def test_canonical_all_reports_non_monotone_map(self, capsys):
        code, out, err = run(["verify", "--suite", "all"], capsys)
        assert code == 4 and out == "" and "NonMonotone" in err and '"location"' in err

    def test_canonical_direct_suites(self, capsys):
        code, out, _ = run(["verify", "--suite", "p1,p2,signs"], capsys)
        assert code == 0 and json.loads(out)["passed"]

    def test_unattainable_tolerance(self, capsys):
        code, out, _ = run(["verify", "--suite", "p4", "--l0", "5", "--tol", "1e-15"], capsys)
        doc = json.loads(out)
        assert code == 1 and doc["passed"] is False

    def test_signs(self, capsys):
        code, out, _ = run(["verify", "--suite", "signs"], capsys)
        doc = json.loads(out)
        assert code == 0 and all(r["max_abs"] == 0 for r in doc["residuals"])

    def test_unknown_suite(self, capsys):
        assert run(["verify", "--suite", "p9"], capsys)[0] == 2


class TestRuns:
    def test_fd_config(self, tmp_path, capsys):
        cfg = {"n_xi": 200, "dt": 1e-4, "t0": 0.25, "t_end": 1.0, "bc": "dirichlet",
               "coeffs": {"family": "sqrt_t", "L0": 1, "v0": 1, "h0": 1, "wm0": 0.5, "eps": 1},
               "seed": "similarity", "picard_tol": 1e-12, "picard_max": 100}
        path = tmp_path / "baseline.json"
        path.write_text(json.dumps(cfg))
        code, out, _ = run(["fd", "--config", str(path), "--out-dir", str(tmp_path)], capsys)
        doc = json.loads(out)
        assert code == 0 and doc["passed"]
        assert abs(doc["notes"]["s_end_fd"] - doc["notes"]["s_end_exact"]) <= 1e-3 * doc["notes"]["s_end_exact"]
        assert (tmp_path / "fd_trajectory.csv").exists() and (tmp_path / "fd_field.csv").exists()

    def test_fd_coarse_fails(self, tmp_path, capsys):
        code, _, _ = run(["fd", "--n-xi", "25", "--dt", "1e-2", "--out-dir", str(tmp_path)], capsys)
        assert code == 1

    def test_converge(self, tmp_path, capsys):
        code, out, _ = run(["converge", "--h0-list", "10,100,1000,10000", "--out-dir", str(tmp_path),
                            "--dt", "1e-3", "--n-xi", "100"], capsys)
        doc = json.loads(out)
        assert code == 0 and doc["notes"]["strictly_decreasing"] and doc["notes"]["fd_strictly_decreasing"]
        gaps = [float(r["gap"]) for r in csv.DictReader((tmp_path / "converge_gamma.csv").open())]
        assert all(b < a for a, b in zip(gaps, gaps[1:]))
        assert len(list(csv.DictReader((tmp_path / "converge_fd.csv").open()))) == 4

    def test_mkdv(self, tmp_path, capsys):
        code, out, _ = run(["mkdv", "--amp", "2", "--samples-csv", str(tmp_path / "k.csv")], capsys)
        doc = json.loads(out)
        res = {r["id"]: r["max_abs"] for r in doc["residuals"]}
        assert code == 0 and res["kink identity"] <= 1e-12 and res["casimir (fd)"] <= 1e-3
        assert run(["mkdv", "--no-reflect", "--levels", "1"], capsys)[0] == 1

    def test_mkdv_bad_domain(self, capsys):
        assert run(["mkdv", "--y-min", "0.1"], capsys)[0] == 4


def test_help_lists_subcommands():
    text = build_parser().format_help()
    for name in ("gamma", "chain", "verify", "fd", "converge", "mkdv"):
        assert name in text


def test_exit_code_matches_passed_flag(capsys):
    for args in (["verify", "--suite", "p2"], ["verify", "--suite", "p2", "--tol", "1e-18"]):
        code, out, _ = run(args, capsys)
        assert (code == 0) == json.loads(out)["passed"]


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "stefan_chain", "gamma"], capture_output=True, text=True)
    assert proc.returncode == 0 and "gamma" in json.loads(proc.stdout)


def test_chain_is_deterministic(tmp_path):
    outs = []
    for k in range(2):
        path = tmp_path / f"run{k}.csv"
        subprocess.run([sys.executable, "-m", "stefan_chain", "chain", "--samples", "33", "--t", "0.7",
                        "-o", str(path)], check=True)
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
