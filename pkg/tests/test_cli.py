import json

import pytest

from infobell.cli import cli_main
from infobell.session import CSV_HEADER


def run_cli(capsys, *argv):
    code = cli_main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestPlan:
    def test_reference_row_exact_json(self, capsys):
        code, out, _ = run_cli(capsys, "plan", "--p0", "0.012", "--p1", "0.85",
                               "--alpha", "0.001", "--gamma", "0.99")
        assert code == 0
        assert json.loads(out) == {"n_req": 6, "k0": 2}

    def test_table(self, capsys, tmp_path):
        out_path = tmp_path / "grid.csv"
        code, _, _ = run_cli(capsys, "plan", "--p0", "0.012", "--p1", "0.85",
                             "--table", "--output", str(out_path))
        assert code == 0
        lines = out_path.read_text().strip().splitlines()
        assert lines[0] == "alpha_percent,gamma_percent,n_req,k0,matches_paper"
        assert len(lines) == 17
        assert sum(1 for ln in lines[1:] if ln.endswith(",true")) >= 9


class TestTail:
    def test_value(self, capsys):
        code, out, _ = run_cli(capsys, "tail", "--k", "1", "--n", "3",
                               "--p0", "0.012")
        assert code == 0
        assert json.loads(out)["p"] == pytest.approx(0.0356, abs=1e-4)


class TestCurve:
    def test_csv_and_fraction(self, capsys, tmp_path):
        out_path = tmp_path / "curve.csv"
        code, out, _ = run_cli(capsys, "curve", "--min", "0", "--max", "100",
                               "--step", "0.05", "--output", str(out_path))
        assert code == 0
        frac = json.loads(out)["violation_fraction"]
        assert frac == pytest.approx(0.85, abs=0.01)
        lines = out_path.read_text().strip().splitlines()
        assert lines[0] == "theta_degrees,deficit_bits"
        assert len(lines) == 2002


class TestSimulate:
    def test_stats_json_and_deficits_csv(self, capsys, tmp_path):
        out_path = tmp_path / "deficits.csv"
        code, out, _ = run_cli(
            capsys, "simulate", "--case", "random", "--outcomes", "4",
            "--experiments", "300", "--seed", "42", "--output", str(out_path))
        assert code == 0
        payload = json.loads(out)
        assert payload["n_valid"] == 300
        assert "p_rank" in payload
        assert payload["estimator_variant"]["scheme"] == "cross-table"
        lines = out_path.read_text().strip().splitlines()
        assert lines[0] == ("experiment_index,h_ab_hd,h_ab_prime,"
                            "h_bprime_aprime,h_aprime_b,deficit")
        assert len(lines) == 301

    def test_deterministic_output(self, capsys):
        _, out1, _ = run_cli(capsys, "simulate", "--outcomes", "4",
                             "--experiments", "200", "--seed", "7")
        _, out2, _ = run_cli(capsys, "simulate", "--outcomes", "4",
                             "--experiments", "200", "--seed", "7")
        assert json.loads(out1) == json.loads(out2)


class TestEnumerate:
    def test_exact_json(self, capsys):
        code, out, _ = run_cli(capsys, "enumerate", "--case", "random",
                               "--outcomes", "2")
        assert code == 0
        payload = json.loads(out)
        assert payload["p_strict_positive"]["fraction"] == "1/48"
        assert payload["p_zero"]["fraction"] == "55/72"

    def test_guard_is_data_error(self, capsys):
        code, _, err = run_cli(capsys, "enumerate", "--outcomes", "9")
        assert code == 2
        assert "data error" in err


class TestAnalyze:
    def test_verdict_flow(self, capsys, tmp_path):
        # build a tiny session: 2 experiments of 2 outcomes, perfectly
        # anticorrelated selected pairs
        rows = [
            "1,1,1,0,0,0,a,b_prime",
            "1,2,0,1,1,1,a,b_prime",
            "2,1,1,0,1,0,a_prime,b",
            "2,2,0,1,0,1,a_prime,b",
        ]
        path = tmp_path / "session.csv"
        path.write_text(CSV_HEADER + "\n" + "\n".join(rows) + "\n")
        code, out, _ = run_cli(capsys, "analyze", "--input", str(path),
                               "--p0", "0.012", "--p1", "0.85")
        assert code == 0
        payload = json.loads(out)
        assert payload["experiments"] == 2
        assert payload["plan"] == {"n_req": 6, "k0": 2}
        assert payload["verdict"] in {"InProgress", "AcceptH1", "RetainH0"}

    def test_missing_file_is_data_error(self, capsys):
        code, _, err = run_cli(capsys, "analyze", "--input", "/nonexistent.csv",
                               "--p0", "0.012", "--p1", "0.85")
        assert code == 2

    def test_malformed_csv_is_data_error(self, capsys, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text(CSV_HEADER + "\n1,1,9,0,0,1,a,b\n")
        code, _, err = run_cli(capsys, "analyze", "--input", str(path),
                               "--p0", "0.012", "--p1", "0.85")
        assert code == 2
        assert "data error" in err


class TestUsageErrors:
    def test_unknown_flag(self, capsys):
        code, _, err = run_cli(capsys, "plan", "--bogus", "1")
        assert code == 1

    def test_unknown_command(self, capsys):
        code, _, _ = run_cli(capsys, "frobnicate")
        assert code == 1

    def test_missing_required(self, capsys):
        code, _, _ = run_cli(capsys, "simulate", "--outcomes", "4")
        assert code == 1

    def test_unknown_case_value(self, capsys):
        code, _, err = run_cli(capsys, "simulate", "--case", "weird",
                               "--outcomes", "4", "--experiments", "10")
        assert code == 1
