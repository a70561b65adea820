"""End-to-end CLI tests: output formats, exit-code contract, determinism."""

from __future__ import annotations

import json
import subprocess
import sys

import pytest


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "lefttail", *args],
        capture_output=True,
        text=True,
    )


class TestBoundCommand:
    def test_finite_bound_line(self):
        proc = run_cli("bound", "--lambda", "2", "--n", "4", "--method", "theorem1")
        assert proc.returncode == 0
        assert proc.stdout == "0.3125,first-max-term,false\n"

    def test_limit_bound_line(self):
        proc = run_cli("bound", "--lambda", "2", "--method", "theorem1-limit")
        assert proc.returncode == 0
        assert proc.stdout == "0.406006,first-max-term,false\n"

    def test_clamped_flag(self):
        proc = run_cli("bound", "--lambda", "0", "--method", "theorem1-limit")
        assert proc.returncode == 0
        value, branch, clamped = proc.stdout.strip().split(",")
        assert value == "1.0"
        assert clamped == "true"

    def test_domain_error_exits_2(self):
        proc = run_cli("bound", "--lambda", "-1", "--method", "corollary1")
        assert proc.returncode == 2
        assert proc.stderr != ""

    def test_missing_n_exits_2(self):
        proc = run_cli("bound", "--lambda", "2", "--method", "theorem1")
        assert proc.returncode == 2

    def test_unknown_method_exits_2(self):
        proc = run_cli("bound", "--lambda", "2", "--method", "chernoff")
        assert proc.returncode == 2

    def test_precision_override(self):
        proc = run_cli("bound", "--lambda", "2", "--method", "theorem1-limit", "--precision", "9")
        assert proc.stdout.split(",")[0] == "0.40600585"


class TestCompareCommand:
    def test_header_and_reference_row(self, tmp_path):
        out = tmp_path / "table.csv"
        proc = run_cli(
            "compare", "--lambda-min", "0.5", "--lambda-max", "2", "--step", "0.5",
            "--n", "4", "--out", str(out),
        )
        assert proc.returncode == 0
        lines = out.read_text().split("\n")
        assert lines[0] == "lambda,n,theorem1,theorem1_limit,hoeffding,bentkus,bentkus_simple,corollary1"
        row = dict(zip(lines[0].split(","), lines[4].split(",")))
        assert row["lambda"] == "2.0"
        assert row["n"] == "4"
        assert row["theorem1"] == "0.3125"
        assert row["theorem1_limit"] == "0.406006"
        assert row["hoeffding"] == "0.84375"
        assert row["bentkus"] == "0.849463"
        assert row["bentkus_simple"] == "1.0"
        assert row["corollary1"] == "0.505195"

    def test_hoeffding_empty_below_one(self, tmp_path):
        out = tmp_path / "table.csv"
        run_cli("compare", "--lambda-min", "0.5", "--lambda-max", "0.5", "--step", "0.1",
                "--n", "4", "--out", str(out))
        fields = out.read_text().split("\n")[1].split(",")
        assert fields[2] == "1.0"  # finite-n bound is vacuous
        assert fields[4] == ""  # hoeffding column empty

    def test_bound_columns_ordered(self, tmp_path):
        out = tmp_path / "table.csv"
        run_cli("compare", "--lambda-min", "0", "--lambda-max", "4", "--step", "0.25",
                "--n", "4", "--out", str(out))
        for line in out.read_text().strip().split("\n")[1:]:
            fields = line.split(",")
            assert float(fields[2]) <= float(fields[7]) + 1e-12

    def test_raw_flag_exceeds_one(self):
        proc = run_cli("compare", "--lambda-min", "0", "--lambda-max", "0", "--step", "1",
                       "--n", "4", "--raw")
        fields = proc.stdout.strip().split("\n")[1].split(",")
        assert float(fields[3]) > 1.0  # raw limit at mean 0 is e

    def test_invalid_range_exits_2(self):
        proc = run_cli("compare", "--lambda-min", "3", "--lambda-max", "2", "--step", "0.5", "--n", "4")
        assert proc.returncode == 2

    def test_unwritable_path_exits_2(self, tmp_path):
        proc = run_cli("compare", "--lambda-min", "0", "--lambda-max", "1", "--step", "0.5",
                       "--n", "4", "--out", str(tmp_path / "missing" / "t.csv"))
        assert proc.returncode == 2


class TestVerifyCommand:
    def test_tightness_two_lines(self):
        proc = run_cli("verify", "tightness", "--lambda", "2", "--n", "4")
        assert proc.returncode == 0
        lines = proc.stdout.strip().split("\n")
        assert len(lines) == 2
        for line in lines:
            claim, passed, violation, points = line.split(",")
            assert claim.startswith("tightness-")
            assert passed == "true"
            assert float(violation) <= 1e-12
            assert points == "1"

    def test_lemma4_passes(self):
        proc = run_cli("verify", "lemma4", "--n", "3", "--lambda", "2", "--resolution", "0.02")
        assert proc.returncode == 0
        claim, passed, violation, points = proc.stdout.strip().split(",")
        assert (claim, passed) == ("lemma4", "true")
        assert int(points) > 0

    def test_two_point_passes(self):
        proc = run_cli("verify", "two-point", "--n", "2", "--lambda", "1.5", "--resolution", "0.05")
        assert proc.returncode == 0
        assert proc.stdout.startswith("two-point,true,")

    def test_inequalities_seven_lines(self):
        proc = run_cli("verify", "inequalities", "--n-max", "50", "--lambda-step", "0.05")
        assert proc.returncode == 0
        lines = proc.stdout.strip().split("\n")
        assert len(lines) == 7
        assert all(line.split(",")[1] == "true" for line in lines)

    def test_unknown_target_exits_2(self):
        proc = run_cli("verify", "everything")
        assert proc.returncode == 2


class TestSolveRCommand:
    def test_constants_line(self):
        proc = run_cli("solve-r", "--tol", "1e-12", "--precision", "9")
        assert proc.returncode == 0
        a0, r, iterations, residual = proc.stdout.strip().split(",")
        assert abs(float(a0) - 0.158594) < 1e-6
        assert abs(float(r) - 0.841405) < 1e-6
        assert int(iterations) > 0
        assert float(residual) <= 1e-12

    def test_out_of_range_tolerance_exits_2(self):
        proc = run_cli("solve-r", "--tol", "0.5")
        assert proc.returncode == 2


class TestMcCommand:
    @pytest.fixture
    def tight_spec(self, tmp_path):
        path = tmp_path / "spec.json"
        path.write_text(json.dumps([{"type": "two-point", "low": 0, "high": 1, "p": 0.5}] * 4))
        return str(path)

    def test_tight_case_passes(self, tight_spec):
        proc = run_cli("mc", "--spec", tight_spec, "--trials", "200000", "--seed", "42")
        assert proc.returncode == 0
        est, ci, bound, ok = proc.stdout.strip().split(",")
        assert abs(float(est) - 0.3125) <= float(ci)
        assert float(bound) == pytest.approx(0.3125, abs=1e-6)
        assert ok == "true"

    def test_seed_reproducibility_bytes(self, tight_spec):
        a = run_cli("mc", "--spec", tight_spec, "--trials", "50000", "--seed", "9")
        b = run_cli("mc", "--spec", tight_spec, "--trials", "50000", "--seed", "9")
        assert a.stdout == b.stdout

    def test_malformed_spec_exits_2(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        proc = run_cli("mc", "--spec", str(bad), "--trials", "10000")
        assert proc.returncode == 2

    def test_empty_spec_exits_2(self, tmp_path):
        empty = tmp_path / "empty.json"
        empty.write_text("[]")
        proc = run_cli("mc", "--spec", str(empty), "--trials", "10000")
        assert proc.returncode == 2

    def test_missing_file_exits_2(self):
        proc = run_cli("mc", "--spec", "/nonexistent/spec.json", "--trials", "10000")
        assert proc.returncode == 2
