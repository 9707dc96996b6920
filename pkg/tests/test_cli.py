import hashlib
import json
import math

import pytest

from mixent.cli import main
from mixent.sweep import CSV_HEADER


def write_json(path, payload):
    path.write_text(json.dumps(payload))
    return str(path)


@pytest.fixture
def gaussian_spec(tmp_path):
    return write_json(tmp_path / "gauss.json", {
        "dimension": 1,
        "weights": [1.0],
        "components": [{"kind": "gaussian", "mean": [0.0], "cov": [[1.0]]}],
    })


@pytest.fixture
def glm_full_cov_spec(tmp_path):
    return write_json(tmp_path / "glm.json", {
        "dimension": 2,
        "weights": [0.5, 0.5],
        "components": [
            {"kind": "gaussian", "mean": [0.0, 0.0], "cov": [[1.0, 0.4], [0.4, 1.0]]},
            {"kind": "laplacian", "location": [1.0, 1.0], "scale": [1.0, 1.0]},
        ],
    })


class TestReport:
    def test_single_gaussian_report(self, gaussian_spec, capsys):
        assert main(["report", "--mixture", gaussian_spec]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["lower_bits"] == payload["upper_bits"] == payload["clipped_bits"]
        assert payload["lower_bits"] == pytest.approx(0.5 * math.log2(2 * math.pi * math.e))

    def test_bad_weights_exit_2(self, tmp_path, capsys):
        path = write_json(tmp_path / "bad.json", {
            "dimension": 1,
            "weights": [0.5, 0.4],
            "components": [
                {"kind": "gaussian", "mean": [0.0], "cov": [[1.0]]},
                {"kind": "gaussian", "mean": [1.0], "cov": [[1.0]]},
            ],
        })
        assert main(["report", "--mixture", path]) == 2
        assert "WeightError" in capsys.readouterr().err

    def test_full_covariance_hybrid_exit_3(self, glm_full_cov_spec, capsys):
        assert main(["report", "--mixture", glm_full_cov_spec]) == 3
        assert "NonDiagonalCovariance" in capsys.readouterr().err

    def test_missing_file_exit_2(self, tmp_path, capsys):
        assert main(["report", "--mixture", str(tmp_path / "nope.json")]) == 2

    def test_mc_fields_appended(self, gaussian_spec, capsys):
        assert main(["report", "--mixture", gaussian_spec, "--mc-samples", "5000", "--seed", "3"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert "h_mc" in payload and "se" in payload
        assert abs(payload["h_mc"] - payload["clipped_bits"]) <= 3 * payload["se"]

    def test_input_not_mutated(self, gaussian_spec, capsys):
        before = hashlib.sha256(open(gaussian_spec, "rb").read()).hexdigest()
        main(["report", "--mixture", gaussian_spec])
        capsys.readouterr()
        after = hashlib.sha256(open(gaussian_spec, "rb").read()).hexdigest()
        assert before == after


class TestMc:
    def test_mc_output(self, gaussian_spec, capsys):
        assert main(["mc", "--mixture", gaussian_spec, "--samples", "4000", "--seed", "1"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["samples"] == 4000 and payload["seed"] == 1
        truth = 0.5 * math.log2(2 * math.pi * math.e)
        assert abs(payload["h_mc"] - truth) <= 4 * payload["se"]

    def test_mc_deterministic(self, gaussian_spec, capsys):
        main(["mc", "--mixture", gaussian_spec, "--samples", "2000", "--seed", "5"])
        first = capsys.readouterr().out
        main(["mc", "--mixture", gaussian_spec, "--samples", "2000", "--seed", "5"])
        assert capsys.readouterr().out == first


class TestSweep:
    def config(self, tmp_path, **overrides):
        payload = {
            "family": "GM", "dimension": 2, "components": 8,
            "mc_samples": 500, "seed": 1,
        }
        payload.update(overrides)
        return write_json(tmp_path / "cfg.json", payload)

    def test_default_grid_row_count(self, tmp_path, capsys):
        cfg = self.config(tmp_path)
        out = tmp_path / "out.csv"
        assert main(["sweep", "--config", cfg, "--out", str(out)]) == 0
        lines = out.read_text().strip().split("\n")
        assert lines[0] == CSV_HEADER
        assert len(lines) == 26  # header + 25 grid points

    def test_byte_identical_rerun(self, tmp_path):
        cfg = self.config(tmp_path, separation_grid=[0.0, 3.0], components=4)
        out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
        assert main(["sweep", "--config", cfg, "--out", str(out1)]) == 0
        assert main(["sweep", "--config", cfg, "--out", str(out2)]) == 0
        assert out1.read_bytes() == out2.read_bytes()

    def test_ar1_bounds_constant_down_file(self, tmp_path):
        cfg = self.config(
            tmp_path, family="GM_AR1", dimension=8, components=8, rho=0.9,
            separation_grid=[0.0, 2.0, 4.0, 6.0], mc_samples=400,
        )
        out = tmp_path / "ar1.csv"
        assert main(["sweep", "--config", cfg, "--out", str(out)]) == 0
        rows = [line.split(",") for line in out.read_text().strip().split("\n")[1:]]
        lowers = {row[7] for row in rows}
        uppers = {row[8] for row in rows}
        assert len(lowers) == 1 and len(uppers) == 1

    def test_invalid_config_exit_2(self, tmp_path, capsys):
        cfg = self.config(tmp_path, family="QQ")
        assert main(["sweep", "--config", cfg, "--out", str(tmp_path / "x.csv")]) == 2

    def test_unwritable_output_exit_4(self, tmp_path, capsys):
        cfg = self.config(tmp_path, separation_grid=[0.0], components=2, mc_samples=100)
        assert main(["sweep", "--config", cfg, "--out", str(tmp_path / "no" / "dir" / "x.csv")]) == 4


class TestVerifyOverlaps:
    def test_small_run_passes(self, capsys):
        assert main(["verify-overlaps", "--trials", "40", "--seed", "0", "--tol", "1e-8"]) == 0
        out = capsys.readouterr().out
        assert out.count("max relative error") == 6

    def test_unreachable_tolerance_exit_5(self, capsys):
        assert main(["verify-overlaps", "--trials", "60", "--seed", "0", "--tol", "1e-18"]) == 5
        err = capsys.readouterr().err
        assert "exceeded tol" in err

    def test_single_trial_reproducible(self, capsys):
        main(["verify-overlaps", "--trials", "1", "--seed", "7", "--tol", "1e-8"])
        first = capsys.readouterr().out
        main(["verify-overlaps", "--trials", "1", "--seed", "7", "--tol", "1e-8"])
        assert capsys.readouterr().out == first

    def test_zero_trials_rejected(self, capsys):
        assert main(["verify-overlaps", "--trials", "0"]) == 2
