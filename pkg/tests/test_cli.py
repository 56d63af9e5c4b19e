"""Command-line interface: emission formats, skip annotations,
determinism and exit codes."""

import json
import math

import pytest

from abgup import PhysicalParams, dsigma, flux_split, width
from abgup.cli import main


def _rows(path):
    lines = path.read_text().splitlines()
    header = lines[0]
    data = [ln for ln in lines[1:] if not ln.startswith("#")]
    skips = [ln for ln in lines[1:] if ln.startswith("# skipped")]
    return header, data, skips


# =====================================================================
# Scan subcommands
# =====================================================================

class TestScans:
    def test_alpha_scan_csv(self, tmp_path):
        out = tmp_path / "scan.csv"
        rc = main(
            [
                "alpha-scan", "--phi", "0.785398163", "--beta", "0.01",
                "--alpha-min", "0.01", "--alpha-max", "1.99", "--steps", "50",
                "--out", str(out),
            ]
        )
        assert rc == 0
        header, data, _ = _rows(out)
        assert header == "alpha_prime,phi,beta,dsigma"
        assert len(data) == 50
        a0, phi0, beta0, d0 = (float(tok) for tok in data[0].split(","))
        assert a0 == 0.01
        assert beta0 == 0.01
        assert d0 == pytest.approx(
            dsigma(phi0, a0, PhysicalParams(beta=0.01)), rel=1e-15
        )

    def test_alpha_scan_beta_zero_closed_form(self, tmp_path):
        out = tmp_path / "scan.csv"
        assert main(
            [
                "alpha-scan", "--phi", str(math.pi / 4), "--beta", "0",
                "--alpha-min", "0.05", "--alpha-max", "0.95", "--steps", "10",
                "--out", str(out),
            ]
        ) == 0
        _, data, _ = _rows(out)
        for line in data:
            a, phi, _, d = (float(tok) for tok in line.split(","))
            gamma = flux_split(a).gamma_part
            ref = math.sin(math.pi * gamma) ** 2 / (2 * math.pi * math.cos(phi / 2) ** 2)
            assert d == pytest.approx(ref, abs=1e-14)

    def test_phi_scan_skips_near_pi(self, tmp_path):
        out = tmp_path / "scan.csv"
        rc = main(
            [
                "phi-scan", "--alpha", "2.5", "--beta", "0.008",
                "--phi-min", str(math.pi - 0.02), "--phi-max", str(math.pi + 0.02),
                "--steps", "5", "--out", str(out),
            ]
        )
        assert rc == 0
        _, data, skips = _rows(out)
        assert len(data) == 4
        assert len(skips) == 1
        assert "forward-direction margin" in skips[0]
        assert f"phi={math.pi:.17g}" in skips[0]

    def test_alpha_scan_skips_integer_flux(self, tmp_path):
        out = tmp_path / "scan.csv"
        assert main(
            [
                "alpha-scan", "--phi", "0.5", "--beta", "0.01",
                "--alpha-min", "0.99995", "--alpha-max", "1.00005", "--steps", "3",
                "--out", str(out),
            ]
        ) == 0
        _, data, skips = _rows(out)
        assert len(data) == 0
        assert len(skips) == 3
        assert all("integer-flux margin" in s for s in skips)

    def test_margin_flag_widens_skip_band(self, tmp_path):
        out = tmp_path / "scan.csv"
        assert main(
            [
                "phi-scan", "--alpha", "0.5", "--beta", "0.01",
                "--phi-min", "3.0", "--phi-max", "3.1", "--steps", "3",
                "--margin", "0.2", "--out", str(out),
            ]
        ) == 0
        _, data, skips = _rows(out)
        assert len(data) == 0
        assert len(skips) == 3

    def test_deterministic_output(self, tmp_path):
        argv = [
            "alpha-scan", "--phi", "0.7853981634", "--beta", "0.01",
            "--alpha-min", "0.01", "--alpha-max", "1.99", "--steps", "40",
        ]
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        assert main(argv + ["--out", str(a)]) == 0
        assert main(argv + ["--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_json_round_trip(self, tmp_path):
        out = tmp_path / "scan.json"
        assert main(
            [
                "alpha-scan", "--phi", "0.785", "--beta", "0.01",
                "--alpha-min", "0.3", "--alpha-max", "1.7", "--steps", "10",
                "--format", "json", "--out", str(out),
            ]
        ) == 0
        doc = json.loads(out.read_text())
        assert len(doc["records"]) == 10
        assert doc["skipped"] == []
        rec = doc["records"][0]
        assert set(rec) == {
            "alpha_prime", "phi", "beta", "f0_re", "f0_im", "f1_re", "f1_im", "dsigma",
        }
        assert json.loads(json.dumps(doc, sort_keys=True)) == doc

    def test_json_skip_records(self, tmp_path):
        out = tmp_path / "scan.json"
        assert main(
            [
                "alpha-scan", "--phi", "0.5", "--beta", "0.01",
                "--alpha-min", "1.0", "--alpha-max", "1.0", "--steps", "2",
                "--format", "json", "--out", str(out),
            ]
        ) == 0
        doc = json.loads(out.read_text())
        assert doc["records"] == []
        assert len(doc["skipped"]) == 2
        assert doc["skipped"][0]["reason"] == "integer-flux margin"

    def test_stdout_emission(self, capsys):
        assert main(
            [
                "alpha-scan", "--phi", "0.5", "--beta", "0",
                "--alpha-min", "0.2", "--alpha-max", "0.8", "--steps", "3",
                "--out", "-",
            ]
        ) == 0
        captured = capsys.readouterr().out
        assert captured.startswith("alpha_prime,phi,beta,dsigma\n")
        assert len(captured.strip().splitlines()) == 4

    def test_steps_validation(self, tmp_path):
        rc = main(
            [
                "alpha-scan", "--phi", "0.5", "--alpha-min", "0.2",
                "--alpha-max", "0.8", "--steps", "1", "--out", str(tmp_path / "x.csv"),
            ]
        )
        assert rc == 1


# =====================================================================
# Radial / trajectory / width
# =====================================================================

class TestRadial:
    def test_csv_shape(self, tmp_path):
        out = tmp_path / "radial.csv"
        rc = main(
            [
                "radial", "--m", "1", "--alpha", "0.3", "--z-min", "0.5",
                "--z-max", "10", "--steps", "25", "--beta", "0.01", "--out", str(out),
            ]
        )
        assert rc == 0
        header, data, _ = _rows(out)
        assert header == "z,m,alpha_prime,re_f0,im_f0,re_f1,im_f1"
        assert len(data) == 25
        first = data[0].split(",")
        assert float(first[0]) == 0.5
        assert first[1] == "1"

    def test_small_z_rejected(self, tmp_path):
        rc = main(["radial", "--alpha", "0.3", "--z-min", "0.05", "--out", str(tmp_path / "x.csv")])
        assert rc == 1

    def test_degenerate_mode_rejected(self, tmp_path):
        rc = main(["radial", "--m", "1", "--alpha", "1.0", "--out", str(tmp_path / "x.csv")])
        assert rc == 1


class TestTrajectory:
    def test_csv_2d(self, tmp_path):
        out = tmp_path / "traj.csv"
        rc = main(
            [
                "trajectory", "--field", "uniform-b", "--b", "1.0",
                "--x0", "0,0", "--p0", "1,0", "--dt", "0.001", "--steps", "100",
                "--out", str(out),
            ]
        )
        assert rc == 0
        header, data, _ = _rows(out)
        assert header == "t,x1,x2,v1,v2,energy"
        assert len(data) == 101
        energies = [float(ln.split(",")[-1]) for ln in data]
        assert max(energies) - min(energies) < 1e-12

    def test_csv_3d(self, tmp_path):
        out = tmp_path / "traj.csv"
        rc = main(
            [
                "trajectory", "--field", "uniform-e", "--e0", "0.1,0,0",
                "--x0", "0,0,0", "--p0", "0.5,0,0.2", "--steps", "10",
                "--out", str(out),
            ]
        )
        assert rc == 0
        header, data, _ = _rows(out)
        assert header == "t,x1,x2,x3,v1,v2,v3,energy"
        assert len(data) == 11

    def test_ab_needs_2d(self, tmp_path):
        rc = main(
            ["trajectory", "--field", "ab", "--x0", "1,0,0", "--p0", "0,1,0",
             "--out", str(tmp_path / "x.csv")]
        )
        assert rc == 1

    def test_bad_vector(self, tmp_path):
        rc = main(["trajectory", "--x0", "a,b", "--out", str(tmp_path / "x.csv")])
        assert rc == 1

    def test_json_records(self, tmp_path):
        out = tmp_path / "traj.json"
        assert main(
            [
                "trajectory", "--field", "free", "--x0", "0,0", "--p0", "1,1",
                "--steps", "5", "--format", "json", "--out", str(out),
            ]
        ) == 0
        doc = json.loads(out.read_text())
        assert len(doc["records"]) == 6
        assert set(doc["records"][0]) == {"t", "x1", "x2", "v1", "v2", "energy"}


class TestWidth:
    def test_single_row(self, tmp_path):
        out = tmp_path / "w.csv"
        rc = main(
            ["width", "--n", "1", "--phi", str(math.pi / 4), "--beta", "0.01",
             "--out", str(out)]
        )
        assert rc == 0
        header, data, _ = _rows(out)
        assert header == "n,phi,beta,width"
        assert len(data) == 1
        val = float(data[0].split(",")[-1])
        assert val == pytest.approx(
            width(1, math.pi / 4, PhysicalParams(beta=0.01)), rel=1e-15
        )
        assert val == pytest.approx(0.0222144, abs=1e-6)


# =====================================================================
# Exit codes and selftest
# =====================================================================

class TestExitCodes:
    def test_help_is_zero(self, capsys):
        assert main(["--help"]) == 0
        capsys.readouterr()

    def test_unknown_flag(self, capsys):
        assert main(["alpha-scan", "--bogus", "1"]) == 1
        capsys.readouterr()

    def test_missing_required(self, capsys):
        assert main(["width", "--n", "1"]) == 1
        capsys.readouterr()

    def test_unwritable_path(self):
        rc = main(
            ["width", "--n", "1", "--phi", "0.5", "--out", "/nonexistent-dir/x.csv"]
        )
        assert rc == 1

    def test_selftest_passes(self, capsys):
        rc = main(["selftest"])
        out = capsys.readouterr().out
        assert rc == 0
        assert "FAIL" not in out
        assert "checks passed" in out
