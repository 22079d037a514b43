import csv
import io
import json
import math

import numpy as np
import pytest

from cohmzi.cli import main

FIG2_NETLIST = """\
source intensity=1.0 freq=1.935e14
bs
phase arm=upper value=pi/2
phase arm=lower value=-pi/2
bs
"""


def run_cli(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def read_csv(text):
    rows = list(csv.DictReader(io.StringIO(text)))
    return {key: np.array([float(r[key]) for r in rows])
            for key in ("zeta", "i_a", "i_b", "g2")}


class TestSweep:
    def test_static_fringe(self, capsys):
        code, out, _ = run_cli(
            ["sweep", "--zeta", "0:4pi", "--steps", "401", "--dphi", "0", "--i0", "1"],
            capsys)
        assert code == 0
        cols = read_csv(out)
        assert len(cols["zeta"]) == 401
        assert cols["zeta"][0] == 0.0
        assert cols["zeta"][-1] == pytest.approx(4 * math.pi, abs=0)
        assert np.allclose(cols["i_a"], (1 - np.cos(cols["zeta"])) / 2, atol=1e-12)
        assert np.allclose(cols["i_b"], (1 + np.cos(cols["zeta"])) / 2, atol=1e-12)

    def test_swapped_fringe(self, capsys):
        _, base, _ = run_cli(["sweep", "--zeta", "0:4pi", "--steps", "101",
                              "--dphi", "0"], capsys)
        _, swapped, _ = run_cli(["sweep", "--zeta", "0:4pi", "--steps", "101",
                                 "--dphi", "pi"], capsys)
        a, b = read_csv(base), read_csv(swapped)
        assert np.allclose(a["i_a"], b["i_b"], atol=1e-12)
        assert np.allclose(a["i_b"], b["i_a"], atol=1e-12)

    def test_pulse_mode(self, capsys):
        code, out, _ = run_cli(
            ["sweep", "--zeta", "0:4pi", "--steps", "101",
             "--pulse", "period=1e-3,duty=0.5,n=10,spp=20", "--dphi-on", "pi"],
            capsys)
        assert code == 0
        cols = read_csv(out)
        assert np.allclose(cols["i_a"], 0.5, atol=1e-12)
        assert np.allclose(cols["g2"], np.sin(cols["zeta"]) ** 2, atol=1e-9)

    def test_deterministic_output_is_bit_stable(self, capsys):
        argv = ["sweep", "--zeta", "0:2pi", "--steps", "51", "--dphi", "pi/2"]
        _, first, _ = run_cli(argv, capsys)
        _, second, _ = run_cli(argv, capsys)
        assert first == second

    def test_json_matches_csv_values(self, capsys):
        argv = ["sweep", "--zeta", "0:2pi", "--steps", "21", "--dphi", "0.3"]
        _, text_csv, _ = run_cli(argv + ["--format", "csv"], capsys)
        _, text_json, _ = run_cli(argv + ["--format", "json"], capsys)
        cols = read_csv(text_csv)
        records = json.loads(text_json)["records"]
        assert len(records) == 21
        for i, rec in enumerate(records):
            for key in ("zeta", "i_a", "i_b", "g2"):
                assert rec[key] == cols[key][i]

    def test_out_file(self, tmp_path, capsys):
        target = tmp_path / "sweep.csv"
        code, out, _ = run_cli(["sweep", "--steps", "11", "--out", str(target)], capsys)
        assert code == 0
        assert out == ""
        assert target.read_text().startswith("zeta,i_a,i_b,g2\n")

    def test_out_file_io_error(self, tmp_path, capsys):
        code, _, err = run_cli(
            ["sweep", "--steps", "11", "--out", str(tmp_path / "no" / "dir.csv")],
            capsys)
        assert code == 3
        assert err

    def test_bad_range_is_usage_error(self, capsys):
        code, _, err = run_cli(["sweep", "--zeta", "4pi:0"], capsys)
        assert code == 2
        assert err

    def test_bad_flag_is_usage_error(self, capsys):
        assert run_cli(["sweep", "--nope"], capsys)[0] == 2

    def test_config_file_with_flag_override(self, tmp_path, capsys):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("zeta = 0:2pi\nsteps = 5\ndphi = pi\n")
        code, out, _ = run_cli(["sweep", "--config", str(cfg), "--steps", "9"], capsys)
        assert code == 0
        cols = read_csv(out)
        assert len(cols["zeta"]) == 9  # flag wins over config
        assert cols["i_a"][0] == pytest.approx(1.0)  # dphi = pi from config

    def test_seed_env_fallback(self, capsys, monkeypatch):
        monkeypatch.setenv("COHMZI_SEED", "42")
        argv = ["sweep", "--zeta", "0:2pi", "--steps", "11",
                "--pulse", "period=1e-3,duty=0.5,n=4,spp=20",
                "--jitter-std", "0.05"]
        _, first, _ = run_cli(argv, capsys)
        _, second, _ = run_cli(argv, capsys)
        assert first == second
        monkeypatch.setenv("COHMZI_SEED", "43")
        _, third, _ = run_cli(argv, capsys)
        assert third != first


class TestEval:
    def test_fig2_circuit(self, tmp_path, capsys):
        path = tmp_path / "fig2.mzi"
        path.write_text(FIG2_NETLIST)
        code, out, _ = run_cli(["eval", str(path)], capsys)
        assert code == 0
        result = json.loads(out)
        # zeta = 0, delta_phi = pi routes everything to port A
        assert result["i_a"] == pytest.approx(1.0, abs=1e-12)
        assert result["i_b"] == pytest.approx(0.0, abs=1e-12)

    def test_double_splitter(self, tmp_path, capsys):
        path = tmp_path / "bare.mzi"
        path.write_text("source intensity=1 freq=1\nbs\nbs\n")
        code, out, _ = run_cli(["eval", str(path)], capsys)
        assert code == 0
        result = json.loads(out)
        assert result["i_a"] == pytest.approx(0.0, abs=1e-12)
        assert result["i_b"] == pytest.approx(1.0, abs=1e-12)

    def test_zeta_override(self, tmp_path, capsys):
        path = tmp_path / "fig2.mzi"
        path.write_text(FIG2_NETLIST)
        code, out, _ = run_cli(["eval", str(path), "--zeta", "pi"], capsys)
        assert code == 0
        result = json.loads(out)
        # zeta + delta_phi = 2 pi routes everything to port B
        assert result["i_a"] == pytest.approx(0.0, abs=1e-12)
        assert result["i_b"] == pytest.approx(1.0, abs=1e-12)

    def test_malformed_file_names_line(self, tmp_path, capsys):
        path = tmp_path / "bad.mzi"
        path.write_text("source intensity=1 freq=1\nphasee arm=upper value=0\n")
        code, _, err = run_cli(["eval", str(path)], capsys)
        assert code == 2
        assert "line 2" in err

    def test_missing_file(self, tmp_path, capsys):
        code, _, err = run_cli(["eval", str(tmp_path / "absent.mzi")], capsys)
        assert code == 3
        assert err


class TestCheck:
    def test_all_properties_pass(self, capsys):
        code, out, _ = run_cli(["check"], capsys)
        assert code == 0
        lines = [l for l in out.splitlines() if l]
        assert len(lines) >= 5
        assert all(l.startswith("pass") for l in lines)

    def test_perturbed_splitter_fails_unitarity(self, capsys):
        from cohmzi.checks import run_checks
        from cohmzi.optics import make_beam_splitter
        perturbed = make_beam_splitter() * 1.001
        results = run_checks(beam_splitter=perturbed)
        failed = {name for name, ok, _ in results if not ok}
        assert "unitarity" in failed
