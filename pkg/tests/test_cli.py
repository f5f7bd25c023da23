import json

import numpy as np
import pytest

import oamqkd.cli as cli_mod
from oamqkd import DegenerateEnsembleError
from oamqkd.cli import main


class TestRates:
    def test_table(self, tmp_path, capsys):
        out = tmp_path / "rates.csv"
        assert main(["rates", "--q-max", "0.1", "--q-step", "0.05", "--out", str(out)]) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "Q,r_e91,r_six"
        assert lines[1] == "0,1,1"
        assert len(lines) == 4
        assert "wrote 3 rows" in capsys.readouterr().out

    def test_domain_error_exit_code(self, tmp_path):
        out = tmp_path / "rates.csv"
        assert main(["rates", "--q-max", "0.9", "--q-step", "0.1", "--out", str(out)]) == 2


class TestDistance:
    def test_worked_example(self, capsys):
        assert main([
            "distance", "--wavelength", "710e-9", "--cn2", "5e-16",
            "--length", "144e3", "--w0", "50e-3", "--ell", "1",
        ]) == 0
        out = capsys.readouterr().out
        assert "r0 = 0.00942502 m" in out
        assert "W = 5.30503" in out
        assert "L_dec(ell=1) = 8914.18 m" in out
        assert "warning" not in out

    def test_rayleigh_warning(self, capsys):
        main([
            "distance", "--wavelength", "710e-9", "--cn2", "5e-16",
            "--length", "144e3", "--w0", "50e-3", "--ell", "29",
        ])
        assert "not reliable" in capsys.readouterr().out

    def test_bad_input_exit_code(self):
        assert main([
            "distance", "--wavelength", "-1", "--cn2", "5e-16",
            "--length", "1e3", "--w0", "0.05",
        ]) == 2


class TestScreen:
    def test_structure_csv_and_dump(self, tmp_path):
        out = tmp_path / "sf.csv"
        dump = tmp_path / "screen.csv"
        code = main([
            "screen", "--n", "64", "--window", "1.0", "--screens", "30",
            "--seed", "1", "--out", str(out), "--dump-screen", str(dump),
        ])
        assert code == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "r,D_emp,D_kolmogorov,ratio"
        assert len(lines) > 3
        matrix = dump.read_text().splitlines()
        assert len(matrix) == 65  # header + 64 rows
        assert len(matrix[0].split(",")) == 64

    def test_too_small_grid_is_config_error(self, tmp_path):
        code = main(["screen", "--n", "8", "--window", "1.0", "--out", str(tmp_path / "x.csv")])
        assert code == 2


class TestCrosstalk:
    def test_matrix_headers(self, tmp_path):
        out = tmp_path / "ct.csv"
        code = main([
            "crosstalk", "--lmax", "1", "--w", "0.0", "--realizations", "2",
            "--n", "64", "--out", str(out),
        ])
        assert code == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "ellA\\ellB,-1,0,1"
        assert len(lines) == 4
        values = np.array([[float(v) for v in ln.split(",")[1:]] for ln in lines[1:]])
        anti = np.fliplr(np.eye(3)).astype(bool)
        assert np.all(values[~anti] < 1e-12)

    def test_mode_intensity_dump(self, tmp_path):
        out = tmp_path / "ct.csv"
        dump = tmp_path / "intensity.csv"
        code = main([
            "crosstalk", "--lmax", "1", "--w", "0.0", "--realizations", "1",
            "--n", "64", "--dump-mode", "3", "--dump-mode-out", str(dump),
            "--out", str(out),
        ])
        assert code == 0
        lines = dump.read_text().splitlines()
        assert len(lines) == 65
        values = np.array([[float(v) for v in ln.split(",")] for ln in lines[1:]])
        assert values.min() >= 0.0  # intensities
        assert values[32, 32] < values.max()  # donut: dark vortex core

    def test_custom_spectrum(self, tmp_path):
        spec_file = tmp_path / "spectrum.csv"
        spec_file.write_text("ell,re,im\n-1,0,0\n0,0,0\n1,1,0\n")
        out = tmp_path / "ct.csv"
        code = main([
            "crosstalk", "--lmax", "1", "--w", "0.0", "--realizations", "1",
            "--n", "64", "--spectrum", str(spec_file), "--out", str(out),
        ])
        assert code == 0
        rows = out.read_text().splitlines()[1:]
        values = np.array([[float(v) for v in ln.split(",")[1:]] for ln in rows])
        assert values[2, 0] == pytest.approx(1.0, abs=1e-10)  # only (1, -1) survives

    def test_incomplete_spectrum_rejected(self, tmp_path):
        spec_file = tmp_path / "spectrum.csv"
        spec_file.write_text("ell,re,im\n0,1,0\n")
        code = main([
            "crosstalk", "--lmax", "1", "--spectrum", str(spec_file),
            "--out", str(tmp_path / "ct.csv"),
        ])
        assert code == 2


class TestSweep:
    BASE = {
        "ells": [1],
        "w_grid": [0.0, 0.5],
        "realizations": 2,
        "grid_n": 64,
        "base_seed": 7,
        "bootstrap_resamples": 5,
    }

    def test_config_file_with_override(self, tmp_path):
        config = tmp_path / "config.json"
        config.write_text(json.dumps(self.BASE))
        out1 = tmp_path / "a.csv"
        out2 = tmp_path / "b.csv"
        assert main(["sweep", "--config", str(config), "--out", str(out1)]) == 0
        assert main([
            "sweep", "--config", str(config), "--base_seed", "7", "--out", str(out2)
        ]) == 0
        assert out1.read_bytes() == out2.read_bytes()
        assert len(out1.read_text().splitlines()) == 3

    def test_override_changes_result(self, tmp_path):
        config = tmp_path / "config.json"
        config.write_text(json.dumps(self.BASE))
        out1 = tmp_path / "a.csv"
        out2 = tmp_path / "b.csv"
        main(["sweep", "--config", str(config), "--out", str(out1)])
        main(["sweep", "--config", str(config), "--base_seed", "8", "--out", str(out2)])
        assert out1.read_bytes() != out2.read_bytes()

    def test_unknown_config_key_rejected(self, tmp_path):
        config = tmp_path / "config.json"
        config.write_text(json.dumps({**self.BASE, "turbo": True}))
        assert main(["sweep", "--config", str(config), "--out", str(tmp_path / "x.csv")]) == 2

    def test_invalid_field_value_rejected(self, tmp_path):
        config = tmp_path / "config.json"
        config.write_text(json.dumps({**self.BASE, "realizations": 0}))
        assert main(["sweep", "--config", str(config), "--out", str(tmp_path / "x.csv")]) == 2

    def test_unwritable_output_is_runtime_error(self, tmp_path):
        config = tmp_path / "config.json"
        config.write_text(json.dumps(self.BASE))
        code = main([
            "sweep", "--config", str(config), "--out", str(tmp_path / "no" / "x.csv")
        ])
        assert code == 3

    def test_degenerate_ensemble_exit_code(self, tmp_path, monkeypatch):
        def explode(config):
            raise DegenerateEnsembleError("ell=1, W=0.5: no coincidences")

        monkeypatch.setattr(cli_mod, "run_sweep", explode)
        config = tmp_path / "config.json"
        config.write_text(json.dumps(self.BASE))
        assert main(["sweep", "--config", str(config), "--out", str(tmp_path / "x.csv")]) == 3


class TestParser:
    def test_missing_subcommand_exits_2(self):
        with pytest.raises(SystemExit) as err:
            main([])
        assert err.value.code == 2

    def test_version(self, capsys):
        with pytest.raises(SystemExit) as err:
            main(["--version"])
        assert err.value.code == 0
