import json
import math
import os

import pytest

from selfsim.cli import main
from selfsim.io import ResultEnvelope, emit_plot_script, write_csv_atomic


def _read(path):
    with open(path, "rb") as fh:
        return fh.read()


def _csv_rows(path):
    lines = _read(path).decode().splitlines()
    return lines[0].split(","), [line.split(",") for line in lines[1:]]


class TestDispersionCommand:
    def test_zero_wavenumber_row(self, tmp_path):
        out = tmp_path / "o"
        code = main(["dispersion", "--delta", "1", "--h", "1", "--zeta", "1",
                     "--k", "0,2", "--out", str(out)])
        assert code == 0
        header, rows = _csv_rows(out / "dispersion.csv")
        assert header == ["k", "omega2", "omega2_quadrature"]
        assert float(rows[0][1]) == 0.0
        assert float(rows[1][1]) == pytest.approx(2.0 * math.pi, rel=1e-12)

    def test_envelope_contents(self, tmp_path):
        out = tmp_path / "o"
        main(["dispersion", "--delta", "0.5", "--k", "1", "--out", str(out)])
        env = json.loads((out / "dispersion.json").read_text())
        assert env["command"] == "dispersion"
        assert env["version"] == "0.1.0"
        assert "config_sha256" in env
        assert env["tables"] == ["dispersion.csv"]
        assert "out" not in env["config"]


class TestValidation:
    def test_bad_delta_exits_1_without_files(self, tmp_path):
        out = tmp_path / "o"
        code = main(["dispersion", "--delta", "2.5", "--out", str(out)])
        assert code == 1
        assert not out.exists()

    def test_unknown_config_key_rejected(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"delta": 0.5, "bogus": 1}))
        code = main(["dispersion", "--config", str(cfg), "--out", str(tmp_path / "o")])
        assert code == 1

    def test_config_file_scalars_overridden_by_flags(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"delta": 0.5, "k": "1"}))
        out = tmp_path / "o"
        code = main(["dispersion", "--config", str(cfg), "--delta", "1.0", "--out", str(out)])
        assert code == 0
        env = json.loads((out / "dispersion.json").read_text())
        assert env["config"]["delta"] == 1.0

    def test_numeric_failure_exits_2(self, monkeypatch, tmp_path):
        from selfsim import cli
        from selfsim.errors import QuadratureNoConvergence

        def boom(config):
            raise QuadratureNoConvergence("forced")

        monkeypatch.setitem(cli._HANDLERS, "dispersion", boom)
        assert main(["dispersion", "--out", str(tmp_path / "o")]) == 2


class TestDeterminism:
    def test_reruns_are_byte_identical(self, tmp_path):
        blobs = []
        for name in ("a", "b"):
            out = tmp_path / name
            code = main(["diffusion", "--delta", "1", "--times", "1",
                         "--n", "4096", "--dx", "0.05", "--out", str(out)])
            assert code == 0
            blobs.append({f: _read(out / f) for f in sorted(os.listdir(out))})
        assert blobs[0] == blobs[1]


class TestDiffusionCommand:
    def test_cauchy_peak_value(self, tmp_path):
        out = tmp_path / "o"
        code = main(["diffusion", "--delta", "1", "--times", "1", "--out", str(out)])
        assert code == 0
        header, rows = _csv_rows(out / "diffusion.csv")
        mid = [r for r in rows if float(r[0]) == 0.0]
        assert len(mid) == 1
        assert float(mid[0][1]) == pytest.approx(1.0 / math.pi**2, abs=1e-4)
        env = json.loads((out / "diffusion.json").read_text())
        assert env["results"]["mass_t1"] == pytest.approx(1.0, abs=1e-12)
        assert (out / "diffusion.gp").exists()


class TestMcCommand:
    def test_samples_written_and_deterministic(self, tmp_path):
        outs = []
        for name in ("a", "b"):
            out = tmp_path / name
            code = main(["mc", "--delta", "0.5", "--t", "1", "--n-samples", "1000",
                         "--seed", "9", "--out", str(out)])
            assert code == 0
            outs.append(_read(out / "samples.csv"))
        assert outs[0] == outs[1]
        header = outs[0].decode().splitlines()
        assert header[0].startswith("# delta=0.5")
        assert header[1] == "x"
        assert len(header) == 1002


class TestKernelsCommand:
    def test_series_and_quadrature_columns_agree(self, tmp_path):
        out = tmp_path / "o"
        code = main(["kernels", "--delta", "0.75", "--t", "1", "--x", "1,2", "--out", str(out)])
        assert code == 0
        header, rows = _csv_rows(out / "kernels.csv")
        assert header == ["x", "Q_series", "Q_quadrature", "dQ_series", "dQ_quadrature"]
        for row in rows:
            assert float(row[1]) == pytest.approx(float(row[2]), rel=1e-7)
            assert float(row[3]) == pytest.approx(float(row[4]), rel=1e-7)


class TestPotentialsCommand:
    def test_columns_per_exponent(self, tmp_path):
        out = tmp_path / "o"
        code = main(["potentials", "--alphas", "0.5,1.5", "--x", "1,2", "--out", str(out)])
        assert code == 0
        header, rows = _csv_rows(out / "potentials.csv")
        assert header == ["x", "b_alpha0.5", "b_alpha1.5"]
        assert len(rows) == 2
        script = _read(out / "potentials.gp").decode()
        assert "set logscale xy" in script


class TestSelftestCommand:
    def test_single_case_runs_clean(self, tmp_path, capsys):
        out = tmp_path / "o"
        code = main(["selftest", "--cases", "AC12", "--out", str(out)])
        assert code == 0
        header, rows = _csv_rows(out / "selftest.csv")
        assert rows[0][0] == "AC12"
        assert rows[0][1] == "pass"

    def test_unknown_case_is_validation_error(self, tmp_path):
        assert main(["selftest", "--cases", "AC99", "--out", str(tmp_path / "o")]) == 1


class TestTailFit:
    def test_diffusion_tail_window_emits_loglog_script(self, tmp_path):
        out = tmp_path / "o"
        code = main(["diffusion", "--delta", "0.5", "--times", "0.1",
                     "--n", str(1 << 20), "--dx", "0.01",
                     "--tail-window", "50,150", "--out", str(out)])
        assert code == 0
        env = json.loads((out / "diffusion.json").read_text())
        assert env["results"]["tail_slope"] == pytest.approx(-1.5, abs=0.05)
        script = (out / "diffusion_tail.gp").read_text()
        assert "set logscale xy" in script
        assert "fitted_slope" in script


class TestIoHelpers:
    def test_csv_rejects_ragged_rows(self, tmp_path):
        from selfsim.errors import IoError

        with pytest.raises(IoError):
            write_csv_atomic(str(tmp_path / "t.csv"), ["a", "b"], [(1.0,)])

    def test_empty_rows_give_header_only_csv(self, tmp_path):
        write_csv_atomic(str(tmp_path / "t.csv"), ["x", "value"], [])
        assert (tmp_path / "t.csv").read_text() == "x,value\n"

    def test_plot_script_references_csv(self, tmp_path):
        env = ResultEnvelope("demo", {})
        emit_plot_script(env, str(tmp_path), "demo", "demo.csv", ["y1", "y2"], loglog=True,
                         annotations={"slope": -1.5})
        text = (tmp_path / "demo.gp").read_text()
        assert "'demo.csv' using 1:2" in text
        assert "'demo.csv' using 1:3" in text
        assert "# slope = -1.5" in text
