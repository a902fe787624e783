from __future__ import annotations

import json
import subprocess
import sys

from qnr.cli import main
from qnr.io import read_cloud_csv


class TestComputeCommand:
    def test_algorithm_end_to_end(self, tmp_path, capsys):
        out = tmp_path / "cloud.csv"
        svg = tmp_path / "cloud.svg"
        jsn = tmp_path / "cloud.json"
        code = main(
            [
                "compute", "--gen", "a3", "--method", "algorithm",
                "--outer-iterations", "1", "--initial-samples", "64",
                "--seed", "3", "--out", str(out), "--svg", str(svg), "--json", str(jsn),
            ]
        )
        assert code == 0
        cloud = read_cloud_csv(out)
        assert len(cloud) >= 64
        assert svg.exists() and jsn.exists()
        doc = json.loads(jsn.read_text())
        assert doc["count"] == len(cloud) and doc["method"] == "algorithm"

    def test_sampling_row_count(self, tmp_path):
        out = tmp_path / "cloud.csv"
        code = main(
            ["compute", "--gen", "a3", "--method", "sampling", "--samples", "1000",
             "--out", str(out)]
        )
        assert code == 0
        assert len(read_cloud_csv(out)) == 1000

    def test_budget_duration_parsing(self, tmp_path):
        out = tmp_path / "cloud.csv"
        code = main(
            ["compute", "--gen", "a3", "--method", "sampling", "--budget", "100ms",
             "--out", str(out)]
        )
        assert code == 0
        assert len(read_cloud_csv(out)) > 0

    def test_missing_out_is_usage_error(self, capsys):
        code = main(["compute", "--gen", "a3", "--method", "sampling", "--samples", "10"])
        assert code == 1
        assert "usage" in capsys.readouterr().err.lower()

    def test_unknown_flag_is_usage_error(self):
        assert main(["compute", "--nonsense"]) == 1

    def test_gen_and_matrix_conflict(self, tmp_path):
        code = main(
            ["compute", "--gen", "a3", "--matrix", "x.json", "--method", "sampling",
             "--samples", "1", "--out", str(tmp_path / "c.csv")]
        )
        assert code == 1

    def test_parse_error_exit_code(self, tmp_path):
        bad = tmp_path / "bad.mtx"
        bad.write_text("not a matrix market file\n")
        code = main(
            ["compute", "--matrix", str(bad), "--split", "1", "--method", "sampling",
             "--samples", "1", "--out", str(tmp_path / "c.csv")]
        )
        assert code == 2

    def test_split_out_of_range_exit_code(self, tmp_path):
        doc = tmp_path / "m.json"
        doc.write_text('{"n": 2, "split": 0, "entries": [[1,0],[0,0],[0,0],[1,0]]}')
        code = main(
            ["compute", "--matrix", str(doc), "--method", "sampling", "--samples", "1",
             "--out", str(tmp_path / "c.csv")]
        )
        assert code == 2

    def test_dim_required_for_parametric(self, tmp_path):
        code = main(
            ["compute", "--gen", "a1", "--method", "sampling", "--samples", "1",
             "--out", str(tmp_path / "c.csv")]
        )
        assert code == 1

    def test_env_seed_overrides_flag(self, tmp_path, monkeypatch):
        out1, out2, out3 = (tmp_path / f"c{i}.csv" for i in range(3))
        args = ["compute", "--gen", "a3", "--method", "sampling", "--samples", "50"]
        main(args + ["--seed", "1", "--out", str(out1)])
        monkeypatch.setenv("QNR_SEED", "1")
        main(args + ["--seed", "999", "--out", str(out2)])
        monkeypatch.delenv("QNR_SEED")
        main(args + ["--seed", "999", "--out", str(out3)])
        assert out1.read_bytes() == out2.read_bytes()
        assert out1.read_bytes() != out3.read_bytes()


class TestConcentrationCommand:
    def test_report_shape(self, tmp_path):
        out = tmp_path / "report.json"
        code = main(
            ["concentration", "--gen", "a5", "--dims", "8,16", "--samples", "2000",
             "--eps", "0.25,0.5,1.0", "--seed", "4", "--out", str(out)]
        )
        assert code == 0
        doc = json.loads(out.read_text())
        assert doc["dims"] == [8, 16] and doc["n0"] == [4, 8]
        assert len(doc["exceedance"]) == 2 and len(doc["exceedance"][0]) == 3

    def test_single_dim_reports_no_fit(self, tmp_path):
        out = tmp_path / "report.json"
        code = main(
            ["concentration", "--gen", "a5", "--dims", "8", "--samples", "1000",
             "--eps", "0.5", "--out", str(out)]
        )
        assert code == 0
        assert json.loads(out.read_text())["fitted_decay"] is None

    def test_byte_identical_for_fixed_seed(self, tmp_path):
        outs = [tmp_path / "r1.json", tmp_path / "r2.json"]
        for out in outs:
            code = main(
                ["concentration", "--gen", "a5", "--dims", "8,16", "--samples", "1000",
                 "--eps", "0.5", "--seed", "11", "--out", str(out)]
            )
            assert code == 0
        assert outs[0].read_bytes() == outs[1].read_bytes()

    def test_svg_panels(self, tmp_path):
        out = tmp_path / "report.json"
        prefix = str(tmp_path / "panel_")
        code = main(
            ["concentration", "--gen", "a5", "--dims", "8,16", "--samples", "1000",
             "--eps", "0.5", "--out", str(out), "--svg-prefix", prefix]
        )
        assert code == 0
        assert (tmp_path / "panel_dim8.svg").exists()
        assert (tmp_path / "panel_dim16.svg").exists()

    def test_missing_out(self):
        assert main(["concentration", "--gen", "a5", "--dims", "8"]) == 1


def test_module_entrypoint_help():
    proc = subprocess.run(
        [sys.executable, "-m", "qnr", "--help"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert "compute" in proc.stdout and "concentration" in proc.stdout
