"""Command-line surface: payload shapes, exit codes, determinism, reports."""

import io
import json
from contextlib import redirect_stderr, redirect_stdout

from qsuper.cli import main, run_sweep
from qsuper import report


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(argv)
    return code, out.getvalue(), err.getvalue()


class TestValueCommands:
    def test_supernomial_forms(self):
        code, out, _ = run(["supernomial", "--L", "1,1", "--a", "-1/2", "--form", "q"])
        assert code == 0
        payload = json.loads(out)
        assert payload["schema"] == 1
        assert payload["a"] == {"num": -1, "den": 2}
        assert payload["terms"] == [[0, 1, "1"], [1, 1, "1"]]

    def test_partitions_listing(self):
        code, out, _ = run(["partitions", "--L", "1,1", "--a", "1", "--list"])
        assert code == 0
        assert json.loads(out)["partitions"] == [[1], [2]]

    def test_partitions_genfun(self):
        code, out, _ = run(["partitions", "--L", "2", "--a", "2"])
        assert code == 0
        assert json.loads(out)["terms"] == [[4, 1, "1"]]

    def test_partitions_budget_exit(self):
        code, _, err = run(["partitions", "--L", "6", "--a", "9", "--budget", "8"])
        assert code == 3

    def test_ts_decomp(self):
        code, out, _ = run(["ts-decomp", "--p", "7", "--k", "2"])
        assert code == 0
        payload = json.loads(out)
        assert payload["nu"] == [2, 0]
        assert payload["takahashi_lengths"] == [1, 2, 3, 4]

    def test_series_string(self):
        code, out, _ = run(
            ["series", "--what", "string", "--N", "2", "--Lbar", "1",
             "--sigma", "0", "--a", "1", "--order", "8"]
        )
        assert code == 0
        assert json.loads(out)["what"] == "string"

    def test_series_virasoro(self):
        code, out, _ = run(
            ["series", "--what", "virasoro", "--p", "7", "--k", "2",
             "--N", "1", "--a", "1", "--b", "2", "--order", "10"]
        )
        assert code == 0
        terms = json.loads(out)["terms"]
        assert terms[0] == [0, 1, "1"]

    def test_matprod(self):
        code, out, _ = run(["matprod", "--p", "6", "--L", "1,0,1", "--a", "2", "--b", "4"])
        assert code == 0
        assert json.loads(out)["equal"] is True


class TestExitCodes:
    def test_usage_error(self):
        code, _, _ = run(["no-such-command"])
        assert code == 2

    def test_parameter_error(self):
        # label parity violation maps to a usage-style exit
        code, _, err = run(
            ["identity-check", "--p", "5", "--k", "1", "--N", "2",
             "--a", "1", "--b", "3", "--L", "1,1"]
        )
        assert code == 2 and "parameter error" in err

    def test_identity_success(self):
        code, out, _ = run(
            ["identity-check", "--p", "7", "--k", "2", "--N", "1",
             "--a", "1", "--b", "2", "--L", "3", "--no-timing"]
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["equal"] is True
        assert set(payload) >= {"lhs", "rhs", "equal", "delta", "elapsed"}
        assert payload["elapsed"] == 0.0


class TestDeterminism:
    def test_identity_check_bytes(self):
        argv = ["identity-check", "--p", "5", "--k", "1", "--N", "1",
                "--a", "1", "--b", "2", "--L", "1", "--no-timing"]
        assert run(argv) == run(argv)

    def test_env_flag(self, monkeypatch):
        monkeypatch.setenv("QSUPER_DETERMINISTIC", "1")
        argv = ["identity-check", "--p", "5", "--k", "1", "--N", "1",
                "--a", "1", "--b", "2", "--L", "1"]
        c1, o1, _ = run(argv)
        c2, o2, _ = run(argv)
        assert c1 == c2 == 0 and o1 == o2


class TestSweep:
    CONFIG = {"pk": [[5, 1], [7, 2]], "sum_l_max": 2}

    def test_report_files(self, tmp_path):
        cfg = tmp_path / "grid.json"
        cfg.write_text(json.dumps(self.CONFIG))
        out_path = tmp_path / "report.json"
        code, _, err = run(["sweep", "--config", str(cfg), "--out", str(out_path)])
        assert code == 0
        payload = json.loads(out_path.read_text())
        assert payload["failures"] == 0 and payload["points"] > 0
        figure = tmp_path / "report.png"
        assert figure.exists() and figure.stat().st_size > 1000

    def test_tsv_report(self, tmp_path):
        cfg = tmp_path / "grid.json"
        cfg.write_text(json.dumps({"pk": [[5, 1]], "sum_l_max": 1}))
        out_path = tmp_path / "report.tsv"
        code, _, _ = run(["sweep", "--config", str(cfg), "--out", str(out_path),
                          "--format", "tsv"])
        assert code == 0
        body = out_path.read_text()
        assert body.splitlines()[0] == "\t".join(report.TSV_COLUMNS)
        assert (tmp_path / "report.png").exists()

    def test_worker_count_independence(self):
        one = run_sweep(self.CONFIG, workers=1, deterministic=True)
        two = run_sweep(self.CONFIG, workers=2, deterministic=True)
        assert report.render_json(one) == report.render_json(two)
        assert report.render_tsv(one) == report.render_tsv(two)


class TestSelftest:
    def test_quick_profile(self):
        code, out, err = run(["selftest", "--quick", "--no-timing"])
        assert code == 0
        payload = json.loads(out)
        assert payload["passed"] is True
        names = [c["name"] for c in payload["criteria"]]
        assert len(names) == 13
        assert all("PASS" in line for line in err.strip().splitlines())
