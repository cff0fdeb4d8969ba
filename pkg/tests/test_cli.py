import io
import json
import math
import sys
from contextlib import redirect_stdout

import pytest

from normclust.cli import main


def run_cli(argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        rc = main(argv)
    return rc, buf.getvalue()


@pytest.fixture()
def square_csv(tmp_path):
    path = tmp_path / "square.csv"
    path.write_text("x,y\n0,0\n1,0\n1,1\n0,1\n")
    return str(path)


@pytest.fixture()
def twoarc_json(tmp_path):
    path = tmp_path / "twoarc.json"
    path.write_text(json.dumps({"kind": "two_arc", "center": 10.0, "radius": 5 * math.sqrt(13)}))
    return str(path)


class TestSubcommands:
    def test_cluster2_square(self, square_csv):
        rc, out = run_cli(["cluster2", "--points", square_csv, "--norm", "euclidean", "--json"])
        assert rc == 0
        doc = json.loads(out)
        assert doc["schema"] == 1
        assert doc["result"]["d_star"] == pytest.approx(1.0)

    def test_cluster2c_infeasible_exit_1(self, square_csv):
        rc, out = run_cli([
            "cluster2c", "--points", square_csv, "--norm", "euclidean",
            "--d1", "1.0", "--d2", "0.9", "--json",
        ])
        assert rc == 1
        assert json.loads(out)["result"]["feasible"] is False

    def test_cluster2c_counterexample_exit_1(self, tmp_path, twoarc_json, twoarc_counterexample):
        ce = twoarc_counterexample
        pts = tmp_path / "ce.csv"
        pts.write_text(
            "\n".join(
                f"{float(x)!r},{float(y)!r}"
                for x, y in (ce["p"], ce["q"], ce["r"], ce["s"])
            )
            + "\n"
        )
        rc, out = run_cli([
            "cluster2c", "--points", str(pts), "--norm", twoarc_json,
            "--d1", "1.1", "--d2", "1.0", "--json",
        ])
        assert rc == 1
        assert json.loads(out)["result"]["feasible"] is False

    def test_input_error_exit_2(self, tmp_path, capsys):
        missing = str(tmp_path / "nope.csv")
        rc, _ = run_cli(["diameter", "--points", missing])
        assert rc == 2

    def test_bad_norm_file_exit_2(self, square_csv, tmp_path):
        bad = tmp_path / "norm.json"
        bad.write_text('{"kind": "mystery"}')
        rc, _ = run_cli(["diameter", "--points", square_csv, "--norm", str(bad)])
        assert rc == 2

    def test_separate_invariants(self, tmp_path):
        a = tmp_path / "a.csv"
        a.write_text("0,0\n1,0\n0.5,0.1\n")
        b = tmp_path / "b.csv"
        b.write_text("-0.35,0.5\n0.6,0.55\n0.15,-0.05\n")
        rc, out = run_cli([
            "separate", "--a", str(a), "--b", str(b), "--norm", "l1", "--json", "--verify",
        ])
        assert rc == 0
        doc = json.loads(out)
        inv = doc["result"]["invariants"]
        assert all(inv.values())

    def test_cluster3(self, tmp_path):
        pts = tmp_path / "p.csv"
        pts.write_text("0,0\n0.1,0\n10,0\n10.1,0\n5,8\n5.1,8\n")
        rc, out = run_cli(["cluster3", "--points", str(pts), "--json"])
        assert rc == 0
        assert json.loads(out)["result"]["d_star"] == pytest.approx(0.1)
        rc, out = run_cli(["cluster3", "--points", str(pts), "--d", "0.05", "--json"])
        assert rc == 1

    def test_clusterk(self, square_csv):
        rc, out = run_cli([
            "clusterk", "--points", square_csv, "--k", "2",
            "--objective", "max", "--measure", "diameter", "--json",
        ])
        assert rc == 0
        assert json.loads(out)["result"]["value"] == pytest.approx(1.0)

    def test_ballhull_query_delete(self, square_csv):
        rc, out = run_cli([
            "ballhull", "--points", square_csv, "--d", "1.5",
            "--query", "5,5", "--delete", "2", "--json",
        ])
        assert rc == 0
        doc = json.loads(out)
        assert doc["result"]["deleted"] == [1.0, 1.0]
        assert len(doc["result"]["vertices"]) == 3

    def test_mineball(self, square_csv):
        rc, out = run_cli(["mineball", "--points", square_csv, "--norm", "linf", "--json"])
        assert rc == 0
        assert json.loads(out)["result"]["radius"] == pytest.approx(0.5, abs=1e-7)

    def test_verify_flag(self, square_csv):
        rc, _ = run_cli(["cluster2", "--points", square_csv, "--verify", "--json"])
        assert rc == 0


class TestDeterminism:
    def test_byte_identical_json(self, square_csv, twoarc_json):
        cases = [
            ["cluster2", "--points", square_csv, "--json", "--seed", "7"],
            ["cluster3", "--points", square_csv, "--json", "--seed", "7"],
            ["mineball", "--points", square_csv, "--norm", twoarc_json, "--json"],
            ["diameter", "--points", square_csv, "--norm", "l1", "--json"],
        ]
        for argv in cases:
            rc1, out1 = run_cli(argv)
            rc2, out2 = run_cli(argv)
            assert rc1 == rc2 == 0
            assert out1 == out2


class TestSvg:
    def test_empty_scene_valid(self, tmp_path):
        from normclust.cli import Scene, emit_svg

        out = tmp_path / "empty.svg"
        emit_svg(Scene(), str(out))
        text = out.read_text()
        assert text.startswith("<svg") and text.rstrip().endswith("</svg>")

    def test_twoarc_counterexample_scene_counts(self, tmp_path, twoarc_counterexample):
        ce = twoarc_counterexample
        pts = tmp_path / "ce.csv"
        pts.write_text(
            "\n".join(f"{x},{y}" for x, y in (ce["p"], ce["q"], ce["r"], ce["s"])) + "\n"
        )
        norm = tmp_path / "norm.json"
        norm.write_text(json.dumps({"kind": "two_arc", "center": 10.0, "radius": 5 * math.sqrt(13)}))
        out = tmp_path / "ce.svg"
        rc, _ = run_cli([
            "plot", "--points", str(pts), "--norm", str(norm),
            "--sphere", "0,0,1", "--sphere=-9.81,6.24,1.1",
            "--out", str(out),
        ])
        assert rc == 0
        text = out.read_text()
        assert text.count('class="pt"') == 4
        assert text.count('class="sphere"') == 2

    def test_separation_line_drawn(self, tmp_path):
        a = tmp_path / "a.csv"
        a.write_text("0,0\n1,0\n")
        b = tmp_path / "b.csv"
        b.write_text("0,3\n1,3\n")
        out = tmp_path / "sep.svg"
        rc, _ = run_cli([
            "plot", "--points", str(a), "--b", str(b), "--out", str(out),
        ])
        assert rc == 0
        assert out.read_text().count('class="line"') == 1
