from __future__ import annotations

import csv
import io
import json
import math

import pytest

from orientedhg import analysis, cli
from orientedhg import combinatorics as cb
from oracles import TOY_REACTIONS


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


def error_of(err):
    return json.loads(err.strip().splitlines()[-1])


@pytest.fixture
def toy_file(tmp_path):
    path = tmp_path / "toy.txt"
    path.write_text(TOY_REACTIONS, encoding="utf-8")
    return path


class TestCount:
    def test_n4(self, capsys):
        doc = run_json(capsys, "count", "--n", "4")
        assert doc["total_edges"] == "25"
        assert doc["impossible_pairs"] == "171"
        assert doc["per_size"] == {"2": "6", "3": "12", "4": "7"}

    def test_blocks_sum(self, capsys):
        doc = run_json(capsys, "count", "--n", "10", "--blocks")
        assert sum(int(v) for v in doc["per_block"].values()) == 28501

    def test_csv(self, capsys, tmp_path):
        out = tmp_path / "c.csv"
        code, _, _ = run(capsys, "count", "--n", "3", "--format", "csv", "--output", str(out))
        assert code == 0
        rows = list(csv.reader(io.StringIO(out.read_text())))
        assert rows[0] == ["kind", "index", "count"]
        assert ["total_edges", "", "6"] in rows

    def test_huge_n_is_exact(self, capsys):
        doc = run_json(capsys, "count", "--n", "200")
        assert int(doc["total_edges"]) == cb.total_edges(200)

    def test_domain_error(self, capsys):
        code, _, err = run(capsys, "count", "--n", "1")
        assert code == 4 and error_of(err)["error"] == "domain"


class TestSample:
    def test_p_bounds(self, capsys):
        doc = run_json(capsys, "sample", "--n", "6", "--p", "0", "--count", "3")
        assert [r["edges"] for r in doc["replicates"]] == [0, 0, 0]
        doc = run_json(capsys, "sample", "--n", "6", "--p", "1")
        assert doc["replicates"][0]["edges"] == 301
        assert doc["replicates"][0]["degree_sum"] == 6 * cb.per_vertex_total(6)

    def test_seed_reproducible(self, capsys):
        args = ("sample", "--n", "7", "--p", "0.2", "--count", "4", "--seed", "99")
        assert run_json(capsys, *args) == run_json(capsys, *args)
        other = run_json(capsys, "sample", "--n", "7", "--p", "0.2", "--count", "4", "--seed", "98")
        assert other["replicates"] != run_json(capsys, *args)["replicates"]

    def test_env_seed(self, capsys, monkeypatch):
        explicit = run_json(capsys, "sample", "--n", "6", "--p", "0.3", "--seed", "5")
        monkeypatch.setenv(cli.SEED_ENV, "5")
        assert run_json(capsys, "sample", "--n", "6", "--p", "0.3") == explicit
        monkeypatch.setenv(cli.SEED_ENV, "five")
        code, _, err = run(capsys, "sample", "--n", "6", "--p", "0.3")
        assert code == 2 and error_of(err)["error"] == "usage"

    def test_default_seed(self, capsys, monkeypatch):
        monkeypatch.delenv(cli.SEED_ENV, raising=False)
        doc = run_json(capsys, "sample", "--n", "5", "--p", "0.5")
        assert doc["seed"] == cli.DEFAULT_SEED

    def test_jobs_do_not_change_output(self, capsys):
        base = ("sample", "--n", "7", "--p", "0.3", "--count", "6", "--seed", "3")
        assert run_json(capsys, *base, "--jobs", "2") == run_json(capsys, *base)

    def test_strategy_and_output_dir(self, capsys, tmp_path):
        doc = run_json(
            capsys, "sample", "--n", "6", "--p", "0.3", "--count", "2",
            "--strategy", "by_size", "--output-dir", str(tmp_path / "out"),
        )
        files = sorted((tmp_path / "out").iterdir())
        assert [f.name for f in files] == ["sample_00000.json", "sample_00001.json"]
        stored = json.loads(files[0].read_text())
        assert len(stored["edges"]) == doc["replicates"][0]["edges"]

    def test_family(self, capsys):
        doc = run_json(capsys, "sample", "--n", "8", "--alpha", "2", "--beta", "3")
        assert doc["p"] == pytest.approx(64 / 3**8)

    @pytest.mark.parametrize(
        "argv, code",
        [
            (("sample", "--n", "6"), 2),
            (("sample", "--n", "6", "--p", "0.3", "--alpha", "1"), 2),
            (("sample", "--n", "6", "--alpha", "1"), 2),
            (("sample", "--n", "6", "--p", "1.5"), 4),
            (("sample", "--n", "6", "--p", "0.5", "--count", "0"), 2),
            (("sample", "--n", "60", "--p", "1"), 4),
        ],
    )
    def test_errors(self, capsys, argv, code):
        assert run(capsys, *argv)[0] == code


class TestCurves:
    def fits(self, capsys, *argv):
        return run_json(capsys, "curves", "--format", "json", *argv)["fits"]

    @pytest.mark.parametrize("alpha", [-1, 0, 1, 2])
    def test_beta3_slopes(self, capsys, alpha):
        fits = self.fits(
            capsys, "--alpha", str(alpha), "--beta", "3",
            "--n-min", "1000", "--n-max", "100000", "--points", "40", "--log-spaced",
        )
        assert fits["slope_ln_ER_vs_ln_n"] == pytest.approx(alpha, abs=0.05)

    def test_beta1_slope(self, capsys):
        fits = self.fits(capsys, "--alpha", "0", "--beta", "1", "--n-min", "1000",
                         "--n-max", "100000", "--points", "40")
        assert fits["slope_ln_ER_vs_n"] == pytest.approx(math.log(3), abs=0.01)

    def test_size_slopes(self, capsys):
        fits = self.fits(
            capsys, "--alpha", "-2", "--beta", "1", "--n-min", "1000", "--n-max", "100000",
            "--points", "30", "--log-spaced", "--sizes", "2,3,4,5",
        )
        for s in range(2, 6):
            assert fits[f"slope_ln_ER_{s}_vs_ln_n"] == pytest.approx(s - 2, abs=0.05)

    def test_csv_columns(self, capsys):
        code, out, err = run(capsys, "curves", "--alpha", "2", "--beta", "3", "--n-max", "10",
                             "--sizes", "3", "--fit")
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(out)))
        assert [int(r["n"]) for r in rows] == list(range(2, 11))
        assert rows[0]["ln_ER_3"] == "-inf"
        assert float(rows[-1]["P_3"]) == pytest.approx(cb.size_count(10, 3) / cb.total_edges(10))
        assert "slope_ln_ER_vs_ln_n" in json.loads(err)

    def test_bad_grid(self, capsys):
        assert run(capsys, "curves", "--alpha", "1", "--beta", "3", "--n-min", "1")[0] == 2


class TestExtrema:
    def test_n_max(self, capsys):
        doc = run_json(capsys, "extrema", "--n-max", "50", "2")
        assert doc["variable"] == "n_max" and doc["integer_value"] == 76
        assert abs(doc["residual"]) <= 1e-9

    def test_s_max(self, capsys):
        doc = run_json(capsys, "extrema", "--s-max", "100")
        assert doc["integer_value"] == 67 and abs(doc["residual"]) <= 1e-9

    def test_no_root(self, capsys):
        code, _, err = run(capsys, "extrema", "--n-max", "10", "-100")
        assert code == 5 and error_of(err)["error"] == "no_root"

    @pytest.mark.parametrize(
        "argv",
        [("extrema",), ("extrema", "--s-max", "100", "--n-max", "5", "2"),
         ("extrema", "--n-max", "2.5", "1")],
    )
    def test_usage(self, capsys, argv):
        assert run(capsys, *argv)[0] == 2


class TestIngest:
    def test_toy(self, capsys, toy_file, tmp_path):
        doc = run_json(
            capsys, "ingest", str(toy_file),
            "--hypergraph", str(tmp_path / "g.json"), "--matrix", str(tmp_path / "m.json"),
        )
        assert doc["ratio"] == pytest.approx(4 / 3)
        assert doc["size"] == 12 and sum(doc["degree_sequence"]) == 12
        assert doc["bounds"] == [0, 76]
        assert doc["size_histogram"] == {"2": 1, "3": 2, "4": 1}
        matrix = json.loads((tmp_path / "m.json").read_text())
        assert matrix["counts"]["impossible_pairs_convention"] == 171
        again = run_json(capsys, "ingest", str(tmp_path / "g.json"))
        assert again["edges"] == 4

    def test_matrix_csv(self, capsys, toy_file, tmp_path):
        run_json(capsys, "ingest", str(toy_file), "--matrix", str(tmp_path / "m.csv"), "--dense")
        assert len((tmp_path / "m.csv").read_text().splitlines()) == 1 + 14 * 14

    def test_autocatalytic(self, capsys, tmp_path):
        path = tmp_path / "auto.txt"
        path.write_text("A + B -> B + C\n", encoding="utf-8")
        code, _, err = run(capsys, "ingest", str(path))
        assert code == 3 and error_of(err)["error"] == "input"
        doc = run_json(capsys, "ingest", str(path), "--policy", "split")
        assert doc["intermediates"] == ["Z_0"] and doc["edges"] == 2 and doc["n"] == 4

    def test_syntax_error(self, capsys, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("A -> B\nA + -> C\n", encoding="utf-8")
        code, _, err = run(capsys, "ingest", str(path))
        assert code == 3
        assert "line 2, column 5" in error_of(err)["message"]

    def test_missing_file(self, capsys, tmp_path):
        assert run(capsys, "ingest", str(tmp_path / "nope.txt"))[0] == 3


class TestTest:
    def test_sampled_passes(self, capsys):
        doc = run_json(capsys, "test", "--sampled", "--n", "8", "--p", "0.3", "--seed", "1")
        assert doc["verdict"] == analysis.CONSISTENT

    def test_replicates(self, capsys):
        doc = run_json(capsys, "test", "--sampled", "--n", "7", "--p", "0.3",
                       "--replicates", "20", "--jobs", "2")
        assert doc["replicates"] == 20 and doc["rejection_rate"] <= 0.15

    def test_adversarial_file_fails(self, capsys, tmp_path):
        from orientedhg import reaction_io as rio
        from orientedhg.core import OrientedHypergraph

        full = OrientedHypergraph.complete(6)
        g = OrientedHypergraph.from_masks(
            6, [(a, b) for a, b in full.edge_masks() if (a | b).bit_count() != 2]
        )
        rio.write_hypergraph(g, tmp_path / "adv.json")
        doc = run_json(capsys, "test", str(tmp_path / "adv.json"))
        assert doc["verdict"] == analysis.REJECTED

    def test_text_format(self, capsys, toy_file):
        code, out, _ = run(capsys, "test", str(toy_file), "--format", "text")
        assert code == 0 and "1.33333" in out

    def test_usage(self, capsys, toy_file):
        assert run(capsys, "test")[0] == 2
        assert run(capsys, "test", "--sampled", "--p", "0.3")[0] == 2
        assert run(capsys, "test", str(toy_file), "--p", "2")[0] == 4


def test_unknown_subcommand(capsys):
    code, _, err = run(capsys, "frobnicate")
    assert code == 2 and error_of(err)["error"] == "usage"


def test_module_entry_point():
    import subprocess
    import sys

    proc = subprocess.run(
        [sys.executable, "-m", "orientedhg", "count", "--n", "3"], capture_output=True, text=True
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["total_edges"] == "6"
