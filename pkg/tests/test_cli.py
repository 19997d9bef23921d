import csv
import json
from pathlib import Path

import pytest

from cidiff.cli import EXIT_IO, EXIT_OK, EXIT_TIMEOUT, EXIT_USAGE, main

FIXTURES = Path(__file__).parent / "fixtures"
SMALL_PASS = str(FIXTURES / "regression_small_pass.log")
SMALL_FAIL = str(FIXTURES / "regression_small_fail.log")


def run(argv):
    try:
        return main(argv)
    except SystemExit as exc:  # argparse-driven usage failures
        return exc.code


class TestDiffCommand:
    def test_json_action_multiset(self, capsys):
        assert run(["diff", SMALL_PASS, SMALL_FAIL, "--format", "json"]) == EXIT_OK
        doc = json.loads(capsys.readouterr().out)
        kinds = {}
        for action in doc["actions"]:
            kinds[action["kind"]] = kinds.get(action["kind"], 0) + 1
        assert kinds == {
            "unchanged": 4,
            "updated": 1,
            "moved-unchanged": 1,
            "added": 4,
            "deleted": 2,
        }

    def test_lcs_identical_files(self, tmp_path, capsys):
        f = tmp_path / "same.log"
        f.write_text("a\nb\n")
        assert run(["diff", str(f), str(f), "--algorithm", "lcs", "--format", "json"]) == EXIT_OK
        doc = json.loads(capsys.readouterr().out)
        assert all(a["kind"] == "unchanged" for a in doc["actions"])

    def test_text_markers(self, capsys):
        assert run(["diff", SMALL_PASS, SMALL_FAIL]) == EXIT_OK
        out = capsys.readouterr().out
        assert "U " in out and "+ " in out and "- " in out and "M " in out

    def test_usage_error_on_bad_threshold(self, capsys):
        assert run(["diff", SMALL_PASS, SMALL_FAIL, "--line-sim", "1.1"]) == EXIT_USAGE

    def test_unreadable_input(self, tmp_path):
        assert run(["diff", str(tmp_path / "nope.log"), SMALL_FAIL]) == EXIT_IO

    def test_keyword_algorithm(self, capsys):
        assert (
            run(["diff", SMALL_PASS, SMALL_FAIL, "--algorithm", "keyword", "--format", "json"])
            == EXIT_OK
        )
        flagged = json.loads(capsys.readouterr().out)
        assert 5 in flagged and 9 in flagged  # failure / Error lines

    def test_keyword_override(self, capsys):
        run(["diff", SMALL_PASS, SMALL_FAIL, "--algorithm", "keyword", "--keywords", "guava",
             "--format", "json"])
        assert json.loads(capsys.readouterr().out) == []

    def test_bigram_algorithm(self, capsys):
        assert (
            run(["diff", SMALL_PASS, SMALL_FAIL, "--algorithm", "bigram", "--format", "json"])
            == EXIT_OK
        )
        flagged = json.loads(capsys.readouterr().out)
        assert flagged == sorted(flagged)

    def test_output_file(self, tmp_path):
        out = tmp_path / "script.json"
        run(["diff", SMALL_PASS, SMALL_FAIL, "--format", "json", "--output", str(out)])
        assert json.loads(out.read_text())["algorithm"] == "cidiff"

    def test_keep_timestamps(self, tmp_path, capsys):
        a = tmp_path / "a.log"
        b = tmp_path / "b.log"
        a.write_text("2023-01-01T00:00:00Z same\n")
        b.write_text("2024-01-01T00:00:00Z same\n")
        run(["diff", str(a), str(b), "--format", "json"])
        doc = json.loads(capsys.readouterr().out)
        assert doc["actions"][0]["kind"] == "unchanged"
        run(["diff", str(a), str(b), "--format", "json", "--keep-timestamps"])
        doc = json.loads(capsys.readouterr().out)
        assert all(a["kind"] != "unchanged" for a in doc["actions"])


class TestGenEvalSweep:
    def test_gen_writes_cases(self, tmp_path, capsys):
        root = tmp_path / "corpus"
        assert run(["gen", str(root), "--count", "3", "--size", "50", "--seed", "5"]) == EXIT_OK
        dirs = sorted(p.name for p in root.iterdir())
        assert len(dirs) == 3
        for d in dirs:
            assert (root / d / "pass.log").exists()
            assert (root / d / "fail.log").exists()
            assert len((root / d / "pass.log").read_text().splitlines()) == 50

    def test_gen_count_zero(self, tmp_path):
        root = tmp_path / "empty"
        assert run(["gen", str(root), "--count", "0"]) == EXIT_OK
        assert root.is_dir() and list(root.iterdir()) == []

    def test_gen_deterministic(self, tmp_path):
        r1, r2 = tmp_path / "one", tmp_path / "two"
        run(["gen", str(r1), "--count", "2", "--size", "40", "--seed", "9"])
        run(["gen", str(r2), "--count", "2", "--size", "40", "--seed", "9"])
        for case in ("case-00000009", "case-00000010"):
            for name in ("pass.log", "fail.log"):
                assert (r1 / case / name).read_bytes() == (r2 / case / name).read_bytes()

    def test_eval_writes_csv(self, tmp_path, capsys):
        root = tmp_path / "corpus"
        run(["gen", str(root), "--count", "3", "--size", "60", "--seed", "1"])
        out = tmp_path / "metrics.csv"
        assert run(["eval", str(root), "--output", str(out)]) == EXIT_OK
        rows = list(csv.reader(out.open()))
        assert len(rows) == 1 + 3 * 2  # header + cases x algorithms

    def test_eval_missing_root(self, tmp_path):
        assert run(["eval", str(tmp_path / "nothing"), "--output", str(tmp_path / "m.csv")]) == EXIT_IO

    def test_eval_timeout_column(self, tmp_path):
        root = tmp_path / "corpus"
        run(["gen", str(root), "--count", "1", "--size", "4000", "--seed", "2"])
        out = tmp_path / "m.csv"
        assert run(["eval", str(root), "--output", str(out), "--timeout", "0.0001"]) == EXIT_OK
        rows = list(csv.reader(out.open()))
        timed_out_col = rows[0].index("timed_out")
        runtime_col = rows[0].index("runtime_ms")
        assert all(r[timed_out_col] == "true" for r in rows[1:])
        assert all(r[runtime_col] == "-1.000000" for r in rows[1:])

    def test_sweep_default_grid(self, tmp_path):
        root = tmp_path / "corpus"
        run(["gen", str(root), "--count", "2", "--size", "80", "--seed", "3",
             "--insert-rate", "0.2"])
        out = tmp_path / "sweep.csv"
        assert run(["sweep", str(root), "--output", str(out)]) == EXIT_OK
        rows = list(csv.reader(out.open()))
        assert len(rows) == 1 + 121

    def test_sweep_step(self, tmp_path):
        root = tmp_path / "corpus"
        run(["gen", str(root), "--count", "1", "--size", "80", "--seed", "4",
             "--insert-rate", "0.2"])
        out = tmp_path / "sweep.csv"
        assert run(["sweep", str(root), "--step", "0.5", "--output", str(out)]) == EXIT_OK
        assert len(list(csv.reader(out.open()))) == 1 + 9

    def test_sweep_unannotated_exits_2(self, tmp_path):
        root = tmp_path / "corpus"
        case = root / "case-0"
        case.mkdir(parents=True)
        (case / "pass.log").write_text("a\n")
        (case / "fail.log").write_text("a\n")
        assert run(["sweep", str(root)]) == EXIT_IO

    def test_rerun_eval_identical_modulo_runtime(self, tmp_path):
        root = tmp_path / "corpus"
        run(["gen", str(root), "--count", "2", "--size", "70", "--seed", "8"])
        out1, out2 = tmp_path / "m1.csv", tmp_path / "m2.csv"
        run(["eval", str(root), "--output", str(out1)])
        run(["eval", str(root), "--output", str(out2)])
        rows1 = list(csv.reader(out1.open()))
        rows2 = list(csv.reader(out2.open()))
        runtime_col = rows1[0].index("runtime_ms")
        for a, b in zip(rows1, rows2):
            del a[runtime_col], b[runtime_col]
        assert rows1 == rows2


class TestUsage:
    def test_unknown_algorithm_rejected(self):
        assert run(["diff", SMALL_PASS, SMALL_FAIL, "--algorithm", "wat"]) == EXIT_USAGE

    def test_missing_subcommand(self):
        assert run([]) == EXIT_USAGE

    def test_bad_step(self, tmp_path):
        assert run(["sweep", str(tmp_path), "--step", "1.5"]) == EXIT_USAGE
