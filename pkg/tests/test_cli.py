"""Tests for app/cli.py - Command-line harness"""

import io
import json

import pytest

from app.cli import build_parser, main

FIXTURE_ARGS = ["--data", "paper-example", "--test-fraction", "0", "--repeats", "0"]


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    status = main(argv, out=out, err=err)
    return status, out.getvalue(), err.getvalue()


class TestSingleExperiment:
    def test_comparison_table(self):
        status, out, _ = run(FIXTURE_ARGS)
        assert status == 0
        assert "180.00%" in out
        assert "100.00%" in out
        rules_line = next(line for line in out.splitlines() if " RULES " in line)
        rrules_line = next(line for line in out.splitlines() if " RRULES " in line)
        assert rules_line.split()[2] == "7"
        assert rrules_line.split()[2] == "4"

    def test_dump_rules(self):
        status, out, _ = run(FIXTURE_ARGS + ["--algorithm", "rrules", "--dump-rules"])
        assert status == 0
        assert "[0] IF A is A1 THEN 0  (nc=1, inconsistent=false)" in out
        assert "[3] IF B is B2 AND C is C2 THEN 3  (nc=2, inconsistent=false)" in out
        assert "DEFAULT 0" in out

    def test_json_output(self):
        status, out, _ = run(FIXTURE_ARGS + ["--format", "json", "--dump-rules"])
        assert status == 0
        data = json.loads(out)
        assert [result["rules"]["algorithm"] for result in data["results"]] == ["rules", "rrules"]

    def test_csv_file_without_header(self, tmp_path):
        path = tmp_path / "toy.data"
        path.write_text("yes,x,p\nno,y,p\nyes,x,q\nno,y,q\n")
        status, out, _ = run(
            ["--data", str(path), "--no-header", "--class-column", "0", "--test-fraction", "0",
             "--repeats", "0", "--format", "csv"]
        )
        assert status == 0
        assert out.splitlines()[1].startswith("toy.data,rules,ok,2,")

    def test_split_with_seed(self):
        status, out, _ = run(["--data", "paper-example", "--seed", "4", "--repeats", "0"])
        assert status == 0
        assert "paper-example[seed=4]" in out
        assert "Test Acc." in out

    def test_verbose_logs_go_to_stderr(self):
        status, out, err = run(FIXTURE_ARGS + ["-v"])
        assert status == 0
        assert "Rules induced" in err
        assert "Rules induced" not in out


class TestInvalidInput:
    def test_missing_file(self):
        status, out, err = run(["--data", "no-such-file.csv"])
        assert status == 2
        assert out == ""
        assert err.startswith("rrules-bench: error:")

    def test_zero_bins(self):
        status, _, err = run(["--data", "paper-example", "--bins", "0"])
        assert status == 2
        assert "n_bins" in err

    def test_test_data_with_fraction(self):
        status, _, err = run(["--data", "paper-example", "--test-data", "t.csv", "--test-fraction", "0.2"])
        assert status == 2
        assert "mutually exclusive" in err

    def test_ragged_file(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("A,B,Class\nx,y,1\nx,1\n")
        status, _, err = run(["--data", str(path)])
        assert status == 2
        assert "line 3" in err

    def test_undecodable_file(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_bytes(b"A,Class\n\xff,x\nb,y\n")
        status, out, err = run(["--data", str(path), "--repeats", "0"])
        assert status == 2
        assert out == ""
        assert "UTF-8" in err

    def test_empty_column_name(self, tmp_path):
        path = tmp_path / "blank.csv"
        path.write_text("A,,Class\na,b,x\n")
        status, _, err = run(["--data", str(path)])
        assert status == 2
        assert "line 1" in err

    def test_data_and_suite_exclusive(self):
        with pytest.raises(SystemExit) as exc_info:
            build_parser().parse_args(["--data", "a", "--suite", "b"])
        assert exc_info.value.code == 2

    def test_source_required(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args([])


class TestSuite:
    def test_failed_rows_reported(self, tmp_path):
        manifest = tmp_path / "suite.jsonl"
        manifest.write_text(
            '{"data": "paper-example", "test_fraction": 0, "repeats": 0}\n'
            '{"data": "missing.csv", "repeats": 0}\n'
        )
        status, out, _ = run(["--suite", str(manifest)])
        assert status == 1
        assert "FAILED missing.csv" in out
        assert "180.00%" in out

    def test_empty_manifest(self, tmp_path):
        manifest = tmp_path / "empty.jsonl"
        manifest.write_text("# nothing yet\n")
        status, out, _ = run(["--suite", str(manifest)])
        assert status == 0
        assert out == "No experiments.\n"

    def test_invalid_manifest(self, tmp_path):
        manifest = tmp_path / "bad.jsonl"
        manifest.write_text("not json\n")
        status, _, err = run(["--suite", str(manifest)])
        assert status == 2
        assert "manifest line 1" in err

    def test_suite_rejects_test_data(self, tmp_path):
        manifest = tmp_path / "suite.jsonl"
        manifest.write_text("")
        status, _, _ = run(["--suite", str(manifest), "--test-data", "t.csv"])
        assert status == 2


class TestRepeatability:
    @pytest.mark.parametrize("output_format", ["table", "csv"])
    def test_split_run_is_byte_identical(self, output_format):
        argv = ["--data", "paper-example", "--seed", "7", "--repeats", "0", "--dump-rules",
                "--format", output_format]
        first, second = run(argv), run(argv)
        assert first[0] == second[0] == 0
        assert first[1] == second[1]

    def test_pooled_suite_is_byte_identical(self, tmp_path):
        (tmp_path / "toy.csv").write_text("A,B,Class\nx,p,yes\ny,p,no\nx,q,yes\ny,q,no\n")
        manifest = tmp_path / "suite.jsonl"
        manifest.write_text(
            "".join(
                f'{{"data": "{data}", "seed": {seed}, "test_fraction": {fraction}, "repeats": 0}}\n'
                for data, seed, fraction in [
                    ("paper-example", 1, 0.2),
                    ("toy.csv", 2, 0.25),
                    ("paper-example", 3, 0.4),
                    ("toy.csv", 1, 0),
                ]
            )
        )
        argv = ["--suite", str(manifest), "--jobs", "4"]
        first, second = run(argv), run(argv)
        assert first[0] == second[0]
        assert first[1] == second[1]
        assert "toy.csv[seed=2]" in first[1]
