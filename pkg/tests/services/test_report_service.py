"""Tests for app/services/report_service.py"""

import csv
import io
import json

import pytest

from app.schemas.experiment import ExperimentConfig, ExperimentResult, SuiteReport
from app.services.experiment_service import ExperimentService
from app.services.report_service import (
    CSV_FIELDS,
    percent,
    ratio,
    render,
    render_csv,
    render_json,
    render_table,
    seconds,
)


def fixture_report(**overrides):
    values = {"data": "paper-example", "test_fraction": 0, "repeats": 0}
    values.update(overrides)
    return ExperimentService().run_suite([ExperimentConfig(**values)])


class TestFormatting:
    def test_percent(self):
        assert percent(1.8) == "180.00%"
        assert percent(None) == "-"

    def test_seconds(self):
        assert seconds(0.26) == "0.260s"
        assert seconds(None) == "-"

    def test_ratio(self):
        assert ratio(1.75) == "1.75"
        assert ratio(None) == "-"


class TestRenderTable:
    def test_train_only_comparison(self):
        text = render_table(fixture_report())
        header = text.splitlines()[0]
        assert "N Rules" in header
        assert "Test Acc." not in header
        rules_line = next(line for line in text.splitlines() if " RULES " in line)
        rrules_line = next(line for line in text.splitlines() if " RRULES " in line)
        assert "7" in rules_line.split() and "180.00%" in rules_line
        assert "4" in rrules_line.split() and "100.00%" in rrules_line
        assert "RULES / RRULES" in text
        assert "1.75" in text and "1.80" in text

    def test_test_accuracy_column(self):
        text = render_table(fixture_report(test_fraction=0.2))
        assert "Test Acc." in text.splitlines()[0]

    def test_failed_rows(self):
        report = SuiteReport(
            results=[ExperimentResult(dataset="d.csv", algorithm="rules", status="failed", error="boom")]
        )
        text = render_table(report)
        assert "FAILED" in text.splitlines()[2]
        assert "FAILED d.csv RULES: boom" in text

    def test_trace_lines(self):
        text = render_table(fixture_report(algorithm="rrules", verbosity=1))
        assert "# trace paper-example RRULES" in text
        assert (
            "n_c=2 pool=5 generated=8 empty=0 irrelevant=3 impure=2 created=3 remaining=0" in text
        )

    def test_rule_dump(self):
        text = render_table(fixture_report(algorithm="rrules", dump_rules=True))
        assert "# paper-example RRULES" in text
        assert "[3] IF B is B2 AND C is C2 THEN 3  (nc=2, inconsistent=false)" in text
        assert text.endswith("DEFAULT 0\n")

    def test_empty_report(self):
        assert render_table(SuiteReport()) == "No experiments.\n"


class TestRenderCsv:
    def test_records(self):
        rows = list(csv.reader(io.StringIO(render_csv(fixture_report()))))
        assert tuple(rows[0]) == CSV_FIELDS
        assert rows[1] == ["paper-example", "rules", "ok", "7", "1.0000", "1.8000", "", "", "", "true", ""]
        assert rows[2][:6] == ["paper-example", "rrules", "ok", "4", "1.0000", "1.0000"]

    def test_failed_record(self):
        report = SuiteReport(
            results=[ExperimentResult(dataset="d.csv", algorithm="rrules", status="failed", error="boom")]
        )
        rows = list(csv.reader(io.StringIO(render_csv(report))))
        assert rows[1] == ["d.csv", "rrules", "failed", "", "", "", "", "", "", "", "boom"]


class TestRenderJson:
    def test_round_trips_report(self):
        data = json.loads(render_json(fixture_report()))
        assert [result["metrics"]["n_rules"] for result in data["results"]] == [7, 4]
        assert "trace" not in data["results"][0]
        assert data["ratios"][0]["rules_ratio"] == pytest.approx(1.75)


@pytest.mark.parametrize(
    "output_format, marker",
    [("table", "N Rules"), ("csv", "dataset,algorithm"), ("json", '"results"')],
)
def test_render_dispatch(output_format, marker):
    assert marker in render(fixture_report(), output_format)
