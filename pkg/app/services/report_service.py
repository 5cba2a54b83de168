"""
Report rendering

Formats:
    table: aligned text with the columns N Rules, Train Prec., Train Cov.,
           Test Acc., Ind. Time, followed by the RULES/RRULES ratio summary
    csv:   one delimited record per (dataset, algorithm)
    json:  the SuiteReport model

Percentages carry two decimals, times millisecond resolution. The Test Acc.
column is left out when no row has a test set, and shows "-" for train-only
rows otherwise.
"""

import csv
import io
from typing import List, Optional, Sequence

from app.schemas.experiment import ExperimentResult, OutputFormat, SuiteReport

TABLE_COLUMNS = ("Dataset", "Algorithm", "N Rules", "Train Prec.", "Train Cov.", "Test Acc.", "Ind. Time")

CSV_FIELDS = (
    "dataset",
    "algorithm",
    "status",
    "n_rules",
    "mean_precision",
    "overall_coverage",
    "test_accuracy",
    "induction_time",
    "default_rule_uses",
    "verified",
    "error",
)


def percent(value: Optional[float]) -> str:
    return "-" if value is None else f"{value * 100:.2f}%"


def seconds(value: Optional[float]) -> str:
    return "-" if value is None else f"{value:.3f}s"


def ratio(value: Optional[float]) -> str:
    return "-" if value is None else f"{value:.2f}"


def _aligned(rows: Sequence[Sequence[str]]) -> List[str]:
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    lines = []
    for number, row in enumerate(rows):
        lines.append("  ".join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip())
        if number == 0:
            lines.append("  ".join("-" * width for width in widths))
    return lines


def _table_row(result: ExperimentResult, with_test: bool) -> List[str]:
    label = result.algorithm.upper()
    if result.status == "failed" or result.metrics is None:
        row = [result.dataset, label, "FAILED", "-", "-", "-", "-"]
    else:
        metrics = result.metrics
        row = [
            result.dataset,
            label,
            str(metrics.n_rules),
            percent(metrics.mean_precision),
            percent(metrics.overall_coverage),
            percent(metrics.test_accuracy),
            seconds(metrics.induction_time),
        ]
        if result.verification is not None and not result.verification.passed:
            row[1] += " (UNVERIFIED)"
    if not with_test:
        del row[5]
    return row


def render_table(report: SuiteReport) -> str:
    """Aligned comparison table, failures, ratio summary and rule dumps."""
    if not report.results:
        return "No experiments.\n"
    with_test = any(
        result.metrics is not None and result.metrics.test_accuracy is not None
        for result in report.results
    )
    header = list(TABLE_COLUMNS)
    if not with_test:
        del header[5]
    lines = _aligned([header] + [_table_row(result, with_test) for result in report.results])

    failures = [result for result in report.results if result.status == "failed"]
    if failures:
        lines.append("")
        lines.extend(f"FAILED {result.dataset} {result.algorithm.upper()}: {result.error}" for result in failures)

    if report.ratios:
        lines.append("")
        lines.append("RULES / RRULES")
        lines.extend(
            _aligned(
                [["Dataset", "Rules", "Coverage", "Time"]]
                + [
                    [summary.dataset, ratio(summary.rules_ratio), ratio(summary.coverage_ratio), ratio(summary.time_ratio)]
                    for summary in report.ratios
                ]
            )
        )

    for result in report.results:
        if result.trace is not None:
            lines.append("")
            lines.append(f"# trace {result.dataset} {result.algorithm.upper()}")
            lines.extend(
                f"n_c={stats.n_c} pool={stats.selector_pool} generated={stats.generated} "
                f"empty={stats.discarded_empty} irrelevant={stats.discarded_irrelevant} "
                f"impure={stats.discarded_impure} created={stats.rules_created} "
                f"remaining={stats.remaining}"
                for stats in result.trace.iterations
            )

    for result in report.results:
        if result.rules_text is not None:
            lines.append("")
            lines.append(f"# {result.dataset} {result.algorithm.upper()}")
            lines.append(result.rules_text.rstrip("\n"))
    return "\n".join(lines) + "\n"


def render_csv(report: SuiteReport) -> str:
    """One record per result; empty fields where a value does not apply."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_FIELDS)
    for result in report.results:
        metrics = result.metrics
        writer.writerow(
            [
                result.dataset,
                result.algorithm,
                result.status,
                metrics.n_rules if metrics else "",
                f"{metrics.mean_precision:.4f}" if metrics else "",
                f"{metrics.overall_coverage:.4f}" if metrics else "",
                f"{metrics.test_accuracy:.4f}" if metrics and metrics.test_accuracy is not None else "",
                f"{metrics.induction_time:.3f}" if metrics and metrics.induction_time is not None else "",
                metrics.default_rule_uses if metrics and metrics.default_rule_uses is not None else "",
                "" if result.verification is None else str(result.verification.passed).lower(),
                result.error or "",
            ]
        )
    return buffer.getvalue()


def render_json(report: SuiteReport) -> str:
    return report.model_dump_json(indent=2, exclude_none=True) + "\n"


def render(report: SuiteReport, output_format: OutputFormat) -> str:
    """Render a report in the requested format."""
    if output_format == "csv":
        return render_csv(report)
    if output_format == "json":
        return render_json(report)
    return render_table(report)
