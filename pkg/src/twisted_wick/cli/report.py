"""Report documents: machine JSON, rich tables and markdown persistence."""

import json
import logging
from dataclasses import dataclass, field
from datetime import datetime
from pathlib import Path
from typing import Any

from rich.console import Console
from rich.markup import escape
from rich.table import Table

from twisted_wick import __version__
from twisted_wick.checks import CheckReport, Verdict, overall_verdict
from twisted_wick.exceptions import ResourceLimitError
from twisted_wick.quotient import DimensionRow, quotient_algebra
from twisted_wick.twist import TwistSystem

logger = logging.getLogger(__name__)

REPORT_VERSION = "twisted-wick-report/1"

VERDICT_STYLES = {
    Verdict.PASS: "green",
    Verdict.FAIL: "red",
    Verdict.UNSOUND: "bold red",
    Verdict.SKIPPED_RESOURCE: "yellow",
    Verdict.SKIPPED: "dim",
}


def collect_dimensions(
    ts: TwistSystem, n_max: int
) -> tuple[list[DimensionRow], dict[str, Any] | None]:
    """Dimension rows for n = 0..n_max, stopping at the first capped level.

    Returns:
        (rows, skip) where skip describes the resource limit hit, or None
    """
    algebra = quotient_algebra(ts)
    rows: list[DimensionRow] = []
    for n in range(n_max + 1):
        try:
            lvl = algebra.level(n)
        except ResourceLimitError as e:
            logger.warning(f"dimension table stops at n={n}: {e}")
            return rows, {
                "degree": n,
                "resource": e.resource,
                "limit": e.limit,
                "requested": e.requested,
            }
        rows.append(
            DimensionRow(n, lvl.ambient_dimension, lvl.ideal_dimension, lvl.dimension)
        )
    return rows, None


@dataclass
class ReportDocument:
    """Everything one `check` run produces.

    Attributes:
        digest: SHA-256 of the canonical spec JSON
        config: 실행 설정 에코 (n_max, q, cap, ...)
        reports: CheckType 순서의 체크 리포트 + implication 리포트
        dimensions: degree 별 차원 표
        dimension_skip: 차원 표가 cap 에서 멈춘 경우 그 정보
    """

    digest: str
    config: dict[str, Any]
    reports: list[CheckReport] = field(default_factory=list)
    dimensions: list[DimensionRow] = field(default_factory=list)
    dimension_skip: dict[str, Any] | None = None
    tool_version: str = __version__

    @property
    def verdict(self) -> Verdict:
        return overall_verdict(self.reports)

    def to_dict(self, include_timing: bool = True) -> dict[str, Any]:
        data: dict[str, Any] = {
            "version": REPORT_VERSION,
            "tool_version": self.tool_version,
            "input_digest": self.digest,
            "config": dict(self.config),
            "checks": [r.to_dict(include_timing) for r in self.reports],
            "dimensions": [
                {
                    "degree": row.degree,
                    "ambient": row.ambient,
                    "ideal": row.ideal,
                    "quotient": row.quotient,
                }
                for row in self.dimensions
            ],
            "verdict": self.verdict.value,
        }
        if self.dimension_skip is not None:
            data["dimensions_skipped"] = dict(self.dimension_skip)
        if include_timing:
            data["timing"] = {
                "seconds": sum(r.timing.get("seconds", 0.0) for r in self.reports)
            }
        return data


def render_machine(doc: ReportDocument, include_timing: bool = True) -> str:
    """Sorted-key JSON with two-space indent."""
    return json.dumps(doc.to_dict(include_timing), sort_keys=True, indent=2) + "\n"


def _witness_summary(report: CheckReport, width: int = 60) -> str:
    source = report.witness or (
        {"reason": report.notes[0]} if report.skipped and report.notes else {}
    )
    if not source:
        return ""
    text = ", ".join(f"{k}={v}" for k, v in sorted(source.items()))
    return text if len(text) <= width else text[: width - 1] + "…"


def dimension_table(rows: list[DimensionRow], title: str = "dim A^n") -> Table:
    table = Table(title=title)
    table.add_column("n", justify="right")
    table.add_column("d^n", justify="right")
    table.add_column("dim J_n", justify="right")
    table.add_column("dim A^n", justify="right")
    for row in rows:
        table.add_row(
            str(row.degree), str(row.ambient), str(row.ideal), str(row.quotient)
        )
    return table


def render_text(doc: ReportDocument, console: Console) -> None:
    """Human-readable tables."""
    table = Table(title=f"twisted-wick checks (n_max={doc.config.get('n_max')})")
    table.add_column("check")
    table.add_column("verdict")
    table.add_column("witness / reason")
    for report in doc.reports:
        style = VERDICT_STYLES[report.verdict]
        table.add_row(
            escape(report.name),
            f"[{style}]{report.verdict.value}[/{style}]",
            escape(_witness_summary(report)),
        )
    console.print(table)
    if doc.dimensions:
        console.print(dimension_table(doc.dimensions))
    if doc.dimension_skip is not None:
        console.print(
            f"[yellow]dimension table stopped at n={doc.dimension_skip['degree']}"
            f" ({doc.dimension_skip['resource']} cap)[/yellow]"
        )
    style = VERDICT_STYLES[doc.verdict]
    console.print(f"overall: [{style}]{doc.verdict.value}[/{style}]")


def render_markdown(doc: ReportDocument, timestamp: datetime | None = None) -> str:
    """REPORT.md content; the Timestamp section appears only with a timestamp."""
    config = "\n".join(f"- {k}: {v}" for k, v in sorted(doc.config.items()))
    checks = "\n".join(
        f"| {r.name} | {r.verdict.value} | {_witness_summary(r, 120)} |"
        for r in doc.reports
    )
    dims = "\n".join(
        f"| {row.degree} | {row.ambient} | {row.ideal} | {row.quotient} |"
        for row in doc.dimensions
    )
    notes = sorted({note for r in doc.reports for note in r.notes})
    note_lines = "\n".join(f"- {n}" for n in notes) or "- none"
    stamp = "" if timestamp is None else f"\n## Timestamp\n{timestamp.isoformat()}\n"

    return f"""# twisted-wick report

## Input
- Digest: {doc.digest}
- Tool version: {doc.tool_version}

## Configuration
{config}

## Checks
| check | verdict | witness |
| --- | --- | --- |
{checks}

## Dimensions
| n | d^n | dim J_n | dim A^n |
| --- | --- | --- | --- |
{dims}

## Notes
{note_lines}

## Verdict
{doc.verdict.value}
{stamp}"""


def save_report(
    doc: ReportDocument, directory: Path, include_timing: bool = True
) -> list[Path]:
    """Write report.json and REPORT.md into directory.

    Without timing both files are byte-stable across runs.

    Returns:
        작성된 파일 경로 목록
    """
    directory.mkdir(parents=True, exist_ok=True)
    json_path = directory / "report.json"
    md_path = directory / "REPORT.md"
    timestamp = datetime.now() if include_timing else None
    json_path.write_text(render_machine(doc, include_timing), encoding="utf-8")
    md_path.write_text(render_markdown(doc, timestamp), encoding="utf-8")
    logger.info(f"report saved to {directory}")
    return [json_path, md_path]
