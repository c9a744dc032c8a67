"""
Rendering of check reports as text, CSV (one row per sub-verdict) or JSON.
"""

import csv
import io
import json
import logging
from pathlib import Path
from typing import List, Optional, Sequence

from src.models.report_schema import CheckReport

logger = logging.getLogger(__name__)

CSV_FIELDS = ["check_name", "parameters", "verdict", "coverage", "label", "sub_verdict", "detail"]


def render_text(report: CheckReport) -> str:
    lines = [
        f"check: {report.check_name}",
        f"parameters: {json.dumps(report.parameters, ensure_ascii=False)}",
        f"verdict: {report.verdict}",
        f"coverage: {report.coverage}",
    ]
    for sub in report.sub_verdicts:
        lines.append(f"  [{sub.verdict}] {sub.label}: {sub.detail}")
    if report.witnesses:
        lines.append(f"witnesses ({len(report.witnesses)}):")
        lines.extend(f"  {json.dumps(w, ensure_ascii=False)}" for w in report.witnesses)
    for note in report.notes:
        lines.append(f"note: {note}")
    stats = report.stats
    lines.append(
        f"stats: {stats.candidates_tested:,} candidates, {stats.nodes_visited:,} nodes, "
        f"{stats.wall_time_s:.2f}s"
    )
    return "\n".join(lines) + "\n"


def render_csv(reports: Sequence[CheckReport]) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    for report in reports:
        base = {
            "check_name": report.check_name,
            "parameters": json.dumps(report.parameters, ensure_ascii=False),
            "verdict": report.verdict,
            "coverage": report.coverage,
        }
        rows = report.sub_verdicts or []
        if not rows:
            writer.writerow({**base, "label": "", "sub_verdict": report.verdict, "detail": ""})
        for sub in rows:
            writer.writerow(
                {**base, "label": sub.label, "sub_verdict": sub.verdict, "detail": sub.detail}
            )
    return buffer.getvalue()


def render_machine(report: CheckReport) -> str:
    return report.model_dump_json(indent=2) + "\n"


def parse_machine(text: str) -> CheckReport:
    return CheckReport.model_validate_json(text)


def render(reports: Sequence[CheckReport], output_format: str) -> str:
    if output_format == "csv":
        return render_csv(reports)
    if output_format == "machine":
        if len(reports) == 1:
            return render_machine(reports[0])
        return json.dumps([r.model_dump(mode="json") for r in reports], indent=2) + "\n"
    return "\n".join(render_text(r) for r in reports)


def write_reports(
    reports: List[CheckReport], output_format: str, output: Optional[Path] = None
) -> str:
    """Render the reports and write them to ``output`` when given; returns the text."""
    text = render(reports, output_format)
    if output is not None:
        output = Path(output)
        output.parent.mkdir(parents=True, exist_ok=True)
        output.write_text(text, encoding="utf-8")
        logger.info("✓ Wrote %s report(s) to %s", len(reports), output)
    return text
