"""
Report rendering: canonical JSON for machines, pandas tables for people
"""
import json
from typing import Any, Dict, Iterable, List

import pandas as pd
from pydantic import BaseModel

from trop_morse.schemas.reports import RunReport


def canonical_json(payload: Any) -> str:
    """Sorted keys, two-space indent, trailing newline; byte-stable for equal input"""
    if isinstance(payload, BaseModel):
        payload = payload.model_dump(mode="json")
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def run_report(command: List[str], digests: Dict[str, str], results: Iterable[Any]) -> RunReport:
    """Wrap results (report models or plain dicts) in the stdout envelope"""
    dumped = [r.model_dump(mode="json") if isinstance(r, BaseModel) else dict(r) for r in results]
    return RunReport(
        command=list(command),
        digests=dict(sorted(digests.items())),
        results=dumped,
        ok=all(r.get("ok", True) for r in dumped),
    )


def _cell(value: Any) -> Any:
    if isinstance(value, (list, dict)):
        return json.dumps(value, sort_keys=True, separators=(",", ":"))
    return value


def results_table(results: List[Dict[str, Any]], columns: List[str]) -> pd.DataFrame:
    """One row per result, restricted to the scalar columns worth reading"""
    frame = pd.DataFrame([{c: _cell(r.get(c)) for c in columns} for r in results], columns=columns)
    return frame


def points_table(points: List[Dict[str, Any]]) -> pd.DataFrame:
    columns = ["label", "kind", "ascending", "descending", "lmd"]
    present = [c for c in columns if any(c in p for p in points)] or ["label", "lmd"]
    return results_table(points, present)


def render_text(report: RunReport, columns: List[str], show_points: bool = True) -> str:
    """Human-readable report: summary table, then per-result point tables"""
    lines = []
    table = results_table(report.results, columns)
    lines.append(table.to_string(index=False))
    if show_points:
        for result in report.results:
            points = result.get("points") or []
            if points:
                lines.append("")
                title = result.get("name") or result.get("operation") or "points"
                lines.append(f"{title}:")
                lines.append(points_table(points).to_string(index=False))
    lines.append("")
    if report.wall_time_s is not None:
        lines.append(f"wall time: {report.wall_time_s}s")
    lines.append(f"ok: {str(report.ok).lower()}")
    return "\n".join(lines) + "\n"
