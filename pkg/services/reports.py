"""Report assembly and rendering (json, csv, markdown).

Reports carry full precision; only the markdown view rounds (dominance and
readability to 2 decimals, coverage to 4, p values in scientific notation).
Nothing time- or path-dependent goes into a report, so identical inputs give
identical bytes.
"""

import csv
import hashlib
import io
import json
import math
from pathlib import Path
from typing import Any, Dict, List, Literal, Mapping, Optional, Sequence

from pydantic import BaseModel
from tabulate import tabulate

from services import __version__
from services.dominance import Band, DominanceTableRow
from services.lexicon import CategoryLexicon
from services.profile import ProfileResult
from services.readability import CollectionComparison, ReadabilityScores, flesch_band, fog_band

SIGNIFICANCE_ALPHA = 0.001
SIGNIFICANT_MARK = "*"
NOT_SIGNIFICANT_MARK = "†"

ColumnKind = Literal["text", "int", "bool", "coverage", "score", "p"]
ReportKind = Literal["DominanceReport", "ReadabilityReport", "ProfileReport"]
FORMATS = ("md", "json", "csv")


class Column(BaseModel):
    name: str
    kind: ColumnKind


class Report(BaseModel):
    kind: ReportKind
    columns: List[Column]
    rows: List[Dict[str, Any]]
    summary: Dict[str, Any] = {}
    metadata: Dict[str, Any] = {}

    @property
    def column_names(self) -> List[str]:
        return [column.name for column in self.columns]


def significance_mark(p_value: Optional[float]) -> Optional[str]:
    if p_value is None:
        return None
    return SIGNIFICANT_MARK if p_value < SIGNIFICANCE_ALPHA else NOT_SIGNIFICANT_MARK


def file_digest(path) -> Dict[str, str]:
    path = Path(path)
    return {"name": path.name, "sha256": hashlib.sha256(path.read_bytes()).hexdigest()}


def build_metadata(
    inputs: Sequence[Mapping[str, str]] = (),
    lexicon: Optional[CategoryLexicon] = None,
    settings: Optional[Mapping[str, Any]] = None,
) -> Dict[str, Any]:
    metadata: Dict[str, Any] = {"tool_version": __version__, "inputs": [dict(item) for item in inputs]}
    if lexicon is not None:
        metadata["lexicon"] = {"name": lexicon.name, "sha256": lexicon.digest}
    if settings:
        metadata["settings"] = dict(settings)
    return metadata


# -------------------------------
# Builders
# -------------------------------
def dominance_report(
    table: Sequence[DominanceTableRow],
    target_names: Sequence[str],
    metadata: Optional[Dict[str, Any]] = None,
) -> Report:
    columns = [Column(name="label", kind="text"), Column(name="coverage_control", kind="coverage")]
    for name in target_names:
        columns += [
            Column(name=f"{name}.coverage", kind="coverage"),
            Column(name=f"{name}.dominance", kind="score"),
            Column(name=f"{name}.band", kind="text"),
        ]
    columns += [
        Column(name="scope", kind="text"),
        Column(name="filtered", kind="bool"),
        Column(name="undefined", kind="bool"),
    ]

    rows = []
    for entry in sorted(table, key=lambda item: item.label):
        row: Dict[str, Any] = {"label": entry.label, "coverage_control": entry.coverage_control}
        for name in target_names:
            scored = entry.scores[name]
            row[f"{name}.coverage"] = scored.coverage_target
            row[f"{name}.dominance"] = scored.dominance
            row[f"{name}.band"] = scored.band.value
        row["scope"] = entry.scope.value
        bands = {scored.band for scored in entry.scores.values()}
        row["filtered"] = bands == {Band.FILTERED}
        row["undefined"] = Band.UNDEFINED in bands
        rows.append(row)
    return Report(kind="DominanceReport", columns=columns, rows=rows, metadata=metadata or {})


_INDEX_COLUMNS = (
    ("mean", "score"),
    ("sd", "score"),
    ("t", "score"),
    ("df", "score"),
    ("p", "p"),
    ("marker", "text"),
    ("degenerate", "bool"),
    ("f", "score"),
    ("f_p", "p"),
    ("f_marker", "text"),
)


def _finite(value: Optional[float]) -> Optional[float]:
    if value is None or not math.isfinite(value):
        return None
    return value


def _index_cells(prefix: str, summary, t_test, f_test) -> Dict[str, Any]:
    # an infinite t (zero variance, different means) is reported as null
    return {
        f"{prefix}_mean": summary.mean,
        f"{prefix}_sd": summary.stddev,
        f"{prefix}_t": _finite(t_test.statistic),
        f"{prefix}_df": t_test.df[0],
        f"{prefix}_p": t_test.p_value,
        f"{prefix}_marker": significance_mark(t_test.p_value),
        f"{prefix}_degenerate": t_test.degenerate,
        f"{prefix}_f": _finite(f_test.statistic) if f_test else None,
        f"{prefix}_f_p": f_test.p_value if f_test else None,
        f"{prefix}_f_marker": significance_mark(f_test.p_value) if f_test else None,
    }


def readability_report(
    comparisons: Mapping[str, CollectionComparison],
    metadata: Optional[Dict[str, Any]] = None,
) -> Report:
    columns = [
        Column(name="dataset", kind="text"),
        Column(name="n", kind="int"),
        Column(name="skipped", kind="int"),
    ]
    for prefix in ("fog", "flesch"):
        columns += [Column(name=f"{prefix}_{suffix}", kind=kind) for suffix, kind in _INDEX_COLUMNS]

    rows = []
    for name in sorted(comparisons):
        comparison = comparisons[name]
        row: Dict[str, Any] = {"dataset": name, "n": comparison.summary.n, "skipped": comparison.summary.skipped}
        row.update(_index_cells("fog", comparison.summary.fog, comparison.fog_t, comparison.fog_f))
        row.update(_index_cells("flesch", comparison.summary.flesch, comparison.flesch_t, comparison.flesch_f))
        rows.append(row)
    return Report(kind="ReadabilityReport", columns=columns, rows=rows, metadata=metadata or {})


def profile_report(
    result: ProfileResult,
    scores: ReadabilityScores,
    baseline: Optional[ProfileResult] = None,
    metadata: Optional[Dict[str, Any]] = None,
) -> Report:
    columns = [
        Column(name="label", kind="text"),
        Column(name="direction", kind="text"),
        Column(name="coverage_doc", kind="coverage"),
        Column(name="coverage_control", kind="coverage"),
        Column(name="dominance", kind="score"),
        Column(name="band", kind="text"),
        Column(name="met", kind="bool"),
        Column(name="undefined", kind="bool"),
    ]
    rows = [
        {
            "label": row.label,
            "direction": row.direction.value,
            "coverage_doc": row.coverage_doc,
            "coverage_control": row.coverage_control,
            "dominance": row.dominance,
            "band": row.band.value,
            "met": row.met,
            "undefined": row.undefined,
        }
        for row in sorted(result.rows, key=lambda item: item.label)
    ]
    summary: Dict[str, Any] = {
        "met": result.met,
        "size": result.size,
        "fraction_met": result.fraction_met,
        "fog": scores.fog,
        "flesch": scores.flesch,
        "fog_band": fog_band(scores.fog),
        "flesch_band": flesch_band(scores.flesch),
    }
    if baseline is not None:
        summary["baseline_met"] = baseline.met
        summary["baseline_fraction_met"] = baseline.fraction_met
    return Report(kind="ProfileReport", columns=columns, rows=rows, summary=summary, metadata=metadata or {})


# -------------------------------
# Renderers
# -------------------------------
def to_json(report: Report) -> str:
    payload = {
        "kind": report.kind,
        "columns": report.column_names,
        "rows": report.rows,
        "summary": report.summary,
        "metadata": report.metadata,
    }
    return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False, allow_nan=False) + "\n"


def _csv_cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def to_csv(report: Report) -> str:
    """Rows only; summary and metadata live in the json and markdown views."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(report.column_names)
    for row in report.rows:
        writer.writerow([_csv_cell(row.get(name)) for name in report.column_names])
    return buffer.getvalue()


def _md_cell(value: Any, kind: str) -> str:
    if value is None:
        return "n/a"
    if kind == "bool":
        return "yes" if value else "no"
    if kind == "coverage":
        return f"{value:.4f}"
    if kind == "score":
        return f"{value:.2f}"
    if kind == "p":
        return f"{value:.2e}"
    return str(value)


def _md_summary_value(key: str, value: Any) -> str:
    if isinstance(value, float):
        return f"{value:.1%}" if key.endswith("fraction_met") else f"{value:.2f}"
    return str(value)


def _md_metadata_value(value: Any) -> str:
    if isinstance(value, dict):
        return ", ".join(f"{key}={value[key]}" for key in sorted(value))
    if isinstance(value, list):
        return "; ".join(_md_metadata_value(item) for item in value)
    return str(value)


_TITLES = {
    "DominanceReport": "Word class dominance",
    "ReadabilityReport": "Readability indices",
    "ProfileReport": "Virality profile",
}


def to_markdown(report: Report) -> str:
    lines = [f"# {_TITLES[report.kind]}", ""]
    for key in sorted(report.metadata):
        lines.append(f"- {key}: {_md_metadata_value(report.metadata[key])}")
    if report.metadata:
        lines.append("")
    if report.summary:
        for key, value in report.summary.items():
            lines.append(f"- **{key}**: {_md_summary_value(key, value)}")
        lines.append("")
    table = [[_md_cell(row.get(column.name), column.kind) for column in report.columns] for row in report.rows]
    lines.append(tabulate(table, headers=report.column_names, tablefmt="github", disable_numparse=True))
    return "\n".join(lines) + "\n"


def render(report: Report, fmt: str = "md") -> str:
    if fmt == "json":
        return to_json(report)
    if fmt == "csv":
        return to_csv(report)
    if fmt == "md":
        return to_markdown(report)
    raise ValueError(f"unknown report format '{fmt}'")
