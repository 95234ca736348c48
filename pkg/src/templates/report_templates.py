"""
Report Templates Module

Builds the structured evaluation report and its plain-text tables: one with
precision, recall and F-score per method side by side, one with frame rate
and character accuracy per method.
"""

from typing import Any, Dict, List, Optional

from src.models.schemas import EvalReport, MatchConfig


def _percent(value: Optional[float]) -> str:
    return "-" if value is None else f"{100 * value:.1f}"


class ExtractionReportTemplate:
    """Template for the structured evaluation record."""

    report_type: str = "extraction"

    @staticmethod
    def build(
        reports: Dict[str, EvalReport],
        match: MatchConfig,
        ocr_accuracy: Optional[float] = None,
    ) -> Dict[str, Any]:
        """
        Build the evaluation record written by `eval --report`.

        Args:
            reports: One report per method, keyed by method name
            match: Matching rule the reports were computed with
            ocr_accuracy: Character accuracy, when readings were scored

        Raises:
            ValueError: If no report is given
        """
        if not reports:
            raise ValueError("At least one method report is required")
        return {
            "report_type": "extraction",
            "match": match.model_dump(),
            "methods": {name: report.model_dump() for name, report in reports.items()},
            "ocr_accuracy": ocr_accuracy,
        }


class ExtractionTableTemplate:
    """P/R/F columns for each method, one row per stream."""

    @staticmethod
    def render(rows: Dict[str, Dict[str, EvalReport]]) -> str:
        """
        Render a side-by-side table.

        Args:
            rows: {stream name: {method name: report}}

        Raises:
            ValueError: If there are no rows
        """
        if not rows:
            raise ValueError("Extraction table needs at least one row")
        methods: List[str] = []
        for reports in rows.values():
            for name in reports:
                if name not in methods:
                    methods.append(name)

        stream_width = max(len("Stream"), *(len(name) for name in rows))
        group = " {:>6} {:>6} {:>6} |"
        header = f"{'Stream':<{stream_width}} |" + "".join(f" {m:^20} |" for m in methods)
        sub = f"{'':<{stream_width}} |" + "".join(group.format("P", "R", "F") for _ in methods)
        lines = [header, sub, "-" * len(sub)]
        for stream, reports in rows.items():
            cells = []
            for method in methods:
                report = reports.get(method)
                if report is None:
                    cells.append(group.format("-", "-", "-"))
                else:
                    cells.append(group.format(
                        _percent(report.precision), _percent(report.recall), _percent(report.f_score)
                    ))
            lines.append(f"{stream:<{stream_width}} |" + "".join(cells))
        return "\n".join(lines)


class OcrTableTemplate:
    """Frame rate and character accuracy per method."""

    @staticmethod
    def render(rows: List[Dict[str, Any]]) -> str:
        """
        Render the table.

        Args:
            rows: Dicts with 'method' and optional 'fps' and 'accuracy'

        Raises:
            ValueError: If a row has no method name
        """
        lines = [f"{'Method':<20} {'FPS':>10} {'Accuracy (%)':>13}", "-" * 45]
        for idx, row in enumerate(rows):
            if "method" not in row:
                raise ValueError(f"Row at index {idx} missing 'method' field")
            fps = row.get("fps")
            fps_cell = "-" if fps is None else f"{fps:.1f}"
            lines.append(f"{row['method']:<20} {fps_cell:>10} {_percent(row.get('accuracy')):>13}")
        return "\n".join(lines)
