"""Evaluation report assembly and serialization (JSON and TSV)."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Optional

TSV_COLUMNS = [
    "system",
    "wer",
    "bleu",
    "length_captions",
    "length_subtitles",
    "read_speed_captions",
    "read_speed_subtitles",
    "segment_captions",
    "segment_subtitles",
    "struc",
    "lex",
    "line_count",
    "char_ratio",
]


@dataclass(frozen=True)
class EvaluationReport:
    system_name: str
    wer: Optional[float]
    bleu: Optional[float]
    length_captions: Optional[float]
    length_subtitles: Optional[float]
    reading_speed_captions: Optional[float]
    reading_speed_subtitles: Optional[float]
    segmentation_captions: Optional[float]
    segmentation_subtitles: Optional[float]
    structural: float
    lexical: float
    line_count: Optional[float]
    char_ratio: float
    config_echo: dict[str, Any]


def _round(value: Optional[float], digits: int = 4) -> Optional[float]:
    if value is None:
        return None
    return round(value, digits)


def report_to_dict(report: EvaluationReport) -> dict[str, Any]:
    return {
        "system": report.system_name,
        "wer": _round(report.wer),
        "bleu": _round(report.bleu),
        "length": {
            "captions": _round(report.length_captions),
            "subtitles": _round(report.length_subtitles),
        },
        "reading_speed": {
            "captions": _round(report.reading_speed_captions),
            "subtitles": _round(report.reading_speed_subtitles),
        },
        "segmentation": {
            "captions": _round(report.segmentation_captions),
            "subtitles": _round(report.segmentation_subtitles),
        },
        "structural": _round(report.structural),
        "lexical": _round(report.lexical),
        "line_count": _round(report.line_count),
        "char_ratio": _round(report.char_ratio),
        "config": report.config_echo,
    }


def report_to_json(report: EvaluationReport) -> str:
    return json.dumps(report_to_dict(report), sort_keys=True, ensure_ascii=False, indent=2) + "\n"


def _fmt_rate(value: Optional[float]) -> str:
    if value is None:
        return "-"
    return f"{value:.2f}".lstrip("0") or ".00"


def _fmt_score(value: Optional[float]) -> str:
    if value is None:
        return "-"
    return f"{value:.2f}"


def report_to_tsv(report: EvaluationReport) -> str:
    row = [
        report.system_name,
        _fmt_score(report.wer),
        _fmt_score(report.bleu),
        _fmt_rate(report.length_captions),
        _fmt_rate(report.length_subtitles),
        _fmt_rate(report.reading_speed_captions),
        _fmt_rate(report.reading_speed_subtitles),
        _fmt_rate(report.segmentation_captions),
        _fmt_rate(report.segmentation_subtitles),
        _fmt_rate(report.structural),
        _fmt_rate(report.lexical),
        _fmt_rate(report.line_count),
        _fmt_score(report.char_ratio),
    ]
    return "\t".join(TSV_COLUMNS) + "\n" + "\t".join(row) + "\n"
