"""Dataset-level analysis: one consistency report per annotator and criterion.

Per-annotator problems (conflicting re-judgments, no complete triple, ties
under strict mode) never abort a run; they turn into ``not_assessable``
entries so a batch over many annotators always yields a full report. Scores
are attached only where the representation preconditions actually hold over
the dataset roster.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import (
    ConflictingJudgment,
    MissingTimestamp,
    NoCompleteTriples,
    NotComplete,
    NotTransitive,
    TieInStrictMode,
)
from .formats import Dataset, decimal_str, rational_from_json, rational_json
from .model import ConflictPolicy, ItemId, Mode, build_relation
from .representation import derive_scores
from .transitivity import IAReport, ia_kappa

REPORT_FORMAT_VERSION = 1


@dataclass(frozen=True)
class AnalysisEntry:
    report: IAReport
    scores: Mapping[ItemId, int] | None = None
    score_scale: int | None = None


@dataclass(frozen=True)
class NotAssessable:
    annotator: str
    criterion: str
    reason: str


@dataclass(frozen=True)
class AnalysisReport:
    mode: Mode
    digest: Mapping[str, int]
    entries: tuple[AnalysisEntry, ...]
    not_assessable: tuple[NotAssessable, ...]


def analyze(
    dataset: Dataset,
    mode: Mode = Mode.WEAK,
    conflict_policy: ConflictPolicy = ConflictPolicy.ERROR,
    blocks: Iterable[Sequence[ItemId]] | None = None,
) -> AnalysisReport:
    """Consistency-score every (annotator, criterion) group in the dataset.

    Deterministic and invariant under judgment row order (with the default
    error conflict policy). ``blocks`` restricts triples to a designated
    block design, mirroring campaign setups that annotate fixed triplets.
    """
    groups = sorted({(j.annotator, j.criterion) for j in dataset.judgments})
    entries = []
    not_assessable = []
    for annotator, criterion in groups:
        try:
            relation = build_relation(dataset.judgments, annotator, criterion, conflict_policy)
            report = ia_kappa(relation, mode, blocks)
        except (ConflictingJudgment, MissingTimestamp, TieInStrictMode, NoCompleteTriples) as exc:
            not_assessable.append(NotAssessable(annotator, criterion, str(exc)))
            continue
        scores = None
        scale = None
        try:
            table = derive_scores(relation, dataset.items)
            scores = dict(table.scores)
            scale = table.scale
        except (NotComplete, NotTransitive):
            pass
        entries.append(AnalysisEntry(report=report, scores=scores, score_scale=scale))

    digest = {
        "items": len(dataset.items),
        "annotators": len(dataset.annotators),
        "criteria": len(dataset.criteria),
        "judgments": len(dataset.judgments),
    }
    return AnalysisReport(
        mode=mode,
        digest=digest,
        entries=tuple(entries),
        not_assessable=tuple(not_assessable),
    )


# -- serialization ------------------------------------------------------------

def _entry_to_json(entry: AnalysisEntry) -> dict:
    report = entry.report
    return {
        "annotator": report.annotator,
        "criterion": report.criterion,
        "mode": report.mode.value,
        "triples_total": report.triples_total,
        "triples_transitive": report.triples_transitive,
        "p_a": rational_json(report.p_a),
        "p_e": rational_json(report.p_e),
        "kappa": rational_json(report.kappa),
        "warning": report.warning,
        "scores": dict(sorted(entry.scores.items())) if entry.scores is not None else None,
        "score_scale": entry.score_scale,
    }


def render_report_json(report: AnalysisReport) -> bytes:
    payload = {
        "format_version": REPORT_FORMAT_VERSION,
        "mode": report.mode.value,
        "digest": dict(report.digest),
        "entries": [_entry_to_json(entry) for entry in report.entries],
        "not_assessable": [
            {"annotator": n.annotator, "criterion": n.criterion, "reason": n.reason}
            for n in report.not_assessable
        ],
    }
    return (json.dumps(payload, indent=2, ensure_ascii=False) + "\n").encode("utf-8")


def parse_report_json(data: bytes | str) -> AnalysisReport:
    payload = json.loads(data if isinstance(data, str) else data.decode("utf-8"))
    entries = []
    for obj in payload["entries"]:
        report = IAReport(
            annotator=obj["annotator"],
            criterion=obj["criterion"],
            mode=Mode(obj["mode"]),
            triples_total=obj["triples_total"],
            triples_transitive=obj["triples_transitive"],
            p_a=rational_from_json(obj["p_a"]),
            p_e=rational_from_json(obj["p_e"]),
            kappa=rational_from_json(obj["kappa"]),
            warning=obj["warning"],
        )
        entries.append(
            AnalysisEntry(report=report, scores=obj["scores"], score_scale=obj["score_scale"])
        )
    return AnalysisReport(
        mode=Mode(payload["mode"]),
        digest=payload["digest"],
        entries=tuple(entries),
        not_assessable=tuple(
            NotAssessable(n["annotator"], n["criterion"], n["reason"])
            for n in payload["not_assessable"]
        ),
    )


def render_report_text(report: AnalysisReport) -> bytes:
    """Plain-text tables, one per criterion: Annotator, P(A), P(E), K."""
    lines = []
    criteria = sorted({e.report.criterion or "" for e in report.entries})
    for criterion in criteria:
        rows = [e for e in report.entries if (e.report.criterion or "") == criterion]
        lines.append(f"criterion: {criterion} ({report.mode.value} mode)")
        header = ("Annotator", "P(A)", "P(E)", "K")
        table = [header]
        for entry in rows:
            r = entry.report
            table.append(
                (
                    r.annotator or "?",
                    f"{r.triples_transitive}/{r.triples_total}",
                    str(r.p_e),
                    decimal_str(r.kappa),
                )
            )
        widths = [max(len(row[i]) for row in table) for i in range(len(header))]
        for row in table:
            lines.append("  ".join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip())
        for entry in rows:
            if entry.scores is not None:
                rendered = ", ".join(f"{item}={value}" for item, value in sorted(entry.scores.items()))
                lines.append(f"scores[{entry.report.annotator}]: {rendered}")
        lines.append("")
    if report.not_assessable:
        lines.append("not assessable:")
        for n in report.not_assessable:
            lines.append(f"  {n.annotator} / {n.criterion}: {n.reason}")
        lines.append("")
    if report.entries and any(e.report.warning for e in report.entries):
        warning = next(e.report.warning for e in report.entries if e.report.warning)
        lines.append(f"warning: {warning}")
        lines.append("")
    return ("\n".join(lines)).encode("utf-8")
