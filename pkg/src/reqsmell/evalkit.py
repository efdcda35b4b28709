"""Evaluation against gold annotations: precision, recall, rater agreement.

Precision tables work from (inspected, accepted) counts per smell; recall
tables from (in-artifacts, identified) counts, optionally grouping the four
dictionary smells into one ambiguity-related row. "Average" rows are
unweighted means over smells with data; "Overall" rows pool the counts.

The false-positive agreement ratio is implemented as Jaccard overlap
|A∩B| / |A∪B|: a ratio of the verdicts both teams share to all verdicts at
least one team gave. (A literal reading of "both ... to ... only one"
could exceed 1; see the README note on agreement metrics.)
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Hashable, Iterable, Mapping, Sequence

from .smells import DICTIONARY_SMELLS, Finding, SmellKind

AMBIGUITY_GROUP = "Ambiguity-related"


class MatchPolicy(Enum):
    EXACT_SPAN = "ExactSpan"
    OVERLAP = "Overlap"


class GoldVerdict(Enum):
    TRUE_POSITIVE = "TruePositiveLabel"
    FALSE_POSITIVE = "FalsePositiveLabel"


class InvalidCountsError(ValueError):
    pass


class EmptyInputError(ValueError):
    pass


@dataclass(frozen=True)
class GoldSpan:
    artifact_id: str
    item_id: str
    smell: SmellKind
    char_range: tuple[int, int]
    verdict: GoldVerdict | None = None
    rater_id: str = ""

    @classmethod
    def from_dict(cls, data: dict) -> "GoldSpan":
        return cls(
            artifact_id=data["artifact_id"],
            item_id=data["item_id"],
            smell=SmellKind(data["smell"]),
            char_range=tuple(data["char_range"]),
            verdict=GoldVerdict(data["verdict"]) if data.get("verdict") else None,
            rater_id=data.get("rater_id", ""),
        )


@dataclass(frozen=True)
class MatchResult:
    pairs: tuple[tuple[GoldSpan, Finding], ...]
    unmatched_gold: tuple[GoldSpan, ...]
    unmatched_findings: tuple[Finding, ...]


def match_findings(
    findings: Sequence[Finding],
    gold: Sequence[GoldSpan],
    policy: MatchPolicy = MatchPolicy.EXACT_SPAN,
) -> MatchResult:
    """Align gold spans with findings; each gold span takes at most one finding.

    Matching requires the same artifact, item and smell. ExactSpan also
    requires identical offsets; Overlap any intersection. Ties break to the
    leftmost (then first-listed) candidate.
    """
    remaining = sorted(
        range(len(findings)),
        key=lambda i: (findings[i].artifact_id, findings[i].item_id, findings[i].char_range),
    )
    taken: set[int] = set()
    pairs: list[tuple[GoldSpan, Finding]] = []
    unmatched_gold: list[GoldSpan] = []
    for span in sorted(gold, key=lambda g: (g.artifact_id, g.item_id, g.char_range)):
        chosen = None
        for i in remaining:
            if i in taken:
                continue
            finding = findings[i]
            if (finding.artifact_id, finding.item_id, finding.smell) != (
                span.artifact_id,
                span.item_id,
                span.smell,
            ):
                continue
            if _spans_match(span.char_range, finding.char_range, policy):
                chosen = i
                break
        if chosen is None:
            unmatched_gold.append(span)
        else:
            taken.add(chosen)
            pairs.append((span, findings[chosen]))
    unmatched_findings = tuple(findings[i] for i in range(len(findings)) if i not in taken)
    return MatchResult(tuple(pairs), tuple(unmatched_gold), unmatched_findings)


def _spans_match(a: tuple[int, int], b: tuple[int, int], policy: MatchPolicy) -> bool:
    if policy is MatchPolicy.EXACT_SPAN:
        return a == b
    return a[0] < b[1] and b[0] < a[1]


@dataclass(frozen=True)
class PrecisionRow:
    label: str
    inspected: int
    accepted: int

    @property
    def rejected(self) -> int:
        return self.inspected - self.accepted

    @property
    def precision(self) -> float | None:
        return self.accepted / self.inspected if self.inspected > 0 else None


@dataclass(frozen=True)
class RecallRow:
    label: str
    gold_total: int
    detected: int

    @property
    def recall(self) -> float | None:
        return self.detected / self.gold_total if self.gold_total > 0 else None


@dataclass(frozen=True)
class EvalReport:
    precision_rows: tuple[PrecisionRow, ...] = ()
    recall_rows: tuple[RecallRow, ...] = ()

    @property
    def average_precision(self) -> float | None:
        values = [r.precision for r in self.precision_rows if r.precision is not None]
        return sum(values) / len(values) if values else None

    @property
    def overall_precision(self) -> float | None:
        inspected = sum(r.inspected for r in self.precision_rows)
        accepted = sum(r.accepted for r in self.precision_rows)
        return accepted / inspected if inspected > 0 else None

    @property
    def average_recall(self) -> float | None:
        values = [r.recall for r in self.recall_rows if r.recall is not None]
        return sum(values) / len(values) if values else None

    @property
    def overall_recall(self) -> float | None:
        gold = sum(r.gold_total for r in self.recall_rows)
        detected = sum(r.detected for r in self.recall_rows)
        return detected / gold if gold > 0 else None

    def to_dict(self) -> dict:
        payload: dict = {}
        if self.precision_rows:
            payload["precision"] = {
                "per_smell": [
                    {
                        "smell": r.label,
                        "inspected": r.inspected,
                        "accepted": r.accepted,
                        "rejected": r.rejected,
                        "precision": None if r.precision is None else round(r.precision, 2),
                    }
                    for r in self.precision_rows
                ],
                "average": round(self.average_precision, 2) if self.average_precision is not None else None,
                "overall": round(self.overall_precision, 2) if self.overall_precision is not None else None,
            }
        if self.recall_rows:
            payload["recall"] = {
                "per_smell": [
                    {
                        "smell": r.label,
                        "gold_total": r.gold_total,
                        "detected": r.detected,
                        "recall": None if r.recall is None else round(r.recall, 2),
                    }
                    for r in self.recall_rows
                ],
                "average": round(self.average_recall, 2) if self.average_recall is not None else None,
                "overall": round(self.overall_recall, 2) if self.overall_recall is not None else None,
            }
        return payload


def precision_table(counts: Mapping[SmellKind, tuple[int, int]]) -> EvalReport:
    """Per-smell precision from (inspected, accepted) counts."""
    rows = []
    for kind in SmellKind:
        if kind not in counts:
            continue
        inspected, accepted = counts[kind]
        if accepted > inspected or inspected < 0 or accepted < 0:
            raise InvalidCountsError(
                f"{kind.value}: accepted {accepted} exceeds inspected {inspected}"
            )
        rows.append(PrecisionRow(kind.value, inspected, accepted))
    return EvalReport(precision_rows=tuple(rows))


def ambiguity_group_map() -> dict[SmellKind, str]:
    """Smell-to-row mapping that merges the four dictionary smells."""
    mapping = {kind: kind.value for kind in SmellKind}
    for kind in DICTIONARY_SMELLS:
        mapping[kind] = AMBIGUITY_GROUP
    return mapping


def recall_table(
    counts: Mapping[SmellKind, tuple[int, int]],
    group_map: Mapping[SmellKind, str] | None = None,
) -> EvalReport:
    """Per-smell (or per-group) recall from (in-artifacts, detected) counts.

    Rows with no gold data are kept out of averages by construction of
    RecallRow.recall.
    """
    labels: dict[SmellKind, str] = dict(group_map) if group_map else {k: k.value for k in SmellKind}
    grouped: dict[str, list[int]] = {}
    order: list[str] = []
    for kind in SmellKind:
        if kind not in counts:
            continue
        gold_total, detected = counts[kind]
        if detected > gold_total or gold_total < 0 or detected < 0:
            raise InvalidCountsError(
                f"{kind.value}: detected {detected} exceeds gold total {gold_total}"
            )
        label = labels.get(kind, kind.value)
        if label not in grouped:
            grouped[label] = [0, 0]
            order.append(label)
        grouped[label][0] += gold_total
        grouped[label][1] += detected
    rows = tuple(RecallRow(label, *grouped[label]) for label in order)
    return EvalReport(recall_rows=rows)


def report_from_matches(
    findings: Sequence[Finding],
    gold: Sequence[GoldSpan],
    policy: MatchPolicy = MatchPolicy.OVERLAP,
    group_map: Mapping[SmellKind, str] | None = None,
) -> EvalReport:
    """Precision (from verdict-carrying gold) and recall (from span matching).

    Gold records with verdicts classify tool findings, so precision counts
    come straight from them. Recall counts compare true spans (verdict
    TruePositiveLabel or no verdict) against matched findings.
    """
    precision_counts: dict[SmellKind, tuple[int, int]] = {}
    verdicts = [g for g in gold if g.verdict is not None]
    for span in verdicts:
        inspected, accepted = precision_counts.get(span.smell, (0, 0))
        precision_counts[span.smell] = (
            inspected + 1,
            accepted + (1 if span.verdict is GoldVerdict.TRUE_POSITIVE else 0),
        )

    true_spans = [g for g in gold if g.verdict in (None, GoldVerdict.TRUE_POSITIVE)]
    matches = match_findings(findings, true_spans, policy)
    matched_gold = {id(pair[0]) for pair in matches.pairs}
    recall_counts: dict[SmellKind, tuple[int, int]] = {}
    for span in true_spans:
        gold_total, detected = recall_counts.get(span.smell, (0, 0))
        recall_counts[span.smell] = (
            gold_total + 1,
            detected + (1 if id(span) in matched_gold else 0),
        )

    report = EvalReport(
        precision_rows=precision_table(precision_counts).precision_rows if precision_counts else (),
        recall_rows=recall_table(recall_counts, group_map).recall_rows if recall_counts else (),
    )
    return report


def cohen_kappa(labels_a: Sequence[Hashable], labels_b: Sequence[Hashable]) -> float:
    """Chance-corrected agreement between two equal-length label vectors."""
    if len(labels_a) != len(labels_b):
        raise EmptyInputError(
            f"label vectors differ in length: {len(labels_a)} vs {len(labels_b)}"
        )
    n = len(labels_a)
    if n == 0:
        raise EmptyInputError("cannot compute agreement over zero items")
    observed = sum(1 for a, b in zip(labels_a, labels_b) if a == b) / n
    freq_a = Counter(labels_a)
    freq_b = Counter(labels_b)
    expected = sum(freq_a[k] * freq_b.get(k, 0) for k in freq_a) / (n * n)
    if expected == 1.0:
        return 1.0
    return (observed - expected) / (1.0 - expected)


def percent_fp_agreement(fp_a: Iterable[str], fp_b: Iterable[str]) -> float:
    """Jaccard overlap of two false-positive id sets; 1.0 when both are empty."""
    a, b = set(fp_a), set(fp_b)
    union = a | b
    if not union:
        return 1.0
    return len(a & b) / len(union)


def render_eval_table(report: EvalReport) -> str:
    """Aligned plain-text tables in the published column layout."""
    lines: list[str] = []
    if report.precision_rows:
        lines.append("Precision of smell detection")
        header = ("Smell", "Inspected", "Accepted", "Rejected", "Precision")
        rows = [
            (r.label, str(r.inspected), str(r.accepted), str(r.rejected), _fmt(r.precision))
            for r in report.precision_rows
        ]
        total_inspected = sum(r.inspected for r in report.precision_rows)
        total_accepted = sum(r.accepted for r in report.precision_rows)
        rows.append(("Average", "", "", "", _fmt(report.average_precision)))
        rows.append(
            (
                "Overall",
                str(total_inspected),
                str(total_accepted),
                str(total_inspected - total_accepted),
                _fmt(report.overall_precision),
            )
        )
        lines.extend(_align(header, rows))
    if report.recall_rows:
        if lines:
            lines.append("")
        lines.append("Recall of smell detection")
        header = ("Smell", "In artifacts", "Identified", "Recall")
        rows = [
            (r.label, str(r.gold_total), str(r.detected), _fmt(r.recall))
            for r in report.recall_rows
        ]
        total_gold = sum(r.gold_total for r in report.recall_rows)
        total_detected = sum(r.detected for r in report.recall_rows)
        rows.append(("Average", "", "", _fmt(report.average_recall)))
        rows.append(("Overall", str(total_gold), str(total_detected), _fmt(report.overall_recall)))
        lines.extend(_align(header, rows))
    return "\n".join(lines)


def _fmt(value: float | None) -> str:
    return "-" if value is None else f"{value:.2f}"


def _align(header: Sequence[str], rows: Sequence[Sequence[str]]) -> list[str]:
    widths = [len(h) for h in header]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    def fmt_row(row: Sequence[str]) -> str:
        return "  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip()
    out = [fmt_row(header), fmt_row(["-" * w for w in widths])]
    out.extend(fmt_row(row) for row in rows)
    return out


def load_gold_file(path: str | Path) -> list[GoldSpan]:
    """Gold JSON: a list of finding-shaped objects plus verdict/rater_id."""
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    if isinstance(data, dict):
        data = data.get("gold", [])
    return [GoldSpan.from_dict(entry) for entry in data]
