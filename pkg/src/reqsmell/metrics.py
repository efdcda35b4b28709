"""Density statistics, user-story part breakdowns and hotspot treemaps.

The size-normalized metric throughout is findings per 1000 words, printed
half-up to one decimal. Suppressed findings are excluded from default
counts and included when reports run in include-suppressed mode; the two
figures differ by exactly the number of suppressed findings.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from typing import Iterable, Mapping, Sequence

from .ingest import RequirementItem, UserStoryParts
from .nlp import AnnotatedToken, count_words as _count_word_tokens
from .smells import Finding, SmellKind

STORY_PARTS = ("Role", "Feature", "Reason")
UNASSIGNED = "Unassigned"


def count_words(tokens_per_item: Iterable[Sequence[AnnotatedToken]]) -> int:
    """Number of tokens containing a letter or digit, summed over items."""
    return sum(_count_word_tokens(tokens) for tokens in tokens_per_item)


def compute_density(findings: int, words: int) -> float:
    """Findings per 1000 words; 0 when there are no words."""
    if words <= 0:
        return 0.0
    return findings / words * 1000.0


def round_half_up(value: float, ndigits: int = 1) -> float:
    """Decimal rounding as printed in reports (0.05 -> 0.1, not banker's)."""
    quantum = Decimal(1).scaleb(-ndigits)
    return float(Decimal(repr(value)).quantize(quantum, rounding=ROUND_HALF_UP))


@dataclass(frozen=True)
class ArtifactMetrics:
    artifact_id: str
    folder_path: tuple[str, ...]
    word_count: int
    per_smell: dict[SmellKind, int]
    suppressed_total: int = 0

    @property
    def findings_total(self) -> int:
        return sum(self.per_smell.values())

    @property
    def density_total(self) -> float:
        return compute_density(self.findings_total, self.word_count)

    def per_smell_density(self) -> dict[SmellKind, float]:
        return {
            kind: compute_density(n, self.word_count) for kind, n in self.per_smell.items()
        }

    def to_dict(self) -> dict:
        return {
            "artifact_id": self.artifact_id,
            "folder_path": list(self.folder_path),
            "word_count": self.word_count,
            "findings_total": self.findings_total,
            "per_smell": {k.value: v for k, v in sorted(self.per_smell.items(), key=lambda kv: kv[0].order)},
            "density_total": round_half_up(self.density_total),
            "per_smell_density": {
                k.value: round_half_up(v)
                for k, v in sorted(self.per_smell_density().items(), key=lambda kv: kv[0].order)
            },
            "suppressed_total": self.suppressed_total,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ArtifactMetrics":
        return cls(
            artifact_id=data["artifact_id"],
            folder_path=tuple(data.get("folder_path", ())),
            word_count=data["word_count"],
            per_smell={SmellKind(k): v for k, v in data["per_smell"].items()},
            suppressed_total=data.get("suppressed_total", 0),
        )


def artifact_metrics(
    artifact_id: str,
    folder_path: tuple[str, ...],
    tokens_per_item: Iterable[Sequence[AnnotatedToken]],
    findings: Sequence[Finding],
    include_suppressed: bool = False,
) -> ArtifactMetrics:
    """Aggregate one artifact's counts from its annotated items and findings."""
    per_smell = {kind: 0 for kind in SmellKind}
    suppressed = 0
    for finding in findings:
        if finding.suppressed_by is not None:
            suppressed += 1
            if not include_suppressed:
                continue
        per_smell[finding.smell] += 1
    per_smell = {k: v for k, v in per_smell.items() if v}
    return ArtifactMetrics(
        artifact_id=artifact_id,
        folder_path=folder_path,
        word_count=count_words(tokens_per_item),
        per_smell=per_smell,
        suppressed_total=suppressed,
    )


@dataclass(frozen=True)
class StoryPartMetrics:
    part: str
    word_count: int
    findings: int

    @property
    def density(self) -> float:
        return compute_density(self.findings, self.word_count)

    def to_dict(self) -> dict:
        return {
            "part": self.part,
            "word_count": self.word_count,
            "findings": self.findings,
            "density": round_half_up(self.density, 0),
        }


def story_part_metrics(
    stories: Sequence[tuple[UserStoryParts, Sequence[AnnotatedToken], Sequence[Finding]]],
) -> dict[str, StoryPartMetrics]:
    """Per-part word/finding tallies over a set of split user stories.

    A finding belongs to the part containing its span start. Findings and
    words outside all parts (non-conformant stories, frame words) land in
    the Unassigned bucket.
    """
    words = {part: 0 for part in (*STORY_PARTS, UNASSIGNED)}
    finds = {part: 0 for part in (*STORY_PARTS, UNASSIGNED)}
    for parts, tokens, findings in stories:
        for token in tokens:
            if not token.is_word:
                continue
            bucket = parts.part_of(token.start) or UNASSIGNED
            words[bucket] += 1
        for finding in findings:
            if finding.suppressed_by is not None:
                continue
            bucket = parts.part_of(finding.char_range[0]) or UNASSIGNED
            finds[bucket] += 1
    return {
        part: StoryPartMetrics(part=part, word_count=words[part], findings=finds[part])
        for part in (*STORY_PARTS, UNASSIGNED)
    }


@dataclass
class TreemapNode:
    """Folder-hierarchy aggregation: size by words, color by density."""

    name: str
    word_count: int = 0
    per_smell: dict[SmellKind, int] = field(default_factory=dict)
    children: list["TreemapNode"] = field(default_factory=list)
    artifact_id: str | None = None

    @property
    def findings_total(self) -> int:
        return sum(self.per_smell.values())

    @property
    def density(self) -> float:
        return compute_density(self.findings_total, self.word_count)

    def density_for(self, smell: SmellKind | None) -> float:
        if smell is None:
            return self.density
        return compute_density(self.per_smell.get(smell, 0), self.word_count)

    def to_dict(self, smell: SmellKind | None = None) -> dict:
        return {
            "name": self.name,
            "artifact_id": self.artifact_id,
            "word_count": self.word_count,
            "findings_total": self.findings_total,
            "per_smell": {k.value: v for k, v in sorted(self.per_smell.items(), key=lambda kv: kv[0].order)},
            "density": round_half_up(self.density_for(smell)),
            "children": [child.to_dict(smell) for child in self.children],
        }


def build_treemap(metrics: Sequence[ArtifactMetrics]) -> TreemapNode:
    """Mirror the corpus folder hierarchy; internal counts are child sums."""
    root = TreemapNode(name="")
    for metric in sorted(metrics, key=lambda m: (m.folder_path, m.artifact_id)):
        node = root
        for part in metric.folder_path:
            node = _child(node, part)
        leaf = _child(node, metric.artifact_id.rsplit("/", 1)[-1])
        leaf.artifact_id = metric.artifact_id
        leaf.word_count += metric.word_count
        for kind, n in metric.per_smell.items():
            leaf.per_smell[kind] = leaf.per_smell.get(kind, 0) + n
    _roll_up(root)
    return root


def _child(node: TreemapNode, name: str) -> TreemapNode:
    for child in node.children:
        if child.name == name:
            return child
    created = TreemapNode(name=name)
    node.children.append(created)
    return created


def _roll_up(node: TreemapNode) -> None:
    for child in node.children:
        _roll_up(child)
        node.word_count += child.word_count
        for kind, n in child.per_smell.items():
            node.per_smell[kind] = node.per_smell.get(kind, 0) + n


def metrics_report_csv(metrics: Sequence[ArtifactMetrics]) -> str:
    """One row per artifact plus a sum row; absolute and per-1000-words columns."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    header = ["artifact", "words", "findings", "density"]
    for kind in SmellKind:
        header.extend([f"{kind.value}_abs", f"{kind.value}_rel"])
    writer.writerow(header)

    def row(label: str, words: int, per_smell: Mapping[SmellKind, int]) -> list:
        total = sum(per_smell.values())
        cells = [label, words, total, f"{round_half_up(compute_density(total, words)):.1f}"]
        for kind in SmellKind:
            n = per_smell.get(kind, 0)
            cells.append(n)
            cells.append(f"{round_half_up(compute_density(n, words), 2):.2f}")
        return cells

    sum_words = 0
    sum_smells: dict[SmellKind, int] = {}
    for metric in metrics:
        writer.writerow(row(metric.artifact_id, metric.word_count, metric.per_smell))
        sum_words += metric.word_count
        for kind, n in metric.per_smell.items():
            sum_smells[kind] = sum_smells.get(kind, 0) + n
    writer.writerow(row("Sum", sum_words, sum_smells))
    return out.getvalue()


def metrics_report_json(metrics: Sequence[ArtifactMetrics]) -> str:
    treemap = build_treemap(metrics)
    payload = {
        "artifacts": [m.to_dict() for m in metrics],
        "treemap": treemap.to_dict(),
    }
    return json.dumps(payload, indent=2, sort_keys=True)
