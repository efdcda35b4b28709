"""End-to-end analysis: files -> items -> annotations -> findings -> metrics.

This is the shared orchestration behind both the CLI and the review
service. Per-file work is pure, so it can fan out over a thread pool; the
assembled output is sorted by artifact and offset and therefore identical
regardless of scheduling.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Sequence

from .ingest import (
    CsvConfig,
    DocumentFormat,
    IngestError,
    RequirementItem,
    SourceDocument,
    load_document,
    segment,
)
from .metrics import ArtifactMetrics, artifact_metrics
from .nlp import AnnotatedToken, Lexicon, annotate_text, load_lexicon
from .smells import DetectorConfig, Dictionary, Finding, SmellKind, detect, load_dictionaries

SUPPORTED_SUFFIXES = (".txt", ".text", ".md", ".markdown", ".csv", ".jsonl", ".ndjson")


@dataclass(frozen=True)
class AnalysisConfig:
    format_hint: DocumentFormat | None = None
    csv_config: CsvConfig | None = None
    lexicon_dir: Path | None = None
    dictionary_dir: Path | None = None
    detector: DetectorConfig = DetectorConfig()
    jobs: int = 1


@dataclass
class AnalyzedItem:
    item: RequirementItem
    tokens: list[AnnotatedToken]
    findings: list[Finding]


@dataclass
class AnalyzedArtifact:
    document: SourceDocument
    items: list[AnalyzedItem]

    @property
    def artifact_id(self) -> str:
        ids = {i.item.artifact_id for i in self.items}
        return ids.pop() if len(ids) == 1 else self.document.artifact_id

    def findings(self) -> list[Finding]:
        return [f for analyzed in self.items for f in analyzed.findings]


@dataclass
class AnalysisResult:
    artifacts: list[AnalyzedArtifact] = field(default_factory=list)
    diagnostics: list[str] = field(default_factory=list)

    def items(self) -> list[AnalyzedItem]:
        return [analyzed for artifact in self.artifacts for analyzed in artifact.items]

    def findings(self) -> list[Finding]:
        ordered = [f for artifact in self.artifacts for f in artifact.findings()]
        ordered.sort(key=lambda f: (f.artifact_id, f.item_id, f.char_range, f.smell.order))
        return ordered

    def metrics(self, include_suppressed: bool = False) -> list[ArtifactMetrics]:
        out: list[ArtifactMetrics] = []
        for artifact in self.artifacts:
            grouped: dict[str, list[AnalyzedItem]] = {}
            for analyzed in artifact.items:
                grouped.setdefault(analyzed.item.artifact_id, []).append(analyzed)
            for artifact_id in sorted(grouped):
                rows = grouped[artifact_id]
                out.append(
                    artifact_metrics(
                        artifact_id=artifact_id,
                        folder_path=artifact.document.folder_path,
                        tokens_per_item=[r.tokens for r in rows],
                        findings=[f for r in rows for f in r.findings],
                        include_suppressed=include_suppressed,
                    )
                )
        out.sort(key=lambda m: m.artifact_id)
        return out


def bundled_fixture_corpus() -> Path:
    """Plain-text corpus of the canonical example sentence per smell."""
    return Path(resources.files("reqsmell").joinpath("data/fixtures/smell_examples.txt"))  # type: ignore[arg-type]


def collect_input_files(inputs: Sequence[str | Path]) -> list[Path]:
    """Expand files and directories into a sorted list of analyzable files."""
    files: list[Path] = []
    for entry in inputs:
        path = Path(entry)
        if path.is_dir():
            files.extend(
                p
                for p in sorted(path.rglob("*"))
                if p.is_file() and p.suffix.lower() in SUPPORTED_SUFFIXES
            )
        else:
            files.append(path)
    return sorted(dict.fromkeys(files))


def analyze_paths(
    inputs: Sequence[str | Path],
    config: AnalysisConfig | None = None,
    lexicon: Lexicon | None = None,
    dictionaries: dict[SmellKind, Dictionary] | None = None,
    root: Path | None = None,
) -> AnalysisResult:
    """Analyze files/directories; a bad file is skipped with a diagnostic."""
    config = config or AnalysisConfig()
    lexicon = lexicon or load_lexicon(config.lexicon_dir)
    dictionaries = dictionaries if dictionaries is not None else load_dictionaries(
        config.dictionary_dir, lexicon
    )
    files = collect_input_files(inputs)
    if root is None:
        roots = {p if p.is_dir() else p.parent for p in map(Path, inputs)}
        root = roots.pop() if len(roots) == 1 else None

    result = AnalysisResult()

    def analyze_file(path: Path) -> AnalyzedArtifact | str:
        try:
            document = load_document(
                path, config.format_hint, config.csv_config, root=root
            )
            items = segment(document, config.csv_config)
        except IngestError as exc:
            return f"{path}: {exc}"
        analyzed_items = []
        for item in items:
            tokens = annotate_text(item.text, lexicon)
            findings = detect(item, tokens, config.detector, dictionaries)
            analyzed_items.append(AnalyzedItem(item=item, tokens=tokens, findings=findings))
        return AnalyzedArtifact(document=document, items=analyzed_items)

    jobs = max(1, config.jobs)
    if jobs == 1 or len(files) <= 1:
        outcomes = [analyze_file(path) for path in files]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(analyze_file, files))

    for outcome in outcomes:
        if isinstance(outcome, str):
            result.diagnostics.append(outcome)
        else:
            result.artifacts.append(outcome)
    result.artifacts.sort(key=lambda a: a.document.path)
    return result


def findings_to_json(findings: Sequence[Finding]) -> str:
    """Canonical findings serialization: stable key order, no volatile fields."""
    return json.dumps([f.to_dict() for f in findings], indent=2, sort_keys=True)
