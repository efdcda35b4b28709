"""Run persistence and review verdicts.

Layout under the store root:

    runs/<run_id>/run.json        analysis header (timestamps live here only)
    runs/<run_id>/items.jsonl     one requirement item per line
    runs/<run_id>/findings.jsonl  one finding per line, deterministic order
    runs/<run_id>/metrics.jsonl   one artifact's metrics per line
    runs/<run_id>/reviews.jsonl   append-only review log (full history)
    runs/<run_id>/reviews.json    compacted snapshot, latest record per finding

The run id is a content hash over the analyzed items and detector settings,
so re-analyzing unchanged input lands in the same run directory with
byte-identical findings, and review verdicts keep applying. Analyzing a
changed corpus creates a new run; prior verdicts re-attach wherever a
finding id (itself a content hash) reappears.
"""

from __future__ import annotations

import datetime as _dt
import hashlib
import json
import os
import threading
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from ..metrics import ArtifactMetrics, TreemapNode, build_treemap
from ..pipeline import AnalysisConfig, AnalysisResult, analyze_paths, findings_to_json
from ..smells import Finding, SmellKind

REVIEW_OPEN = "open"
REVIEW_ACCEPTED = "accepted"
REVIEW_REJECTED = "rejected"
_CANONICAL_STATUSES = (REVIEW_OPEN, REVIEW_ACCEPTED, REVIEW_REJECTED)


class UnknownRunError(KeyError):
    pass


class UnknownFindingError(KeyError):
    pass


class InvalidReviewError(ValueError):
    pass


@dataclass(frozen=True)
class ReviewRecord:
    """Latest human verdict on one finding; rejected findings are blacklisted."""

    finding_id: str
    status: str
    custom: bool
    comment: str | None = None
    reviewer: str | None = None
    updated_at: str = ""

    @property
    def rejected(self) -> bool:
        return not self.custom and self.status == REVIEW_REJECTED

    def to_dict(self) -> dict:
        return {
            "finding_id": self.finding_id,
            "status": self.status,
            "custom": self.custom,
            "comment": self.comment,
            "reviewer": self.reviewer,
            "updated_at": self.updated_at,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ReviewRecord":
        return cls(
            finding_id=data["finding_id"],
            status=data["status"],
            custom=data.get("custom", False),
            comment=data.get("comment"),
            reviewer=data.get("reviewer"),
            updated_at=data.get("updated_at", ""),
        )


def normalize_status(status: object) -> tuple[str, bool]:
    """Map a request status to (canonical value, is_custom); custom labels
    round-trip verbatim."""
    if not isinstance(status, str) or not status.strip():
        raise InvalidReviewError("status must be a non-empty string")
    stripped = status.strip()
    if stripped.lower() in _CANONICAL_STATUSES:
        return stripped.lower(), False
    return stripped, True


def _atomic_write(path: Path, text: str) -> None:
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(text, encoding="utf-8")
    os.replace(tmp, path)


class RunStore:
    """Filesystem-backed store for analysis runs and their reviews.

    Reads are lock-free over immutable run data; review writes serialize
    through one lock and use append-plus-atomic-snapshot so a crash cannot
    leave a half-written store.
    """

    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self._write_lock = threading.Lock()

    # -- run lifecycle ----------------------------------------------------

    def analyze_and_store(
        self,
        corpus_paths: Sequence[str | Path],
        config: AnalysisConfig | None = None,
    ) -> str:
        config = config or AnalysisConfig()
        result = analyze_paths(corpus_paths, config)
        return self.store_result(result, config, corpus_paths)

    def store_result(
        self,
        result: AnalysisResult,
        config: AnalysisConfig | None = None,
        corpus_paths: Sequence[str | Path] = (),
    ) -> str:
        config = config or AnalysisConfig()
        findings = result.findings()
        run_id = self._run_id(result, config)
        run_dir = self.run_dir(run_id)
        existing_reviews = self._reviews_if_any(run_dir)
        carried = self._carry_over_reviews({f.finding_id for f in findings})
        carried.update(existing_reviews)

        run_dir.mkdir(parents=True, exist_ok=True)
        _atomic_write(
            run_dir / "items.jsonl",
            "".join(
                json.dumps(
                    {
                        "artifact_id": a.item.artifact_id,
                        "item_id": a.item.item_id,
                        "text": a.item.text,
                        "char_range": list(a.item.char_range),
                        "kind": a.item.kind.value,
                    },
                    sort_keys=True,
                )
                + "\n"
                for a in result.items()
            ),
        )
        _atomic_write(
            run_dir / "findings.jsonl",
            "".join(json.dumps(f.to_dict(), sort_keys=True) + "\n" for f in findings),
        )
        _atomic_write(
            run_dir / "metrics.jsonl",
            "".join(
                json.dumps(m.to_dict(), sort_keys=True) + "\n" for m in result.metrics()
            ),
        )
        header = {
            "run_id": run_id,
            "created_at": _dt.datetime.now(_dt.timezone.utc).isoformat(),
            "inputs": [str(p) for p in corpus_paths],
            "artifact_count": len(result.metrics()),
            "finding_count": len(findings),
            "diagnostics": result.diagnostics,
        }
        _atomic_write(run_dir / "run.json", json.dumps(header, indent=2, sort_keys=True))
        if carried:
            log_lines = "".join(
                json.dumps(r.to_dict(), sort_keys=True) + "\n" for r in carried.values()
            )
            if not (run_dir / "reviews.jsonl").exists():
                _atomic_write(run_dir / "reviews.jsonl", log_lines)
            self._write_snapshot(run_dir, carried)
        return run_id

    def _run_id(self, result: AnalysisResult, config: AnalysisConfig) -> str:
        hasher = hashlib.sha256()
        for analyzed in result.items():
            item = analyzed.item
            hasher.update(
                f"{item.artifact_id}\x1f{item.item_id}\x1f{item.text}\x1e".encode("utf-8")
            )
        detector = config.detector
        hasher.update(
            json.dumps(
                {
                    "smells": sorted(k.value for k in detector.enabled_smells),
                    "condition": detector.enable_condition_suppression,
                    "numeric": detector.enable_numeric_comparison_suppression,
                },
                sort_keys=True,
            ).encode("utf-8")
        )
        return hasher.hexdigest()[:12]

    def _carry_over_reviews(self, finding_ids: set[str]) -> dict[str, ReviewRecord]:
        latest: dict[str, ReviewRecord] = {}
        for run_id in self.list_runs():
            for finding_id, record in self._reviews_if_any(self.run_dir(run_id)).items():
                if finding_id not in finding_ids:
                    continue
                current = latest.get(finding_id)
                if current is None or record.updated_at >= current.updated_at:
                    latest[finding_id] = record
        return latest

    # -- accessors ----------------------------------------------------------

    def run_dir(self, run_id: str) -> Path:
        return self.root / run_id

    def list_runs(self) -> list[str]:
        return sorted(
            p.name for p in self.root.iterdir() if (p / "run.json").is_file()
        ) if self.root.is_dir() else []

    def run_header(self, run_id: str) -> dict:
        path = self.run_dir(run_id) / "run.json"
        if not path.is_file():
            raise UnknownRunError(run_id)
        return json.loads(path.read_text(encoding="utf-8"))

    def items(self, run_id: str) -> list[dict]:
        return self._read_jsonl(run_id, "items.jsonl")

    def findings(self, run_id: str) -> list[Finding]:
        return [Finding.from_dict(d) for d in self._read_jsonl(run_id, "findings.jsonl")]

    def metrics(self, run_id: str) -> list[ArtifactMetrics]:
        return [ArtifactMetrics.from_dict(d) for d in self._read_jsonl(run_id, "metrics.jsonl")]

    def treemap(self, run_id: str) -> TreemapNode:
        return build_treemap(self.metrics(run_id))

    def _read_jsonl(self, run_id: str, name: str) -> list[dict]:
        path = self.run_dir(run_id) / name
        if not path.is_file():
            raise UnknownRunError(run_id)
        return [
            json.loads(line)
            for line in path.read_text(encoding="utf-8").splitlines()
            if line.strip()
        ]

    # -- reviews --------------------------------------------------------------

    def reviews(self, run_id: str) -> dict[str, ReviewRecord]:
        run_dir = self.run_dir(run_id)
        if not (run_dir / "run.json").is_file():
            raise UnknownRunError(run_id)
        return self._reviews_if_any(run_dir)

    def _reviews_if_any(self, run_dir: Path) -> dict[str, ReviewRecord]:
        snapshot = run_dir / "reviews.json"
        if snapshot.is_file():
            data = json.loads(snapshot.read_text(encoding="utf-8"))
            return {k: ReviewRecord.from_dict(v) for k, v in data.items()}
        log = run_dir / "reviews.jsonl"
        records: dict[str, ReviewRecord] = {}
        if log.is_file():
            for line in log.read_text(encoding="utf-8").splitlines():
                if line.strip():
                    record = ReviewRecord.from_dict(json.loads(line))
                    records[record.finding_id] = record
        return records

    def review(
        self,
        run_id: str,
        finding_id: str,
        status: object,
        comment: str | None = None,
        reviewer: str | None = None,
    ) -> ReviewRecord:
        """Record a verdict; last write wins, history stays in the log."""
        canonical, custom = normalize_status(status)
        with self._write_lock:
            known = {f.finding_id for f in self.findings(run_id)}
            if finding_id not in known:
                raise UnknownFindingError(finding_id)
            record = ReviewRecord(
                finding_id=finding_id,
                status=canonical,
                custom=custom,
                comment=comment,
                reviewer=reviewer,
                updated_at=_dt.datetime.now(_dt.timezone.utc).isoformat(),
            )
            run_dir = self.run_dir(run_id)
            with (run_dir / "reviews.jsonl").open("a", encoding="utf-8") as log:
                log.write(json.dumps(record.to_dict(), sort_keys=True) + "\n")
            records = self._reviews_if_any(run_dir)
            records[finding_id] = record
            self._write_snapshot(run_dir, records)
        return record

    def _write_snapshot(self, run_dir: Path, records: dict[str, ReviewRecord]) -> None:
        _atomic_write(
            run_dir / "reviews.json",
            json.dumps(
                {k: v.to_dict() for k, v in sorted(records.items())},
                indent=2,
                sort_keys=True,
            ),
        )

    def blacklist(self, run_id: str) -> set[str]:
        """Finding ids whose latest review verdict is rejected."""
        return {fid for fid, rec in self.reviews(run_id).items() if rec.rejected}

    # -- filtered listings -----------------------------------------------------

    def listed_findings(
        self,
        run_id: str,
        include_rejected: bool = False,
        include_suppressed: bool = False,
        smells: Iterable[SmellKind] | None = None,
    ) -> list[Finding]:
        """Findings as shown by default: rejected and suppressed are hidden
        unless asked for, and a smell filter keeps only the selected kinds."""
        wanted = set(smells) if smells is not None else None
        rejected = self.blacklist(run_id)
        out = []
        for finding in self.findings(run_id):
            if not include_rejected and finding.finding_id in rejected:
                continue
            if not include_suppressed and finding.suppressed_by is not None:
                continue
            if wanted is not None and finding.smell not in wanted:
                continue
            out.append(finding)
        return out
