"""Loading and segmentation of requirements artifacts.

Supported formats: plain text (blank-line blocks), Markdown (heading
sections), CSV (configurable id/text columns, RFC 4180) and JSON lines
(``{"artifact": ..., "item_id": ..., "text": ...}``). Each loader yields
addressable :class:`RequirementItem` units with provenance offsets.

Offset fidelity: for plain text and Markdown, an item's ``char_range`` is
an exact slice of the source. For CSV and JSON lines, quoting and escapes
can make the parsed cell differ from the raw bytes; those loaders locate
the text in the raw document on a best-effort basis and fall back to an
empty range anchored at the row/line start.
"""

from __future__ import annotations

import csv
import io
import json
import re
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path


class DocumentFormat(Enum):
    PLAIN_TEXT = "PlainText"
    MARKDOWN = "Markdown"
    CSV = "Csv"
    JSON_LINES = "JsonLines"


class ItemKind(Enum):
    FREE_TEXT = "FreeText"
    SECTIONED_TEXT = "SectionedText"
    CSV_ROW = "CsvRow"
    USER_STORY = "UserStory"


class IngestError(Exception):
    """Base class for loader failures."""


class UnreadableFileError(IngestError):
    pass


class EncodingError(IngestError):
    pass


class UnknownFormatError(IngestError):
    pass


class CsvColumnMissingError(IngestError):
    pass


class JsonShapeError(IngestError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


_EXTENSION_FORMATS = {
    ".txt": DocumentFormat.PLAIN_TEXT,
    ".text": DocumentFormat.PLAIN_TEXT,
    ".md": DocumentFormat.MARKDOWN,
    ".markdown": DocumentFormat.MARKDOWN,
    ".csv": DocumentFormat.CSV,
    ".jsonl": DocumentFormat.JSON_LINES,
    ".ndjson": DocumentFormat.JSON_LINES,
}


@dataclass(frozen=True)
class CsvConfig:
    """Names of the CSV columns that hold item ids and requirement text."""

    id_col: str
    text_col: str
    delimiter: str = ","


@dataclass(frozen=True)
class SourceDocument:
    path: str
    format: DocumentFormat
    raw_text: str
    folder_path: tuple[str, ...] = ()

    @property
    def artifact_id(self) -> str:
        name = Path(self.path).name
        return "/".join((*self.folder_path, name)) if self.folder_path else name


@dataclass(frozen=True)
class RequirementItem:
    item_id: str
    artifact_id: str
    text: str
    char_range: tuple[int, int]
    kind: ItemKind


@dataclass(frozen=True)
class UserStoryParts:
    """Connextra split of a user story: "As a [role], I want [feature], so that [reason]"."""

    conformant: bool
    role: tuple[int, int] | None = None
    feature: tuple[int, int] | None = None
    reason: tuple[int, int] | None = None

    def part_of(self, offset: int) -> str | None:
        """Name of the part whose span contains the offset, if any."""
        for name, span in (("Role", self.role), ("Feature", self.feature), ("Reason", self.reason)):
            if span is not None and span[0] <= offset < span[1]:
                return name
        return None


def detect_format(path: str | Path) -> DocumentFormat | None:
    return _EXTENSION_FORMATS.get(Path(path).suffix.lower())


def load_document(
    path: str | Path,
    format_hint: DocumentFormat | None = None,
    csv_config: CsvConfig | None = None,
    root: str | Path | None = None,
) -> SourceDocument:
    """Read a file into a SourceDocument, inferring the format from the extension.

    ``root`` anchors the folder decomposition used for hotspot grouping;
    without it the document sits at the top level.
    """
    p = Path(path)
    fmt = format_hint or detect_format(p)
    if fmt is None:
        raise UnknownFormatError(f"cannot infer format from extension: {p}")
    try:
        raw = p.read_bytes()
    except OSError as exc:
        raise UnreadableFileError(f"cannot read {p}: {exc}") from exc
    try:
        text = raw.decode("utf-8-sig")
    except UnicodeDecodeError as exc:
        raise EncodingError(f"{p} is not valid UTF-8: {exc}") from exc

    folder: tuple[str, ...] = ()
    if root is not None:
        try:
            relative = p.resolve().relative_to(Path(root).resolve())
            folder = relative.parts[:-1]
        except ValueError:
            folder = ()
    return SourceDocument(path=str(p), format=fmt, raw_text=text, folder_path=folder)


def segment(doc: SourceDocument, csv_config: CsvConfig | None = None) -> list[RequirementItem]:
    """Split a document into requirement items according to its format."""
    if doc.format is DocumentFormat.PLAIN_TEXT:
        return _segment_blocks(doc)
    if doc.format is DocumentFormat.MARKDOWN:
        return _segment_markdown(doc)
    if doc.format is DocumentFormat.CSV:
        if csv_config is None:
            raise CsvColumnMissingError(
                f"{doc.path}: CSV input needs id/text column names (csv_config)"
            )
        return _segment_csv(doc, csv_config)
    if doc.format is DocumentFormat.JSON_LINES:
        return _segment_jsonl(doc)
    raise UnknownFormatError(f"unsupported format {doc.format}")


def _trimmed_span(text: str, start: int, end: int) -> tuple[int, int]:
    while start < end and text[start].isspace():
        start += 1
    while end > start and text[end - 1].isspace():
        end -= 1
    return start, end


def _segment_blocks(doc: SourceDocument) -> list[RequirementItem]:
    """One item per blank-line-separated block."""
    items: list[RequirementItem] = []
    text = doc.raw_text
    cursor = 0
    ordinal = 0
    for block in re.split(r"\n\s*\n", text):
        start = text.index(block, cursor)
        cursor = start + len(block)
        s, e = _trimmed_span(text, start, start + len(block))
        if e <= s:
            continue
        ordinal += 1
        items.append(
            RequirementItem(
                item_id=str(ordinal),
                artifact_id=doc.artifact_id,
                text=text[s:e],
                char_range=(s, e),
                kind=ItemKind.FREE_TEXT,
            )
        )
    return items


_HEADING_RE = re.compile(r"^(#{1,6})\s+(.*?)\s*#*\s*$", re.MULTILINE)


def _segment_markdown(doc: SourceDocument) -> list[RequirementItem]:
    text = doc.raw_text
    headings = list(_HEADING_RE.finditer(text))
    items: list[RequirementItem] = []
    seen_ids: set[str] = set()

    def add(item_id: str, start: int, end: int) -> None:
        s, e = _trimmed_span(text, start, end)
        if e <= s:
            return
        unique = item_id
        ordinal = 2
        while unique in seen_ids:
            unique = f"{item_id}-{ordinal}"
            ordinal += 1
        seen_ids.add(unique)
        items.append(
            RequirementItem(
                item_id=unique,
                artifact_id=doc.artifact_id,
                text=text[s:e],
                char_range=(s, e),
                kind=ItemKind.SECTIONED_TEXT,
            )
        )

    if not headings:
        for item in _segment_blocks(doc):
            items.append(
                RequirementItem(
                    item_id=item.item_id,
                    artifact_id=item.artifact_id,
                    text=item.text,
                    char_range=item.char_range,
                    kind=ItemKind.SECTIONED_TEXT,
                )
            )
        return items

    if headings[0].start() > 0:
        add("0", 0, headings[0].start())
    for index, match in enumerate(headings):
        end = headings[index + 1].start() if index + 1 < len(headings) else len(text)
        add(f"{index + 1}-{match.group(2).strip()}", match.start(), end)
    return items


def _segment_csv(doc: SourceDocument, config: CsvConfig) -> list[RequirementItem]:
    reader = csv.DictReader(io.StringIO(doc.raw_text), delimiter=config.delimiter)
    fields = reader.fieldnames or []
    for column in (config.id_col, config.text_col):
        if column not in fields:
            raise CsvColumnMissingError(
                f"{doc.path}: column {column!r} not in header {fields}"
            )
    items: list[RequirementItem] = []
    seen: set[str] = set()
    cursor = 0
    for row_number, row in enumerate(reader, start=2):
        text = (row.get(config.text_col) or "").strip()
        if not text:
            continue
        item_id = (row.get(config.id_col) or "").strip() or f"row{row_number}"
        item_id = _dedup(item_id, seen)
        found = doc.raw_text.find(text, cursor)
        if found >= 0:
            char_range = (found, found + len(text))
            cursor = found + len(text)
        else:
            char_range = (cursor, cursor)
        items.append(
            RequirementItem(
                item_id=item_id,
                artifact_id=doc.artifact_id,
                text=text,
                char_range=char_range,
                kind=ItemKind.CSV_ROW,
            )
        )
    return items


def _dedup(item_id: str, seen: set[str]) -> str:
    unique = item_id
    ordinal = 2
    while unique in seen:
        unique = f"{item_id}-{ordinal}"
        ordinal += 1
    seen.add(unique)
    return unique


def _segment_jsonl(doc: SourceDocument) -> list[RequirementItem]:
    items: list[RequirementItem] = []
    seen: dict[str, set[str]] = {}
    offset = 0
    for line_number, line in enumerate(doc.raw_text.splitlines(keepends=True), start=1):
        stripped = line.strip()
        line_start = offset
        offset += len(line)
        if not stripped:
            continue
        try:
            obj = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise JsonShapeError(f"invalid JSON ({exc.msg})", line_number) from exc
        if not isinstance(obj, dict):
            raise JsonShapeError("expected a JSON object", line_number)
        missing = [key for key in ("artifact", "item_id", "text") if key not in obj]
        if missing:
            raise JsonShapeError(f"missing keys {missing}", line_number)
        text = str(obj["text"]).strip()
        if not text:
            continue
        found = doc.raw_text.find(text, line_start, offset)
        char_range = (found, found + len(text)) if found >= 0 else (line_start, line_start)
        artifact = str(obj["artifact"])
        items.append(
            RequirementItem(
                item_id=_dedup(str(obj["item_id"]), seen.setdefault(artifact, set())),
                artifact_id=artifact,
                text=text,
                char_range=char_range,
                kind=ItemKind.USER_STORY if _STORY_RE.match(text) else ItemKind.FREE_TEXT,
            )
        )
    return items


# "As a(n) <role>, I want <feature>(, )so that <reason>" -- tolerant of
# "I want to"/"I want that" and of a missing comma before "so that".
_STORY_RE = re.compile(
    r"^\s*As\s+an?\s+(?P<role>.+?),\s*I\s+want\s+(?P<feature>.+?)"
    r"(?:,?\s*so\s+that\s+(?P<reason>.+?))?\s*$",
    re.IGNORECASE | re.DOTALL,
)


def split_user_story(item: RequirementItem) -> UserStoryParts:
    """Split an item into Connextra parts; non-conformance is a result, not an error."""
    return split_story_text(item.text)


def split_story_text(text: str) -> UserStoryParts:
    match = _STORY_RE.match(text)
    if match is None or not match.group("feature").strip():
        span = _trimmed_span(text, 0, len(text))
        return UserStoryParts(conformant=False, feature=span if span[1] > span[0] else None)
    reason = match.span("reason") if match.group("reason") is not None else None
    return UserStoryParts(
        conformant=True,
        role=match.span("role"),
        feature=match.span("feature"),
        reason=reason,
    )
