"""Data model for smell detection: kinds, dictionaries, findings, config."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path


class SmellKind(Enum):
    SUBJECTIVE_LANGUAGE = "SubjectiveLanguage"
    AMBIGUOUS_ADVERBS_ADJECTIVES = "AmbiguousAdverbsAdjectives"
    LOOPHOLES = "Loopholes"
    NON_VERIFIABLE_TERMS = "NonVerifiableTerms"
    SUPERLATIVES = "Superlatives"
    COMPARATIVES = "Comparatives"
    NEGATIVE_STATEMENTS = "NegativeStatements"
    VAGUE_PRONOUNS = "VaguePronouns"

    @property
    def order(self) -> int:
        return _KIND_ORDER[self]


_KIND_ORDER = {kind: i for i, kind in enumerate(SmellKind)}

# Smells detected by matching lemma phrases against a word list.
DICTIONARY_SMELLS = (
    SmellKind.SUBJECTIVE_LANGUAGE,
    SmellKind.AMBIGUOUS_ADVERBS_ADJECTIVES,
    SmellKind.LOOPHOLES,
    SmellKind.NON_VERIFIABLE_TERMS,
)


class Suppression(Enum):
    CONDITION = "ConditionHeuristic"
    NUMERIC_COMPARISON = "NumericComparisonHeuristic"


class MissingDictionaryError(Exception):
    def __init__(self, smell: SmellKind):
        super().__init__(f"no dictionary loaded for enabled smell {smell.value}")
        self.smell = smell


@dataclass(frozen=True)
class Dictionary:
    """Lemma phrases owned by one dictionary-mechanism smell."""

    smell: SmellKind
    phrases: frozenset[tuple[str, ...]]

    def __post_init__(self) -> None:
        for phrase in self.phrases:
            if not phrase or any(not w for w in phrase):
                raise ValueError(f"{self.smell.value}: empty phrase {phrase!r}")
            if any(w != w.lower() for w in phrase):
                raise ValueError(f"{self.smell.value}: phrase not lowercase {phrase!r}")

    @property
    def max_len(self) -> int:
        return max((len(p) for p in self.phrases), default=0)


@dataclass(frozen=True)
class Finding:
    """One smell instance in one requirement item.

    ``token_span`` is inclusive over the item's word tokens; ``char_range``
    is the exact item-text slice covering them. ``finding_id`` is a content
    hash, so re-analysis of unchanged text reproduces the same id and
    review verdicts can re-attach across runs.
    """

    smell: SmellKind
    artifact_id: str
    item_id: str
    token_span: tuple[int, int]
    char_range: tuple[int, int]
    matched_text: str
    message: str
    improvement_hint: str
    suppressed_by: Suppression | None = None
    finding_id: str = ""

    def __post_init__(self) -> None:
        if not self.finding_id:
            object.__setattr__(self, "finding_id", self.compute_id())

    def compute_id(self) -> str:
        payload = "\x1f".join(
            (
                self.artifact_id,
                self.item_id,
                self.smell.value,
                str(self.char_range[0]),
                str(self.char_range[1]),
            )
        )
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()[:16]

    def with_suppression(self, suppression: Suppression | None) -> "Finding":
        return replace(self, suppressed_by=suppression)

    def to_dict(self) -> dict:
        return {
            "finding_id": self.finding_id,
            "smell": self.smell.value,
            "artifact_id": self.artifact_id,
            "item_id": self.item_id,
            "token_span": list(self.token_span),
            "char_range": list(self.char_range),
            "matched_text": self.matched_text,
            "message": self.message,
            "improvement_hint": self.improvement_hint,
            "suppressed_by": self.suppressed_by.value if self.suppressed_by else None,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Finding":
        return cls(
            smell=SmellKind(data["smell"]),
            artifact_id=data["artifact_id"],
            item_id=data["item_id"],
            token_span=tuple(data["token_span"]),
            char_range=tuple(data["char_range"]),
            matched_text=data["matched_text"],
            message=data["message"],
            improvement_hint=data["improvement_hint"],
            suppressed_by=Suppression(data["suppressed_by"]) if data.get("suppressed_by") else None,
            finding_id=data.get("finding_id", ""),
        )


@dataclass(frozen=True)
class DetectorConfig:
    enabled_smells: frozenset[SmellKind] = frozenset(SmellKind)
    enable_condition_suppression: bool = False
    enable_numeric_comparison_suppression: bool = False
    dictionary_dir: Path | None = None

    def __post_init__(self) -> None:
        if not self.enabled_smells:
            raise ValueError("an analysis run needs at least one enabled smell")


IMPROVEMENT_HINTS: dict[SmellKind, str] = {
    SmellKind.SUBJECTIVE_LANGUAGE: (
        "Replace the subjective wording with objective, measurable criteria: "
        "state who verifies the property and how."
    ),
    SmellKind.AMBIGUOUS_ADVERBS_ADJECTIVES: (
        "Quantify the adverb or adjective: give a concrete threshold, range or "
        "reference value instead of an unspecific qualifier."
    ),
    SmellKind.LOOPHOLES: (
        "State the requirement bindingly: use 'must' and define the exact "
        "extent instead of an escape phrase."
    ),
    SmellKind.NON_VERIFIABLE_TERMS: (
        "Define testable acceptance values for this term so verification does "
        "not depend on opinion."
    ),
    SmellKind.SUPERLATIVES: (
        "Avoid claims relative to all other systems; specify the concrete "
        "target value to achieve."
    ),
    SmellKind.COMPARATIVES: (
        "State an absolute target instead of a relation to another system or "
        "situation, which may change over time."
    ),
    SmellKind.NEGATIVE_STATEMENTS: (
        "Describe what the system does; if behavior must be excluded, also "
        "specify the system's reaction to that case."
    ),
    SmellKind.VAGUE_PRONOUNS: (
        "Repeat the noun the pronoun stands for so the reference cannot be "
        "misread."
    ),
}

MESSAGES: dict[SmellKind, str] = {
    SmellKind.SUBJECTIVE_LANGUAGE: "subjective language: {text!r} has no objective meaning",
    SmellKind.AMBIGUOUS_ADVERBS_ADJECTIVES: "ambiguous adverb/adjective: {text!r} is unspecific",
    SmellKind.LOOPHOLES: "loophole: {text!r} weakens the binding force of the requirement",
    SmellKind.NON_VERIFIABLE_TERMS: "non-verifiable term: {text!r} cannot be tested as stated",
    SmellKind.SUPERLATIVES: "superlative: {text!r} relates the system to all others",
    SmellKind.COMPARATIVES: "comparative: {text!r} relates the system to something else",
    SmellKind.NEGATIVE_STATEMENTS: "negative statement: {text!r} specifies absent capability",
    SmellKind.VAGUE_PRONOUNS: "vague pronoun: {text!r} needs interpretation of its reference",
}


def finding_message(kind: SmellKind, matched_text: str) -> str:
    return MESSAGES[kind].format(text=matched_text)
