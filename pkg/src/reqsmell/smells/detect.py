"""The eight smell detectors.

Detection mechanisms per smell: dictionary matching on lemmas (subjective
language, ambiguous adverbs/adjectives, loopholes, non-verifiable terms),
morphological degree analysis (superlatives, comparatives), POS tagging
plus a word list (negative statements) and substituting-pronoun tagging
(vague pronouns).

Findings of different kinds may overlap and are all reported; disabling a
smell removes exactly that kind's findings. The optional heuristics for
conditional negations and numeric comparisons never drop findings, they
only set ``suppressed_by`` so reports can exclude recognized false
positives while raw output stays complete.
"""

from __future__ import annotations

from typing import Mapping, Sequence

from ..ingest import RequirementItem, UserStoryParts, split_story_text
from ..nlp import AnnotatedToken, Degree, PosTag
from .model import (
    DICTIONARY_SMELLS,
    DetectorConfig,
    Dictionary,
    Finding,
    MissingDictionaryError,
    SmellKind,
    Suppression,
    finding_message,
)

_CLAUSE_OPENERS = frozenset({"if", "unless", "when"})
_STORY_FIRST_PERSON = frozenset({"i", "me", "my", "myself", "we", "us", "our", "ourselves"})


def detect(
    item: RequirementItem,
    tokens: Sequence[AnnotatedToken],
    config: DetectorConfig,
    dictionaries: Mapping[SmellKind, Dictionary],
) -> list[Finding]:
    """Run every enabled detector over one annotated item."""
    findings: list[Finding] = []
    for smell in DICTIONARY_SMELLS:
        if smell not in config.enabled_smells:
            continue
        dictionary = dictionaries.get(smell)
        if dictionary is None:
            raise MissingDictionaryError(smell)
        findings.extend(detect_dictionary_smell(item, tokens, dictionary))
    for smell in (SmellKind.SUPERLATIVES, SmellKind.COMPARATIVES):
        if smell in config.enabled_smells:
            findings.extend(detect_degree_smell(item, tokens, smell, config))
    if SmellKind.NEGATIVE_STATEMENTS in config.enabled_smells:
        negations = dictionaries.get(SmellKind.NEGATIVE_STATEMENTS)
        if negations is None:
            raise MissingDictionaryError(SmellKind.NEGATIVE_STATEMENTS)
        findings.extend(detect_negative_statements(item, tokens, negations, config))
    if SmellKind.VAGUE_PRONOUNS in config.enabled_smells:
        findings.extend(detect_vague_pronouns(item, tokens))
    findings.sort(key=lambda f: (f.char_range, f.smell.order))
    return findings


def _make_finding(
    item: RequirementItem,
    tokens: Sequence[AnnotatedToken],
    smell: SmellKind,
    first: int,
    last: int,
    suppressed_by: Suppression | None = None,
) -> Finding:
    start = tokens[first].start
    end = tokens[last].end
    matched = item.text[start:end]
    return Finding(
        smell=smell,
        artifact_id=item.artifact_id,
        item_id=item.item_id,
        token_span=(first, last),
        char_range=(start, end),
        matched_text=matched,
        message=finding_message(smell, matched),
        improvement_hint=_hint(smell),
        suppressed_by=suppressed_by,
    )


def _hint(smell: SmellKind) -> str:
    from .model import IMPROVEMENT_HINTS

    return IMPROVEMENT_HINTS[smell]


def detect_dictionary_smell(
    item: RequirementItem,
    tokens: Sequence[AnnotatedToken],
    dictionary: Dictionary,
) -> list[Finding]:
    """Greedy longest-phrase match over each sentence's word-lemma sequence."""
    findings: list[Finding] = []
    if not dictionary.phrases:
        return findings
    max_len = dictionary.max_len
    for sentence_tokens in _by_sentence(tokens):
        words = [i for i in sentence_tokens if tokens[i].pos is not PosTag.PUNCT]
        pos = 0
        while pos < len(words):
            matched_len = 0
            for length in range(min(max_len, len(words) - pos), 0, -1):
                phrase = tuple(tokens[words[pos + k]].lemma for k in range(length))
                if phrase in dictionary.phrases:
                    matched_len = length
                    break
            if matched_len:
                findings.append(
                    _make_finding(
                        item,
                        tokens,
                        dictionary.smell,
                        words[pos],
                        words[pos + matched_len - 1],
                    )
                )
                pos += matched_len
            else:
                pos += 1
    return findings


def detect_degree_smell(
    item: RequirementItem,
    tokens: Sequence[AnnotatedToken],
    kind: SmellKind,
    config: DetectorConfig,
) -> list[Finding]:
    """One finding per comparative or superlative token.

    A periphrastically graded token reports a span that includes its
    "more"/"most"/"less"/"least" marker. With the numeric-comparison
    heuristic on, a comparative followed in its sentence by "than" and a
    number is flagged as suppressed: the comparison targets an absolute
    value, not another system.
    """
    if kind not in (SmellKind.SUPERLATIVES, SmellKind.COMPARATIVES):
        raise ValueError(f"not a degree smell: {kind}")
    wanted = Degree.COMPARATIVE if kind is SmellKind.COMPARATIVES else Degree.SUPERLATIVE
    findings: list[Finding] = []
    for i, token in enumerate(tokens):
        if token.degree is not wanted:
            continue
        first = i
        if token.periphrastic:
            marker = _prev_word(tokens, i)
            if marker is not None:
                first = marker
        suppressed = None
        if (
            kind is SmellKind.COMPARATIVES
            and config.enable_numeric_comparison_suppression
            and _compares_against_number(tokens, i)
        ):
            suppressed = Suppression.NUMERIC_COMPARISON
        findings.append(_make_finding(item, tokens, kind, first, i, suppressed))
    return findings


def detect_negative_statements(
    item: RequirementItem,
    tokens: Sequence[AnnotatedToken],
    negation_dict: Dictionary,
    config: DetectorConfig,
) -> list[Finding]:
    """One finding per negation token.

    With the condition heuristic on, a negation sitting between a clause
    opener (if/unless/when) and the next comma is flagged as suppressed:
    it negates a condition, not a property of the system.
    """
    negation_words = {phrase[0] for phrase in negation_dict.phrases if len(phrase) == 1}
    findings: list[Finding] = []
    for i, token in enumerate(tokens):
        if token.pos is not PosTag.NEGATION and token.lemma not in negation_words:
            continue
        if token.pos is PosTag.PUNCT:
            continue
        suppressed = None
        if config.enable_condition_suppression and _inside_conditional_clause(tokens, i):
            suppressed = Suppression.CONDITION
        findings.append(
            _make_finding(item, tokens, SmellKind.NEGATIVE_STATEMENTS, i, i, suppressed)
        )
    return findings


def detect_vague_pronouns(
    item: RequirementItem,
    tokens: Sequence[AnnotatedToken],
    story: UserStoryParts | None = None,
) -> list[Finding]:
    """One finding per substituting pronoun.

    First-person pronouns of a conformant user story are frame words
    ("As a ..., I want ...") and are not reported.
    """
    if story is None:
        story = split_story_text(item.text)
    findings: list[Finding] = []
    for i, token in enumerate(tokens):
        if token.pos is not PosTag.PRONOUN_SUBSTITUTING:
            continue
        if story.conformant and token.surface.lower() in _STORY_FIRST_PERSON:
            continue
        findings.append(_make_finding(item, tokens, SmellKind.VAGUE_PRONOUNS, i, i))
    return findings


def _by_sentence(tokens: Sequence[AnnotatedToken]) -> list[list[int]]:
    sentences: dict[int, list[int]] = {}
    for i, token in enumerate(tokens):
        sentences.setdefault(token.sentence_index, []).append(i)
    return [sentences[key] for key in sorted(sentences)]


def _prev_word(tokens: Sequence[AnnotatedToken], i: int) -> int | None:
    for j in range(i - 1, -1, -1):
        if tokens[j].pos is not PosTag.PUNCT:
            return j
    return None


def _compares_against_number(tokens: Sequence[AnnotatedToken], i: int) -> bool:
    sentence = tokens[i].sentence_index
    for j in range(i, len(tokens)):
        if tokens[j].sentence_index != sentence:
            break
        if tokens[j].lemma == "than":
            for k in range(j + 1, len(tokens)):
                if tokens[k].sentence_index != sentence:
                    break
                if tokens[k].pos is PosTag.PUNCT:
                    continue
                return tokens[k].pos is PosTag.NUMBER
    return False


def _inside_conditional_clause(tokens: Sequence[AnnotatedToken], i: int) -> bool:
    sentence = tokens[i].sentence_index
    for j in range(i - 1, -1, -1):
        token = tokens[j]
        if token.sentence_index != sentence:
            return False
        if token.surface == ",":
            return False
        if token.lemma in _CLAUSE_OPENERS:
            return True
    return False
