"""Annotation pipeline: sentences, tokens, tags, lemmas and degrees.

Everything here is deterministic and table-driven. The tagger is a lookup
cascade (closed classes, entry table, suffix rules, default) rather than a
statistical model, so identical input always yields identical annotations
and no model weights are required. A different tagger can be swapped in by
implementing :class:`TokenAnnotator`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Protocol, Sequence

from .inflect import restore_base
from .lexicon import Degree, Lexicon, PosTag

_ABBREVIATIONS = frozenset({"e.g.", "i.e.", "etc.", "cf.", "vs.", "resp.", "approx."})
_SENTENCE_END = frozenset(".!?")
_DECIMAL_RE = re.compile(r"^\d+(?:[.,]\d+)+$")
_NUMERIC_RE = re.compile(r"^\d[\d.,:%/-]*[a-z%]*$", re.IGNORECASE)


@dataclass(frozen=True)
class Token:
    surface: str
    start: int
    end: int


@dataclass(frozen=True)
class AnnotatedToken:
    """One token of an item's text with its linguistic annotations.

    ``start``/``end`` are offsets into the item text; ``degree`` is only
    ever non-None for adjectives and adverbs.
    """

    surface: str
    start: int
    end: int
    sentence_index: int
    pos: PosTag
    lemma: str
    degree: Degree = Degree.NONE
    # True when the degree was marked periphrastically and the preceding
    # "more"/"most"/"less"/"least" token belongs to the reported span.
    periphrastic: bool = False

    def __post_init__(self) -> None:
        if self.degree is not Degree.NONE and self.pos not in (
            PosTag.ADJECTIVE,
            PosTag.ADVERB,
        ):
            raise ValueError(
                f"degree {self.degree.value} on non-gradable tag {self.pos.value}"
            )

    @property
    def is_word(self) -> bool:
        return any(ch.isalnum() for ch in self.surface)


class TokenAnnotator(Protocol):
    """Interface for pluggable annotators (e.g. an external tagger adapter)."""

    def annotate_text(self, text: str) -> list[AnnotatedToken]: ...


def split_sentences(text: str) -> list[tuple[int, int]]:
    """Character ranges of sentences, trimmed to non-whitespace extents.

    A boundary is a ``.``, ``!`` or ``?`` followed by whitespace and an
    uppercase letter, or the end of the text. Listed abbreviations never
    split.
    """
    ranges: list[tuple[int, int]] = []
    n = len(text)
    start = 0
    i = 0
    while i < n:
        ch = text[i]
        if ch in _SENTENCE_END:
            if _is_abbreviation_dot(text, i):
                i += 1
                continue
            j = i + 1
            while j < n and text[j] in _SENTENCE_END:
                j += 1
            k = j
            while k < n and text[k].isspace():
                k += 1
            if k >= n or (k > j and text[k].isupper()):
                _append_trimmed(ranges, text, start, j)
                start = k
                i = k
                continue
            i = j
            continue
        i += 1
    _append_trimmed(ranges, text, start, n)
    return ranges


def _is_abbreviation_dot(text: str, i: int) -> bool:
    if text[i] != ".":
        return False
    w = i
    while w > 0 and not text[w - 1].isspace():
        w -= 1
    return text[w : i + 1].lower() in _ABBREVIATIONS


def _append_trimmed(ranges: list[tuple[int, int]], text: str, start: int, end: int) -> None:
    while start < end and text[start].isspace():
        start += 1
    while end > start and text[end - 1].isspace():
        end -= 1
    if end > start:
        ranges.append((start, end))


def tokenize(text: str) -> list[Token]:
    """Whitespace tokenization with leading/trailing punctuation peeled off.

    Hyphenated words, decimal numbers and listed abbreviations stay whole;
    every stripped punctuation character becomes its own token.
    """
    tokens: list[Token] = []
    for match in re.finditer(r"\S+", text):
        chunk = match.group()
        base = match.start()
        left, right = 0, len(chunk)
        core = chunk
        if core.lower() not in _ABBREVIATIONS and not _DECIMAL_RE.match(core):
            while left < right and not _is_word_char(chunk[left]):
                tokens.append(Token(chunk[left], base + left, base + left + 1))
                left += 1
            trailing: list[Token] = []
            while right > left and not _is_word_char(chunk[right - 1]):
                candidate = chunk[left:right]
                if candidate.lower() in _ABBREVIATIONS or _DECIMAL_RE.match(candidate):
                    break
                trailing.append(Token(chunk[right - 1], base + right - 1, base + right))
                right -= 1
            core = chunk[left:right]
            if core:
                tokens.append(Token(core, base + left, base + right))
            tokens.extend(reversed(trailing))
        else:
            tokens.append(Token(core, base, base + len(core)))
    return tokens


def _is_word_char(ch: str) -> bool:
    return ch.isalnum()


def pos_tag(tokens: Sequence[Token], lexicon: Lexicon) -> list[PosTag]:
    """Tag tokens via closed classes, entries, suffix rules, then defaults.

    Contextual pronouns are resolved in a second pass: attributive when the
    next non-punct token is a noun ("these kids"), substituting otherwise
    ("the father of these").
    """
    tags = [_initial_tag(t, lexicon) for t in tokens]
    for i, token in enumerate(tokens):
        if not lexicon.is_contextual_pronoun(token.surface.lower()):
            continue
        following = _next_non_punct(tokens, tags, i)
        if following is not None and tags[following] is PosTag.NOUN:
            tags[i] = PosTag.PRONOUN_ATTRIBUTIVE
        else:
            tags[i] = PosTag.PRONOUN_SUBSTITUTING
    return tags


def _initial_tag(token: Token, lexicon: Lexicon) -> PosTag:
    surface = token.surface
    if not any(ch.isalnum() for ch in surface):
        return PosTag.PUNCT
    word = surface.lower()
    closed = lexicon.closed_class_tag(word)
    if closed is not None:
        return closed
    if _NUMERIC_RE.match(word):
        return PosTag.NUMBER
    if word in lexicon.entries:
        return lexicon.entries[word][0]
    for suffix, tag in lexicon.suffix_rules:
        if word.endswith(suffix) and len(word) >= len(suffix) + 2:
            return tag
    if any(ch.isalpha() for ch in word):
        return PosTag.NOUN
    return PosTag.OTHER


def _next_non_punct(tokens: Sequence[Token], tags: Sequence[PosTag], i: int) -> int | None:
    for j in range(i + 1, len(tokens)):
        if tags[j] is not PosTag.PUNCT:
            return j
    return None


def lemmatize(surface: str, pos: PosTag, lexicon: Lexicon) -> str:
    """Dictionary form of a word: exception table first, then POS-aware rules."""
    word = surface.lower()
    if word in lexicon.entries:
        return lexicon.entries[word][1]
    if pos in (PosTag.ADJECTIVE, PosTag.ADVERB):
        restored = restore_base(word, lexicon)
        if restored is not None:
            return restored[0]
        return word
    if pos is PosTag.NOUN:
        return _strip_plural(word)
    if pos is PosTag.VERB:
        return _strip_verbal(word, lexicon)
    return word


def _strip_plural(word: str) -> str:
    if len(word) < 4:
        return word
    if word.endswith("ies"):
        return word[:-3] + "y"
    if word.endswith(("ses", "xes", "zes", "ches", "shes")):
        return word[:-2]
    if word.endswith("s") and not word.endswith(("ss", "us", "is")):
        return word[:-1]
    return word


def _strip_verbal(word: str, lexicon: Lexicon) -> str:
    for suffix in ("ing", "ed"):
        if not word.endswith(suffix) or len(word) < len(suffix) + 3:
            continue
        stem = word[: -len(suffix)]
        known = _known_lemma(stem, lexicon)
        if known:
            return known
        if len(stem) >= 2 and stem[-1] == stem[-2] and stem[-1] not in "aeiouyls":
            return stem[:-1]
        return stem
    if word.endswith("s") and not word.endswith("ss") and len(word) >= 4:
        stem = word[:-3] + "y" if word.endswith("ies") else word[:-1]
        return _known_lemma(stem, lexicon) or stem
    return word


def _known_lemma(stem: str, lexicon: Lexicon) -> str | None:
    for candidate in (stem, stem + "e"):
        if candidate in lexicon.entries and lexicon.entries[candidate][1] == candidate:
            return candidate
    return None


def analyze_degree(
    surface: str,
    pos: PosTag,
    prev_token: str | None,
    lexicon: Lexicon,
) -> tuple[Degree, str]:
    """Degree of comparison and base lemma for an adjective or adverb.

    Irregular table first, then regular -er/-est suffixes, then periphrastic
    "more"/"most"/"less"/"least" marking on the previous token.
    """
    word = surface.lower()
    base = lemmatize(surface, pos, lexicon)
    if pos not in (PosTag.ADJECTIVE, PosTag.ADVERB):
        return Degree.NONE, base
    irregular = lexicon.irregular_degrees.get(word)
    if irregular is not None:
        return irregular[1], irregular[0]
    restored = restore_base(word, lexicon)
    if restored is not None:
        return restored[1], restored[0]
    if prev_token is not None:
        marker = prev_token.lower()
        if marker in ("more", "less"):
            return Degree.COMPARATIVE, base
        if marker in ("most", "least"):
            return Degree.SUPERLATIVE, base
    return Degree.NONE, base


_PERIPHRASTIC_MARKERS = frozenset({"more", "most", "less", "least"})


def annotate_text(text: str, lexicon: Lexicon) -> list[AnnotatedToken]:
    """Full pipeline over one item text; output ordered by offset."""
    sentence_ranges = split_sentences(text)
    tokens = tokenize(text)
    tags = pos_tag(tokens, lexicon)

    annotated: list[AnnotatedToken] = []
    for i, (token, tag) in enumerate(zip(tokens, tags)):
        sentence_index = _sentence_of(sentence_ranges, token.start)
        lemma = lemmatize(token.surface, tag, lexicon)
        degree = Degree.NONE
        periphrastic = False
        if tag in (PosTag.ADJECTIVE, PosTag.ADVERB):
            word = token.surface.lower()
            next_i = _next_non_punct(tokens, tags, i)
            acts_as_marker = (
                word in _PERIPHRASTIC_MARKERS
                and next_i is not None
                and tags[next_i] in (PosTag.ADJECTIVE, PosTag.ADVERB)
                and _sentence_of(sentence_ranges, tokens[next_i].start) == sentence_index
            )
            if not acts_as_marker:
                prev_i = _prev_non_punct(tags, i)
                prev_surface = tokens[prev_i].surface if prev_i is not None else None
                degree, lemma = analyze_degree(token.surface, tag, prev_surface, lexicon)
                periphrastic = (
                    degree is not Degree.NONE
                    and prev_surface is not None
                    and prev_surface.lower() in _PERIPHRASTIC_MARKERS
                    and restore_base(word, lexicon) is None
                    and word not in lexicon.irregular_degrees
                )
        annotated.append(
            AnnotatedToken(
                surface=token.surface,
                start=token.start,
                end=token.end,
                sentence_index=sentence_index,
                pos=tag,
                lemma=lemma,
                degree=degree,
                periphrastic=periphrastic,
            )
        )
    return annotated


def _sentence_of(ranges: list[tuple[int, int]], offset: int) -> int:
    for idx, (start, end) in enumerate(ranges):
        if start <= offset < end:
            return idx
    # Tokens in trailing whitespace-only tails attach to the last sentence.
    return max(len(ranges) - 1, 0)


def _prev_non_punct(tags: Sequence[PosTag], i: int) -> int | None:
    for j in range(i - 1, -1, -1):
        if tags[j] is not PosTag.PUNCT:
            return j
    return None


def count_words(tokens: Sequence[AnnotatedToken]) -> int:
    """Tokens that contain at least one letter or digit."""
    return sum(1 for t in tokens if t.is_word)
