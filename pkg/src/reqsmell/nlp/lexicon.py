"""Lexicon loading for the rule-based tagger.

A lexicon directory holds plain-text tables:

* ``entries.tsv``          -- ``surface<TAB>POS<TAB>lemma`` per line
* ``closed_classes.tsv``   -- ``class<TAB>word`` per line
* ``suffix_rules.tsv``     -- ``suffix<TAB>POS`` per line, ordered
* ``irregular_degrees.tsv``-- ``form<TAB>lemma<TAB>degree`` per line
* ``degree_stoplist.txt``  -- one word per line
* ``adjectives.txt``       -- one base form per line

All files are UTF-8 with ``#`` comment lines. The bundled English lexicon
lives in ``reqsmell/data/lexicon``; an alternative directory can be passed
via CLI flag or config to swap in another language pack.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from importlib import resources
from pathlib import Path


class PosTag(Enum):
    NOUN = "Noun"
    VERB = "Verb"
    ADJECTIVE = "Adjective"
    ADVERB = "Adverb"
    PRONOUN_SUBSTITUTING = "PronounSubstituting"
    PRONOUN_ATTRIBUTIVE = "PronounAttributive"
    DETERMINER = "Determiner"
    PREPOSITION = "Preposition"
    CONJUNCTION = "Conjunction"
    PARTICLE = "Particle"
    NUMBER = "Number"
    NEGATION = "Negation"
    PUNCT = "Punct"
    OTHER = "Other"


class Degree(Enum):
    NONE = "None"
    COMPARATIVE = "Comparative"
    SUPERLATIVE = "Superlative"


class LexiconError(ValueError):
    """Malformed lexicon data."""


# Closed-class names accepted in closed_classes.tsv.
_PRONOUN_PERSONAL = "pronoun_personal"
_PRONOUN_CONTEXTUAL = "pronoun_contextual"
_DETERMINER = "determiner"
_NEGATION = "negation"
_NUMBER = "number"
_CLASS_NAMES = (_PRONOUN_PERSONAL, _PRONOUN_CONTEXTUAL, _DETERMINER, _NEGATION, _NUMBER)


@dataclass(frozen=True)
class Lexicon:
    """Immutable word tables shared by tagging, lemmatization and degree analysis."""

    entries: dict[str, tuple[PosTag, str]]
    suffix_rules: tuple[tuple[str, PosTag], ...]
    irregular_degrees: dict[str, tuple[str, Degree]]
    pronouns_personal: frozenset[str]
    pronouns_contextual: frozenset[str]
    determiners: frozenset[str]
    negations: frozenset[str]
    number_words: frozenset[str]
    degree_stoplist: frozenset[str]
    adjectives: frozenset[str]

    def __post_init__(self) -> None:
        sets = {
            _PRONOUN_PERSONAL: self.pronouns_personal,
            _PRONOUN_CONTEXTUAL: self.pronouns_contextual,
            _DETERMINER: self.determiners,
            _NEGATION: self.negations,
            _NUMBER: self.number_words,
        }
        names = list(sets)
        for i, a in enumerate(names):
            for b in names[i + 1:]:
                overlap = sets[a] & sets[b]
                if overlap:
                    raise LexiconError(
                        f"closed classes {a} and {b} overlap: {sorted(overlap)}"
                    )
        for form, (_, degree) in self.irregular_degrees.items():
            if degree is Degree.NONE:
                raise LexiconError(f"irregular degree entry {form!r} has degree None")

    def closed_class_tag(self, word: str) -> PosTag | None:
        """Resolve a lowercase word against the closed-class sets only."""
        if word in self.negations:
            return PosTag.NEGATION
        if word in self.determiners:
            return PosTag.DETERMINER
        if word in self.number_words:
            return PosTag.NUMBER
        if word in self.pronouns_personal or word in self.pronouns_contextual:
            return PosTag.PRONOUN_SUBSTITUTING
        return None

    def is_contextual_pronoun(self, word: str) -> bool:
        return word in self.pronouns_contextual


def _data_lines(path: Path) -> list[str]:
    lines = []
    for raw in path.read_text(encoding="utf-8").splitlines():
        line = raw.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        lines.append(line)
    return lines


def bundled_lexicon_dir() -> Path:
    """Directory of the English lexicon shipped with the package."""
    return Path(resources.files("reqsmell").joinpath("data/lexicon"))  # type: ignore[arg-type]


def load_lexicon(directory: str | Path | None = None) -> Lexicon:
    """Load a lexicon directory; defaults to the bundled English pack."""
    base = Path(directory) if directory is not None else bundled_lexicon_dir()
    if not base.is_dir():
        raise LexiconError(f"lexicon directory not found: {base}")

    entries: dict[str, tuple[PosTag, str]] = {}
    for line in _data_lines(base / "entries.tsv"):
        parts = line.split("\t")
        if len(parts) != 3:
            raise LexiconError(f"entries.tsv: expected 3 tab-separated fields: {line!r}")
        surface, pos, lemma = (p.strip() for p in parts)
        entries[surface.lower()] = (PosTag(pos), lemma.lower())

    suffix_rules: list[tuple[str, PosTag]] = []
    for line in _data_lines(base / "suffix_rules.tsv"):
        suffix, pos = (p.strip() for p in line.split("\t"))
        suffix_rules.append((suffix.lower(), PosTag(pos)))

    irregular: dict[str, tuple[str, Degree]] = {}
    for line in _data_lines(base / "irregular_degrees.tsv"):
        form, lemma, degree = (p.strip() for p in line.split("\t"))
        irregular[form.lower()] = (lemma.lower(), Degree(degree.capitalize()))

    classes: dict[str, set[str]] = {name: set() for name in _CLASS_NAMES}
    for line in _data_lines(base / "closed_classes.tsv"):
        cls, word = (p.strip() for p in line.split("\t"))
        if cls not in classes:
            raise LexiconError(f"closed_classes.tsv: unknown class {cls!r}")
        classes[cls].add(word.lower())

    stoplist = {line.strip().lower() for line in _data_lines(base / "degree_stoplist.txt")}
    adjectives = {line.strip().lower() for line in _data_lines(base / "adjectives.txt")}

    return Lexicon(
        entries=entries,
        suffix_rules=tuple(suffix_rules),
        irregular_degrees=irregular,
        pronouns_personal=frozenset(classes[_PRONOUN_PERSONAL]),
        pronouns_contextual=frozenset(classes[_PRONOUN_CONTEXTUAL]),
        determiners=frozenset(classes[_DETERMINER]),
        negations=frozenset(classes[_NEGATION]),
        number_words=frozenset(classes[_NUMBER]),
        degree_stoplist=frozenset(stoplist),
        adjectives=frozenset(adjectives),
    )
