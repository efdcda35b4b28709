"""Dictionary files: one ``<smell>.dict`` per dictionary-mechanism smell.

Each file holds one phrase per line (``#`` comments allowed). Phrases are
lemmatized at load time, so files may list natural base forms; matching then
works on the lemma sequence of the analyzed text, case-insensitively. The
bundled seed lists are intentionally small and meant to be extended per
context.
"""

from __future__ import annotations

import re
from importlib import resources
from pathlib import Path

from ..nlp import Lexicon
from .model import DICTIONARY_SMELLS, Dictionary, SmellKind

# Negative statements combine POS tagging with this word list.
NEGATION_DICT_FILE = "negative_statements"

_FILE_NAMES: dict[SmellKind, str] = {
    SmellKind.SUBJECTIVE_LANGUAGE: "subjective_language",
    SmellKind.AMBIGUOUS_ADVERBS_ADJECTIVES: "ambiguous_adverbs_adjectives",
    SmellKind.LOOPHOLES: "loopholes",
    SmellKind.NON_VERIFIABLE_TERMS: "non_verifiable_terms",
    SmellKind.NEGATIVE_STATEMENTS: NEGATION_DICT_FILE,
}


def bundled_dictionary_dir() -> Path:
    return Path(resources.files("reqsmell").joinpath("data/dictionaries"))  # type: ignore[arg-type]


def dictionary_path(directory: Path, smell: SmellKind) -> Path:
    return directory / f"{_FILE_NAMES[smell]}.dict"


def load_dictionary(directory: Path, smell: SmellKind, lexicon: Lexicon) -> Dictionary | None:
    """Load one smell's dictionary, or None when the file does not exist."""
    path = dictionary_path(directory, smell)
    if not path.is_file():
        return None
    phrases: set[tuple[str, ...]] = set()
    for raw in path.read_text(encoding="utf-8").splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        words = re.split(r"\s+", line.lower())
        lemmas = tuple(_load_lemma(word, lexicon) for word in words)
        phrases.add(lemmas)
    return Dictionary(smell=smell, phrases=frozenset(phrases))


def _load_lemma(word: str, lexicon: Lexicon) -> str:
    entry = lexicon.entries.get(word)
    return entry[1] if entry is not None else word


def load_dictionaries(
    directory: str | Path | None,
    lexicon: Lexicon,
    smells: tuple[SmellKind, ...] = (*DICTIONARY_SMELLS, SmellKind.NEGATIVE_STATEMENTS),
) -> dict[SmellKind, Dictionary]:
    """Load all present dictionaries from a directory (bundled dir by default)."""
    base = Path(directory) if directory is not None else bundled_dictionary_dir()
    loaded: dict[SmellKind, Dictionary] = {}
    for smell in smells:
        dictionary = load_dictionary(base, smell, lexicon)
        if dictionary is not None:
            loaded[smell] = dictionary
    return loaded
