"""Deterministic NLP pipeline: sentence splitting, tokenization, rule-based
POS tagging, lemmatization and comparative/superlative analysis."""

from .annotate import (
    AnnotatedToken,
    Token,
    TokenAnnotator,
    analyze_degree,
    annotate_text,
    count_words,
    lemmatize,
    pos_tag,
    split_sentences,
    tokenize,
)
from .inflect import inflect_degree, restore_base, syllable_count
from .lexicon import Degree, Lexicon, LexiconError, PosTag, bundled_lexicon_dir, load_lexicon

__all__ = [
    "AnnotatedToken",
    "Degree",
    "Lexicon",
    "LexiconError",
    "PosTag",
    "Token",
    "TokenAnnotator",
    "analyze_degree",
    "annotate_text",
    "bundled_lexicon_dir",
    "count_words",
    "inflect_degree",
    "lemmatize",
    "load_lexicon",
    "pos_tag",
    "restore_base",
    "split_sentences",
    "syllable_count",
    "tokenize",
]
