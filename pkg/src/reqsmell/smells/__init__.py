"""Smell detectors and their data model."""

from .detect import (
    detect,
    detect_degree_smell,
    detect_dictionary_smell,
    detect_negative_statements,
    detect_vague_pronouns,
)
from .dictionaries import bundled_dictionary_dir, dictionary_path, load_dictionaries, load_dictionary
from .model import (
    DICTIONARY_SMELLS,
    IMPROVEMENT_HINTS,
    DetectorConfig,
    Dictionary,
    Finding,
    MissingDictionaryError,
    SmellKind,
    Suppression,
    finding_message,
)

__all__ = [
    "DICTIONARY_SMELLS",
    "IMPROVEMENT_HINTS",
    "DetectorConfig",
    "Dictionary",
    "Finding",
    "MissingDictionaryError",
    "SmellKind",
    "Suppression",
    "bundled_dictionary_dir",
    "detect",
    "detect_degree_smell",
    "detect_dictionary_smell",
    "detect_negative_statements",
    "detect_vague_pronouns",
    "dictionary_path",
    "finding_message",
    "load_dictionaries",
    "load_dictionary",
]
