from __future__ import annotations

import pytest

from reqsmell.ingest import ItemKind, RequirementItem
from reqsmell.nlp import annotate_text, load_lexicon
from reqsmell.smells import load_dictionaries


@pytest.fixture(scope="session")
def lexicon():
    return load_lexicon()


@pytest.fixture(scope="session")
def dictionaries(lexicon):
    return load_dictionaries(None, lexicon)


@pytest.fixture
def make_item():
    def _make(text: str, item_id: str = "i1", artifact_id: str = "a1") -> RequirementItem:
        return RequirementItem(
            item_id=item_id,
            artifact_id=artifact_id,
            text=text,
            char_range=(0, len(text)),
            kind=ItemKind.FREE_TEXT,
        )

    return _make


@pytest.fixture
def annotate(lexicon):
    def _annotate(text: str):
        return annotate_text(text, lexicon)

    return _annotate
