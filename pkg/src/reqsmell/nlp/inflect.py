"""Regular comparative/superlative inflection and its inverse.

``inflect_degree`` produces the graded surface form for a base adjective or
adverb ("high" -> "highest", "careful" -> "more careful"). ``restore_base``
recovers the base from an ``-er``/``-est`` form, consulting the lexicon's
adjective list so that only genuine inflections are accepted ("bigger" ->
"big", but "customer" stays untouched because "custom" is not listed).
"""

from __future__ import annotations

from .lexicon import Degree, Lexicon

_VOWELS = "aeiouy"

# Bases whose graded forms are irregular; the inverse mapping lives in the
# lexicon's irregular_degrees table.
_IRREGULAR_BASES = {
    "good": ("better", "best"),
    "bad": ("worse", "worst"),
    "far": ("further", "furthest"),
    "little": ("less", "least"),
    "much": ("more", "most"),
    "many": ("more", "most"),
    "few": ("fewer", "fewest"),
}


def syllable_count(word: str) -> int:
    """Estimate syllables by counting vowel groups.

    A final silent "e" is ignored unless it closes a consonant+"le"
    syllable ("simple" has two syllables, "large" has one).
    """
    w = word.lower()
    if w.endswith("e") and not (len(w) >= 3 and w.endswith("le") and w[-3] not in _VOWELS):
        w = w[:-1]
    count = 0
    previous_vowel = False
    for ch in w:
        vowel = ch in _VOWELS
        if vowel and not previous_vowel:
            count += 1
        previous_vowel = vowel
    return count


def inflect_degree(base: str, degree: Degree) -> str:
    """Inflect a base form; periphrastic results come back as two words."""
    if degree is Degree.NONE:
        return base
    base = base.lower()
    if base in _IRREGULAR_BASES:
        comparative, superlative = _IRREGULAR_BASES[base]
        return comparative if degree is Degree.COMPARATIVE else superlative

    suffix = "er" if degree is Degree.COMPARATIVE else "est"
    n = syllable_count(base)
    if n == 1:
        if base.endswith("e"):
            return base + suffix[1:]
        if (
            len(base) >= 3
            and base[-1] not in _VOWELS + "wx"
            and base[-2] in _VOWELS
            and base[-3] not in _VOWELS
        ):
            return base + base[-1] + suffix
        return base + suffix
    if n == 2:
        if base.endswith("y"):
            return base[:-1] + "i" + suffix
        if base.endswith("le"):
            return base + suffix[1:]
        if base.endswith("ow"):
            return base + suffix
    periphrasis = "more" if degree is Degree.COMPARATIVE else "most"
    return f"{periphrasis} {base}"


def restore_base(surface: str, lexicon: Lexicon) -> tuple[str, Degree] | None:
    """Undo a regular -er/-est inflection, or return None if there is none.

    The stoplist vetoes known false matches; every other candidate base must
    appear in the bundled adjective list.
    """
    word = surface.lower()
    if word in lexicon.degree_stoplist:
        return None
    for suffix, degree in (("est", Degree.SUPERLATIVE), ("er", Degree.COMPARATIVE)):
        if not word.endswith(suffix) or len(word) <= len(suffix) + 1:
            continue
        stem = word[: -len(suffix)]
        for candidate in _base_candidates(stem):
            if candidate in lexicon.adjectives:
                return candidate, degree
    return None


def _base_candidates(stem: str) -> list[str]:
    candidates = [stem, stem + "e"]
    if stem.endswith("i"):
        candidates.append(stem[:-1] + "y")
    if len(stem) >= 2 and stem[-1] == stem[-2] and stem[-1] not in _VOWELS:
        candidates.append(stem[:-1])
    return candidates
