"""reqsmell: a requirements-smell linter.

Detects eight natural-language smells in requirements artifacts (subjective
language, ambiguous adverbs/adjectives, loopholes, non-verifiable terms,
superlatives, comparatives, negative statements, vague pronouns), reports
densities per artifact, supports a review workflow over HTTP, and ships an
evaluation kit for precision/recall against gold annotations.
"""

__version__ = "0.1.0"
