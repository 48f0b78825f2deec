"""Verb substitution suggestions for unknown verbs.

Backed by a static synonym table in the lexicon file. Once the user
substitutes a verb, the session records the mapping so the prompt does
not recur.
"""

from __future__ import annotations

from .lexicon import Lexicon, default_lexicon


def suggest_verbs(unknown_lemma: str, lexicon: Lexicon | None = None) -> list[str]:
    """Return 0-5 known verb lemmas that could stand in for ``unknown_lemma``.

    Raises ValueError if the lemma is already a known verb.
    """
    lex = lexicon or default_lexicon()
    lemma = unknown_lemma.lower()
    if lex.is_verb(lemma):
        raise ValueError(f"{lemma!r} is already a known verb")
    return lex.synonyms(lemma)[:5]
