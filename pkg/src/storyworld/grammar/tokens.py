"""Token model for the restricted-English front end."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum


class Category(str, Enum):
    NOUN = "NOUN"
    VERB = "VERB"
    ADJ = "ADJ"
    ADV = "ADV"
    DET = "DET"
    PREP = "PREP"
    NUM = "NUM"
    PRON = "PRON"
    CONJ_AND = "CONJ_AND"
    CONJ_THEN = "CONJ_THEN"
    WHEN_MARKER = "WHEN_MARKER"
    NEG = "NEG"
    TIME_UNIT = "TIME_UNIT"
    PUNCT = "PUNCT"
    UNKNOWN = "UNKNOWN"


class VerbForm(str, Enum):
    BASE = "base"
    THIRD = "3s"
    PAST = "past"
    GERUND = "ing"


@dataclass(frozen=True)
class Token:
    """One input word with its dictionary lemma and coarse category.

    ``lemma`` is singular for nouns and base form for verbs; ``index`` is
    the ordinal position within the token list (contiguous from 0).
    """

    text: str
    lemma: str
    index: int
    category: Category
    number_value: float | None = None
    plural: bool = False
    verb_form: VerbForm = VerbForm.BASE
    deictic: bool = False
    flags: frozenset[str] = field(default_factory=frozenset)

    def is_sentence_end(self) -> bool:
        return self.category == Category.PUNCT and self.text in ".?!"
