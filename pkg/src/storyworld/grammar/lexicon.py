"""Lexicon: word tables, lemmatization rules, tuning constants.

Loaded from a versioned JSON file shipped with the package; the
ENGINE_LEXICON environment variable overrides the path. Lookups are
case-insensitive. All numeric behavior constants (speeds, adjective
multipliers, interval traits) live in the data file so tuning never
touches code.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

_DATA_PATH = Path(__file__).parent / "data" / "lexicon.json"

VOWELS = "aeiou"


@dataclass
class VerbEntry:
    lemma: str
    transitive: bool = False
    event: bool = False
    prepositions: tuple[str, ...] = ()


@dataclass
class Lexicon:
    version: str
    verbs: dict[str, VerbEntry]
    irregular_verb_forms: dict[str, str]
    nouns: set[str]
    irregular_plurals: dict[str, str]
    adjectives: dict[str, dict[str, float]]
    adverbs: dict[str, float]
    interval_traits: dict[str, float]
    determiners: set[str]
    deictic_determiners: set[str]
    pronouns: dict[str, dict]
    prepositions: set[str]
    time_units: dict[str, float]
    direction_words: set[str]
    loop_markers: set[str]
    negation_words: set[str]
    when_markers: set[str]
    number_words: dict[str, float]
    multiword: dict[str, dict]
    verb_synonyms: dict[str, list[str]]
    constants: dict[str, float]
    _plural_of: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        self._plural_of = dict(self.irregular_plurals)

    # -- verbs ---------------------------------------------------------

    def is_verb(self, lemma: str) -> bool:
        return lemma.lower() in self.verbs

    def verb(self, lemma: str) -> VerbEntry | None:
        return self.verbs.get(lemma.lower())

    _IRREGULAR_PRESENT = {"is": "3s", "are": "3s", "am": "3s", "has": "3s",
                          "does": "3s", "being": "ing"}

    def verb_lemma(self, word: str) -> tuple[str, str] | None:
        """Resolve an inflected verb to (lemma, form) or None.

        Form is one of base/3s/past/ing.
        """
        w = word.lower()
        if w in self.irregular_verb_forms:
            base = self.irregular_verb_forms[w]
            return base, self._IRREGULAR_PRESENT.get(w, "past")
        if w in self.verbs:
            return w, "base"
        for suffix, form in (("ing", "ing"), ("ed", "past"), ("ies", "3s"),
                             ("es", "3s"), ("s", "3s")):
            if not w.endswith(suffix) or len(w) <= len(suffix):
                continue
            stem = w[: -len(suffix)]
            for candidate in self._stem_candidates(stem, suffix):
                if candidate in self.verbs:
                    return candidate, form
        return None

    @staticmethod
    def _stem_candidates(stem: str, suffix: str) -> list[str]:
        cands = [stem]
        if suffix in ("ing", "ed"):
            cands.append(stem + "e")          # mov -> move
            if len(stem) >= 2 and stem[-1] == stem[-2]:
                cands.append(stem[:-1])        # hopp -> hop
        if suffix == "ies":
            cands.append(stem + "y")           # flies -> fly
        if suffix == "ed" and stem.endswith("i"):
            cands.append(stem[:-1] + "y")      # carried -> carry
        return cands

    # -- nouns ---------------------------------------------------------

    def noun_lemma(self, word: str) -> tuple[str, bool] | None:
        """Resolve a known noun to (singular lemma, plural flag)."""
        w = word.lower()
        if w in self._plural_of:
            return self._plural_of[w], True
        if w in self.nouns:
            return w, False
        for cand in self._singular_candidates(w):
            if cand in self.nouns:
                return cand, True
        return None

    @staticmethod
    def _singular_candidates(w: str) -> list[str]:
        out = []
        if w.endswith("ies") and len(w) > 3:
            out.append(w[:-3] + "y")
        if w.endswith("s") and not w.endswith("ss") and len(w) > 2:
            out.append(w[:-1])                 # houses -> house
        if w.endswith("es") and len(w) > 3:
            out.append(w[:-2])                 # boxes -> box
        return out

    def singularize(self, word: str) -> str | None:
        """Best-effort plural stripping for open-class nouns."""
        w = word.lower()
        if w in self._plural_of:
            return self._plural_of[w]
        if w.endswith("ies") and len(w) > 3:
            return w[:-3] + "y"
        if w.endswith("es") and len(w) > 4 and w[-4:-2] in ("ch", "sh") or \
                w.endswith(("xes", "zes")):
            return w[:-2]                      # bushes, boxes
        if w.endswith("s") and not w.endswith("ss") and len(w) > 2:
            return w[:-1]
        return None

    def pluralize(self, lemma: str) -> str:
        for plural, sing in self._plural_of.items():
            if sing == lemma:
                return plural
        if lemma.endswith("y") and len(lemma) > 1 and lemma[-2] not in VOWELS:
            return lemma[:-1] + "ies"
        if lemma.endswith(("s", "x", "z", "ch", "sh")):
            return lemma + "es"
        return lemma + "s"

    # -- modifiers -----------------------------------------------------

    def adjective_factors(self, lemma: str) -> dict[str, float]:
        return self.adjectives.get(lemma.lower(), {})

    def adverb_factor(self, lemma: str) -> float | None:
        return self.adverbs.get(lemma.lower())

    def adverb_adjective(self, word: str) -> str | None:
        """Map an -ly adverb to its adjective lemma (excitedly -> excited)."""
        w = word.lower()
        if not w.endswith("ly") or len(w) <= 3:
            return None
        stem = w[:-2]
        for candidate in (stem, stem + "e", stem[:-1] + "y" if stem.endswith("i") else stem):
            if candidate in self.adjectives:
                return candidate
        return None

    # -- misc ----------------------------------------------------------

    def constant(self, name: str) -> float:
        return float(self.constants[name])

    def synonyms(self, lemma: str) -> list[str]:
        return [v for v in self.verb_synonyms.get(lemma.lower(), ()) if v in self.verbs]


def strip_third_person(word: str) -> str:
    """Heuristic -s stripping for open-class verbs ("glides" -> "glide")."""
    w = word.lower()
    if w.endswith("ies") and len(w) > 3:
        return w[:-3] + "y"
    if w.endswith("es") and len(w) > 4 and (
            w[-4:-2] in ("ch", "sh") or w[-3] in "sxz"):
        return w[:-2]
    if w.endswith("s") and not w.endswith("ss") and len(w) > 2:
        return w[:-1]
    return w


def load_lexicon(path: str | os.PathLike | None = None) -> Lexicon:
    """Load the lexicon from ``path``, ENGINE_LEXICON, or the built-in file."""
    chosen = Path(path or os.environ.get("ENGINE_LEXICON") or _DATA_PATH)
    raw = json.loads(chosen.read_text(encoding="utf-8"))
    return Lexicon(
        version=str(raw["version"]),
        verbs={
            k: VerbEntry(lemma=k, transitive=v.get("transitive", False),
                         event=v.get("event", False),
                         prepositions=tuple(v.get("prepositions", ())))
            for k, v in raw["verbs"].items()
        },
        irregular_verb_forms=raw["irregular_verb_forms"],
        nouns=set(raw["nouns"]),
        irregular_plurals=raw["irregular_plurals"],
        adjectives=raw["adjectives"],
        adverbs=raw["adverbs"],
        interval_traits=raw["interval_traits"],
        determiners=set(raw["determiners"]),
        deictic_determiners=set(raw["deictic_determiners"]),
        pronouns=raw["pronouns"],
        prepositions=set(raw["prepositions"]),
        time_units=raw["time_units"],
        direction_words=set(raw["direction_words"]),
        loop_markers=set(raw["loop_markers"]),
        negation_words=set(raw["negation_words"]),
        when_markers=set(raw["when_markers"]),
        number_words={k: float(v) for k, v in raw["number_words"].items()},
        multiword=raw["multiword"],
        verb_synonyms=raw["verb_synonyms"],
        constants=raw["constants"],
    )


@lru_cache(maxsize=4)
def _cached(path_key: str) -> Lexicon:
    return load_lexicon(path_key or None)


def default_lexicon() -> Lexicon:
    """Shared default lexicon (honors ENGINE_LEXICON)."""
    return _cached(os.environ.get("ENGINE_LEXICON", ""))
