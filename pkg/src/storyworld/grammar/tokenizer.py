"""Deterministic tokenizer for the restricted command language.

Covers every non-whitespace character of the input. Decimal numbers
("11.18") stay single NUM tokens; sentence punctuation becomes PUNCT;
multiword lexicon entries ("over and over", "and then") are merged into
single tokens. Unknown words get category UNKNOWN with a lowercase
lemma — open-class labels are resolved later by the parser.
"""

from __future__ import annotations

import re

from .lexicon import Lexicon, default_lexicon
from .tokens import Category, Token, VerbForm

_WORD_RE = re.compile(r"\d+(?:\.\d+)?|[A-Za-z']+|[.,!?;:]")


def tokenize(text: str, lexicon: Lexicon | None = None) -> list[Token]:
    lexicon = lexicon or default_lexicon()
    raw = _WORD_RE.findall(text)
    raw = _merge_multiword(raw, lexicon)
    tokens: list[Token] = []
    for i, word in enumerate(raw):
        tokens.append(_classify(word, i, lexicon))
    return tokens


def _merge_multiword(words: list[str], lexicon: Lexicon) -> list[str]:
    patterns = sorted((tuple(k.split()) for k in lexicon.multiword),
                      key=len, reverse=True)
    out: list[str] = []
    i = 0
    while i < len(words):
        matched = False
        for pat in patterns:
            cand = tuple(w.lower() for w in words[i:i + len(pat)])
            if cand == pat:
                out.append(" ".join(words[i:i + len(pat)]))
                i += len(pat)
                matched = True
                break
        if not matched:
            out.append(words[i])
            i += 1
    return out


def _classify(word: str, index: int, lex: Lexicon) -> Token:
    low = word.lower()

    if low in lex.multiword:
        entry = lex.multiword[low]
        return Token(word, entry["lemma"], index, Category(entry["category"]))
    if re.fullmatch(r"\d+(?:\.\d+)?", word):
        return Token(word, word, index, Category.NUM, number_value=float(word))
    if re.fullmatch(r"[.,!?;:]", word):
        return Token(word, word, index, Category.PUNCT)
    if low in lex.number_words:
        return Token(word, low, index, Category.NUM,
                     number_value=lex.number_words[low])
    if low in lex.when_markers:
        return Token(word, low, index, Category.WHEN_MARKER)
    if low in lex.negation_words:
        return Token(word, low, index, Category.NEG)
    if low == "and":
        return Token(word, low, index, Category.CONJ_AND)
    if low in lex.deictic_determiners:
        plural = low in ("these", "those")
        return Token(word, low, index, Category.DET, plural=plural, deictic=True)
    if low in lex.determiners:
        return Token(word, low, index, Category.DET)
    if low in lex.pronouns:
        info = lex.pronouns[low]
        flags = frozenset(["reserved"]) if info.get("reserved") else frozenset()
        return Token(word, low, index, Category.PRON,
                     plural=info.get("plural", False), flags=flags)
    if low in lex.time_units:
        base = "second" if low.startswith("second") else \
               "minute" if low.startswith("minute") else \
               "hour" if low.startswith("hour") else low.rstrip("s")
        return Token(word, base, index, Category.TIME_UNIT,
                     plural=low.endswith("s"))
    if low in lex.loop_markers:
        return Token(word, low, index, Category.ADV)
    if low in lex.direction_words:
        # directional words double as prepositions; the parser decides
        return Token(word, low, index, Category.ADV)
    if low in lex.prepositions:
        return Token(word, low, index, Category.PREP)
    if low in lex.adverbs or lex.adverb_adjective(low):
        return Token(word, low, index, Category.ADV)

    verb = lex.verb_lemma(low)
    noun = lex.noun_lemma(low)
    # prefer the noun reading when a word is both ("times" -> time);
    # the parser re-reads category from position when needed
    if verb and not noun:
        lemma, form = verb
        return Token(word, lemma, index, Category.VERB, verb_form=VerbForm(form))
    if noun and not verb:
        lemma, plural = noun
        return Token(word, lemma, index, Category.NOUN, plural=plural)
    if noun and verb:
        lemma, plural = noun
        return Token(word, lemma, index, Category.NOUN, plural=plural)
    if low in lex.adjectives:
        return Token(word, low, index, Category.ADJ)

    return Token(word, low, index, Category.UNKNOWN)


def split_sentences(tokens: list[Token]) -> list[list[Token]]:
    """Split a token stream into sentences on ./?/! tokens.

    Tokens keep their original indices so positions stay meaningful
    across a multi-sentence utterance.
    """
    sentences: list[list[Token]] = []
    current: list[Token] = []
    for tok in tokens:
        current.append(tok)
        if tok.is_sentence_end():
            sentences.append(current)
            current = []
    if any(t.category != Category.PUNCT for t in current):
        sentences.append(current)
    return sentences
