"""Recursive-descent parser over a closed third-person narrative grammar.

Deterministic by construction: the same token list always yields the
same tree, and unsupported structures fail loudly with
UnsupportedGrammar instead of guessing.

Supported sentence shapes:
  - declarative SVO with prepositional phrases and directional adverbs
  - copular labeling ("this is a X", "the X is [not] ADJ/static")
  - loop prefixes ("forever", "endlessly", "over and over",
    "<N> times", "every <trait|N> <unit>") and suffix counts
  - conjunction "and", sequence "and then" (subject optional after a
    connective; the agent is filled in later)
  - conditionals led by when/as/after, with or without a comma
  - stop form ("X stops [V-ing]")
  - vocative imperative ("dog, jump"), with or without the comma
Tenses (past, future "will", progressive "is V-ing") normalize to the
base verb.
"""

from __future__ import annotations

from ..errors import UnsupportedGrammar
from .lexicon import Lexicon, default_lexicon
from .parse_tree import ParseNode, Relation
from .tokens import Category, Token, VerbForm

# event verbs consume a fixed complement shape, which lets a comma-free
# conditional find the response boundary deterministically
_EVENT_ARITY = {
    "collide": ("PP",),
    "press": ("NP",),
    "appear": (),
    "disappear": (),
    "equal": ("NP",),
    "exceed": ("NP",),
}


def parse_sentence(tokens: list[Token], lexicon: Lexicon | None = None) -> ParseNode:
    """Parse one sentence worth of tokens into a ROOT tree."""
    return _Parser(tokens, lexicon or default_lexicon()).parse()


class _Parser:
    def __init__(self, tokens: list[Token], lexicon: Lexicon):
        self.toks = [t for t in tokens if not (t.category == Category.PUNCT
                                               and t.text in ".?!")]
        self.lex = lexicon
        self.pos = 0

    # -- token helpers -------------------------------------------------

    def peek(self, offset: int = 0) -> Token | None:
        i = self.pos + offset
        return self.toks[i] if i < len(self.toks) else None

    def take(self) -> Token:
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def at(self, *cats: Category, offset: int = 0) -> bool:
        tok = self.peek(offset)
        return tok is not None and tok.category in cats

    def at_lemma(self, *lemmas: str, offset: int = 0) -> bool:
        tok = self.peek(offset)
        return tok is not None and tok.lemma in lemmas

    def fail(self, reason: str) -> UnsupportedGrammar:
        return UnsupportedGrammar(self.pos, reason)

    def skip_comma(self) -> bool:
        if self.at(Category.PUNCT) and self.peek().text == ",":
            self.take()
            return True
        return False

    # -- entry ---------------------------------------------------------

    def parse(self) -> ParseNode:
        if not self.toks:
            raise self.fail("empty sentence")
        condition: ParseNode | None = None
        if self.at(Category.WHEN_MARKER):
            condition = self.parse_condition()
            self.skip_comma()
        root = self.parse_clause_chain()
        if condition is not None:
            root.children.insert(0, condition)
        if self.pos < len(self.toks):
            raise self.fail(f"unexpected trailing input {self.peek().text!r}")
        root.relation = Relation.ROOT
        return root

    # -- conditionals ---------------------------------------------------

    def parse_condition(self) -> ParseNode:
        marker = self.take()
        has_comma = any(t.category == Category.PUNCT and t.text == ","
                        for t in self.toks[self.pos:])
        subject = self.parse_np(subject_position=True)
        verb = self.parse_verb_head()
        node = ParseNode(verb, Relation.CONDITION)
        node.add(ParseNode(marker, Relation.ADVMOD))
        node.add(self._as(subject, Relation.SUBJECT))
        if has_comma:
            self.parse_complements(node, stop_at_comma=True)
        else:
            self.parse_event_complements(node, verb)
        return node

    def parse_event_complements(self, node: ParseNode, verb: Token) -> None:
        arity = _EVENT_ARITY.get(verb.lemma, ())
        for want in arity:
            if want == "PP":
                if not self.at(Category.PREP):
                    raise self.fail(f"{verb.lemma!r} trigger needs a preposition")
                node.add(self.parse_pp())
            elif want == "NP":
                node.add(self._as(self.parse_np(), Relation.DOBJ))

    # -- clause chains ---------------------------------------------------

    def parse_clause_chain(self) -> ParseNode:
        first = self.parse_clause()
        current = first
        while self.at(Category.CONJ_AND, Category.CONJ_THEN):
            conj = self.take()
            rel = Relation.SEQ if conj.category == Category.CONJ_THEN else Relation.CONJ
            nxt = self.parse_clause(allow_bare_vp=True)
            nxt.relation = rel
            current.add(nxt)
            current = nxt
        return first

    def parse_clause(self, allow_bare_vp: bool = False) -> ParseNode:
        loop = self.parse_loop_prefix()
        subject = None
        if self.looks_like_vp_start():
            if not allow_bare_vp:
                raise self.fail("imperative without a subject is unsupported")
        else:
            subject = self.parse_subject()
        verb_node = self.parse_vp(subject)
        for extra in loop:
            verb_node.add(extra)
        return verb_node

    def looks_like_vp_start(self) -> bool:
        tok = self.peek()
        if tok is None:
            return False
        if tok.category == Category.VERB:
            return True
        # unknown word followed by an NP opener reads as an unknown verb
        if tok.category == Category.UNKNOWN and self.at(
                Category.DET, Category.NUM, offset=1):
            return True
        return False

    # -- loop prefixes ----------------------------------------------------

    def parse_loop_prefix(self) -> list[ParseNode]:
        out: list[ParseNode] = []
        tok = self.peek()
        if tok is None:
            return out
        if tok.category == Category.ADV and tok.lemma in self.lex.loop_markers:
            node = ParseNode(self.take(), Relation.ADVMOD)
            node.flags.add("loop_forever")
            out.append(node)
        elif tok.category == Category.NUM and self.at_lemma("time", offset=1):
            num = self.take()
            times = self.take()
            node = ParseNode(num, Relation.NUMMOD)
            node.flags.add("loop_count")
            node.add(ParseNode(times, Relation.ADVMOD))
            out.append(node)
        elif tok.category == Category.DET and tok.lemma == "every":
            self.take()
            trait = None
            if self.at(Category.ADJ, Category.NUM) or (
                    self.at(Category.TIME_UNIT) and False):
                trait = self.take()
            elif self.at(Category.ADV, Category.UNKNOWN) and self.at(
                    Category.TIME_UNIT, offset=1):
                trait = self.take()
            if not self.at(Category.TIME_UNIT):
                raise self.fail("'every' needs a time unit")
            unit = self.take()
            node = ParseNode(unit, Relation.TIME)
            node.flags.add("interval")
            if trait is not None:
                rel = Relation.NUMMOD if trait.category == Category.NUM else Relation.AMOD
                node.add(ParseNode(trait, rel))
            out.append(node)
        return out

    # -- noun phrases ------------------------------------------------------

    def parse_subject(self) -> ParseNode:
        # vocative: bare singular noun, optional comma, then a base verb
        tok = self.peek()
        if tok is not None and tok.category in (Category.NOUN, Category.UNKNOWN):
            nxt = self.peek(1)
            comma = nxt is not None and nxt.category == Category.PUNCT and nxt.text == ","
            verb_at = 2 if comma else 1
            vtok = self.peek(verb_at)
            if (not tok.plural and vtok is not None
                    and vtok.category == Category.VERB
                    and vtok.verb_form == VerbForm.BASE
                    and vtok.lemma not in ("be", "will")):
                noun = self.take()
                if comma:
                    self.take()
                node = ParseNode(noun, Relation.SUBJECT)
                node.flags.add("vocative")
                return node
        return self._as(self.parse_np(subject_position=True), Relation.SUBJECT)

    def parse_np(self, subject_position: bool = False) -> ParseNode:
        tok = self.peek()
        if tok is None:
            raise self.fail("expected a noun phrase")

        if tok.category == Category.PRON:
            return ParseNode(self.take(), Relation.DOBJ)
        if tok.category == Category.NUM and not self._num_heads_noun():
            return ParseNode(self.take(), Relation.DOBJ)

        det = None
        count = None
        if tok.category == Category.DET:
            det = self.take()
            if det.deictic and not self._np_head_ahead():
                # standalone deixis: "this is ..." / "these are ..."
                return ParseNode(det, Relation.DOBJ)
        if self.at(Category.NUM):
            count = self.take()

        mods: list[Token] = []
        while True:
            cur = self.peek()
            if cur is None:
                break
            if cur.category in (Category.ADJ, Category.ADV):
                nxt = self.peek(1)
                if cur.category == Category.ADV and not (
                        nxt and nxt.category in (Category.ADJ, Category.ADV,
                                                 Category.NOUN, Category.UNKNOWN)):
                    break
                mods.append(self.take())
            elif cur.category == Category.UNKNOWN and self._np_head_ahead(offset=1):
                mods.append(self.take())
            elif (cur.category == Category.TIME_UNIT
                  and cur.lemma in self.lex.adjectives
                  and self.peek(1) is not None
                  and self.peek(1).category in (Category.NOUN, Category.UNKNOWN)):
                mods.append(self.take())      # ordinal reading: "second score"
            else:
                break

        head = self.peek()
        if head is None or head.category not in (Category.NOUN, Category.UNKNOWN,
                                                 Category.TIME_UNIT):
            raise self.fail("expected a noun")
        head = self.take()

        node = ParseNode(head, Relation.DOBJ)
        if det is not None:
            node.add(ParseNode(det, Relation.DET))
        if count is not None:
            node.add(ParseNode(count, Relation.NUMMOD))
        for m in mods:
            node.add(ParseNode(m, Relation.AMOD))
        if self.at(Category.NUM) and not self.at_lemma("time", offset=1):
            node.add(ParseNode(self.take(), Relation.NUMMOD))

        if subject_position and self.at(Category.PREP) and not self.at_lemma("for"):
            node.add(self.parse_pp())
        return node

    def _np_head_ahead(self, offset: int = 0) -> bool:
        """Is a noun head (possibly after modifiers) coming up?"""
        i = offset
        while True:
            tok = self.peek(i)
            if tok is None:
                return False
            if tok.category in (Category.NOUN,):
                return True
            if tok.category in (Category.ADJ, Category.ADV, Category.NUM):
                i += 1
                continue
            if tok.category == Category.TIME_UNIT \
                    and tok.lemma in self.lex.adjectives:
                i += 1                         # ordinal reading: "second goal"
                continue
            if tok.category == Category.UNKNOWN:
                nxt = self.peek(i + 1)
                if nxt is not None and nxt.category in (
                        Category.NOUN, Category.ADJ, Category.UNKNOWN):
                    i += 1
                    continue
                return True                    # unknown head noun
            return False

    def _num_heads_noun(self) -> bool:
        nxt = self.peek(1)
        return nxt is not None and nxt.category in (
            Category.NOUN, Category.ADJ, Category.UNKNOWN)

    # -- verb phrases --------------------------------------------------------

    def parse_verb_head(self) -> Token:
        tok = self.peek()
        if tok is None:
            raise self.fail("expected a verb")
        if tok.category == Category.VERB and tok.lemma == "will":
            self.take()
            nxt = self.peek()
            if nxt is None or nxt.category not in (Category.VERB, Category.UNKNOWN):
                raise self.fail("'will' needs a verb")
            inner = self.take()
            return self._normalize_verb(inner)
        if tok.category == Category.VERB and tok.lemma == "be":
            return self.take()
        if tok.category == Category.VERB:
            return self.take()
        if tok.category == Category.UNKNOWN:
            return self._normalize_verb(self.take())
        raise self.fail(f"expected a verb, got {tok.text!r}")

    def _normalize_verb(self, tok: Token) -> Token:
        """Coerce an UNKNOWN token in verb position into a VERB token."""
        if tok.category == Category.VERB:
            return tok
        from .lexicon import strip_third_person
        return Token(tok.text, strip_third_person(tok.lemma), tok.index,
                     Category.VERB, verb_form=VerbForm.THIRD)

    def parse_vp(self, subject: ParseNode | None) -> ParseNode:
        verb = self.parse_verb_head()

        if verb.lemma == "be":
            nxt = self.peek()
            if nxt is not None and nxt.category == Category.VERB:
                if nxt.verb_form == VerbForm.GERUND:
                    verb = self.take()          # progressive: is jumping
                    return self._finish_vp(verb, subject)
                if nxt.verb_form == VerbForm.PAST:
                    raise self.fail("passive voice is unsupported")
            return self.parse_copular(verb, subject)

        if verb.lemma == "become":
            return self.parse_copular(verb, subject)

        if verb.lemma == "stop" and self.at(Category.VERB) \
                and self.peek().verb_form == VerbForm.GERUND:
            node = ParseNode(verb, Relation.ROOT)
            if subject is not None:
                node.add(subject)
            stopped = self.take()
            node.add(ParseNode(stopped, Relation.DOBJ))
            return node

        return self._finish_vp(verb, subject)

    def _finish_vp(self, verb: Token, subject: ParseNode | None) -> ParseNode:
        node = ParseNode(verb, Relation.ROOT)
        if subject is not None:
            node.add(subject)
        # up to two bare NPs: indirect then direct object
        objects: list[ParseNode] = []
        while len(objects) < 2 and self._np_start_ahead():
            objects.append(self.parse_np())
        if len(objects) == 1:
            node.add(self._as(objects[0], Relation.DOBJ))
        elif len(objects) == 2:
            node.add(self._as(objects[0], Relation.IOBJ))
            node.add(self._as(objects[1], Relation.DOBJ))
        self.parse_complements(node)
        return node

    def _np_start_ahead(self) -> bool:
        tok = self.peek()
        if tok is None:
            return False
        if tok.category in (Category.DET, Category.PRON):
            return True
        if tok.category in (Category.NOUN,):
            return True
        if tok.category == Category.NUM:
            return True
        if tok.category in (Category.ADJ, Category.UNKNOWN):
            return self._np_head_ahead()
        if tok.category == Category.TIME_UNIT \
                and tok.lemma in self.lex.adjectives:
            return self._np_head_ahead()
        return False

    def parse_complements(self, node: ParseNode, stop_at_comma: bool = False) -> None:
        while self.pos < len(self.toks):
            tok = self.peek()
            if tok.category == Category.PUNCT and tok.text == ",":
                if stop_at_comma:
                    return
                break
            if tok.category in (Category.CONJ_AND, Category.CONJ_THEN):
                return
            if tok.category == Category.PREP and tok.lemma == "for" \
                    and self.at(Category.NUM, offset=1) \
                    and self.at(Category.TIME_UNIT, offset=2):
                self.take()
                num = self.take()
                unit = self.take()
                tnode = ParseNode(unit, Relation.TIME)
                tnode.flags.add("duration")
                tnode.add(ParseNode(num, Relation.NUMMOD))
                node.add(tnode)
                continue
            if tok.category == Category.PREP:
                node.add(self.parse_pp())
                continue
            if tok.category == Category.ADV:
                adv = self.take()
                child = ParseNode(adv, Relation.ADVMOD)
                if adv.lemma in self.lex.loop_markers:
                    child.flags.add("loop_forever")
                node.add(child)
                continue
            if tok.category == Category.ADJ:
                node.add(ParseNode(self.take(), Relation.AMOD))
                continue
            if tok.category == Category.NUM and self.at_lemma("time", offset=1):
                num = self.take()
                times = self.take()
                child = ParseNode(num, Relation.NUMMOD)
                child.flags.add("loop_count")
                child.add(ParseNode(times, Relation.ADVMOD))
                node.add(child)
                continue
            break
        if self.pos < len(self.toks) and not stop_at_comma:
            tok = self.peek()
            if tok.category not in (Category.CONJ_AND, Category.CONJ_THEN,
                                    Category.PUNCT):
                raise self.fail(f"unexpected {tok.text!r} after verb phrase")

    def parse_copular(self, verb: Token, subject: ParseNode | None) -> ParseNode:
        """Copular complements: labeling nouns, adjectives, negation.

        Accepts comma-separated complement lists ("the first score, goal").
        """
        node = ParseNode(verb, Relation.ROOT)
        if subject is not None:
            node.add(subject)
        while True:
            negated = False
            if self.at(Category.NEG):
                node.add(ParseNode(self.take(), Relation.NEG))
                negated = True
            tok = self.peek()
            if tok is None:
                if negated:
                    raise self.fail("negation needs an adjective")
                break
            if tok.category in (Category.ADJ, Category.ADV) and not self._np_head_ahead():
                amod = self._parse_adjective_chain()
                node.add(amod)
            elif self._np_start_ahead():
                node.add(self._as(self.parse_np(), Relation.DOBJ))
            else:
                raise self.fail(f"unsupported copular complement {tok.text!r}")
            if self.at(Category.PUNCT) and self.peek().text == ",":
                nxt = self.peek(1)
                if nxt is not None and nxt.category in (
                        Category.NOUN, Category.ADJ, Category.DET,
                        Category.UNKNOWN):
                    self.take()
                    continue
            break
        return node

    def _parse_adjective_chain(self) -> ParseNode:
        """Adverb intensifiers then the adjective: "very very fast"."""
        advs: list[Token] = []
        while self.at(Category.ADV) and self.peek(1) is not None and \
                self.peek(1).category in (Category.ADV, Category.ADJ):
            advs.append(self.take())
        tok = self.take()
        amod = ParseNode(tok, Relation.AMOD)
        for a in advs:
            amod.add(ParseNode(a, Relation.ADVMOD))
        return amod

    def parse_pp(self) -> ParseNode:
        prep = self.take()
        node = ParseNode(prep, Relation.PREP)
        if not self._np_start_ahead():
            raise self.fail(f"dangling preposition {prep.text!r}")
        node.add(self._as(self.parse_np(), Relation.POBJ))
        return node

    @staticmethod
    def _as(node: ParseNode, relation: Relation) -> ParseNode:
        node.relation = relation
        return node
