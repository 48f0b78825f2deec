"""Session: transcript, staging, confirmation, and panel operations.

Staging parses and binds the selected words without touching the world;
only confirm compiles and launches scripts or installs rules, at the
next tick boundary. Copular labeling sentences ("this is a boy") apply
as soon as they are spoken, against the entities currently touched.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..binding.binder import BindingSlot, bind, relink, unlink
from ..errors import EngineError, UnknownEntry, UnknownVerb, UnsupportedGrammar
from ..grammar.parse_tree import ParseNode, Relation
from ..grammar.parser import parse_sentence
from ..grammar.tokenizer import split_sentences, tokenize
from ..grammar.tokens import Category, Token, VerbForm
from ..semantics import s2
from ..semantics.builder import build_command
from ..semantics.s2 import S2Element
from .diagram import DiagramModel, build_diagram
from .host import SimulationHost
from .transcript import Transcript

STAGED = "STAGED"
CONFIRMED = "CONFIRMED"
DISCARDED = "DISCARDED"


@dataclass
class StagedCommand:
    word_ids: list[int]
    tokens: list[Token]
    root: S2Element | None
    slots: list[BindingSlot]
    diagram: DiagramModel
    state: str = STAGED
    parse_errors: list[str] = field(default_factory=list)

    @property
    def blocked(self) -> bool:
        return bool(self.diagram.errors or self.parse_errors or self.root is None)


class Session:
    def __init__(self, host: SimulationHost):
        self.host = host
        self.transcript = Transcript()
        self.staged: StagedCommand | None = None
        self.history: list[S2Element] = []
        self.selection: list[int] = []
        self.substitutions: dict[str, str] = {}

    # -- speech & transcript ---------------------------------------------------

    def append_speech(self, text: str) -> None:
        words = self.transcript.append(text)
        self._auto_apply_labels(words)

    @staticmethod
    def _is_pure_labeling(parse: ParseNode) -> bool:
        """Copular chains only ("this is a boy and this is a ball")."""
        if parse.child(Relation.CONDITION) is not None:
            return False
        node = parse
        while node is not None:
            if node.token.lemma != "be":
                return False
            node = node.child(Relation.CONJ) or node.child(Relation.SEQ)
        return True

    def _auto_apply_labels(self, words) -> None:
        """Labeling sentences apply as spoken, without staging."""
        text = " ".join(w.text for w in words)
        try:
            tokens = self._substitute(tokenize(text, self.host.lex))
        except EngineError:
            return
        word_map = self._map_tokens_to_words(text, tokens, words)
        for sentence in split_sentences(tokens):
            try:
                parse = parse_sentence(sentence, self.host.lex)
            except EngineError:
                continue
            if not self._is_pure_labeling(parse):
                continue
            try:
                root = build_command([parse], self.history, self.host.lex)
                slots = bind(root, self.host.world, self.selection)
                if any(slot.blocking for slot in slots):
                    continue
                compiled = self.host.compiler.compile_command(root, slots)
            except EngineError:
                continue
            # labeling applies as spoken, not on the next tick
            from ..vm.script import Call
            from ..vm.verbs import apply_label_args
            for program, label in compiled.programs:
                for instr in program:
                    if isinstance(instr, Call):
                        args = instr.invocation.resolve(self.host.world,
                                                        self.host.rng)
                        apply_label_args(self.host.world, args)
            self.history.append(root)
            self.selection.clear()
            # consumed: the next staged command should skip these words
            applied_ids = {word_map.get(t.index) for t in sentence}
            for w in words:
                if w.id in applied_ids:
                    w.selected = False

    def edit_text(self, start: int, end: int, replacement: str) -> None:
        self.transcript.edit_text(start, end, replacement)

    def select_words(self, start: int, end: int, on: bool) -> None:
        self.transcript.select_words(start, end, on)

    # -- pointer context ------------------------------------------------------

    def pointer_down(self, entity_ids: list[int]) -> None:
        for eid in entity_ids:
            if self.host.world.alive(eid) and eid not in self.selection:
                self.selection.append(eid)

    def pointer_move(self, entity_id: int, x: float, y: float) -> None:
        if self.host.world.alive(entity_id):
            self.host.world.set_world_position(entity_id, x, y)

    def pointer_up(self, entity_ids: list[int]) -> None:
        pass                                   # taps keep their place in order

    # -- staging ----------------------------------------------------------------

    def _substitute(self, tokens: list[Token]) -> list[Token]:
        if not self.substitutions:
            return tokens
        from ..grammar.lexicon import strip_third_person
        out = []
        for t in tokens:
            key = t.lemma if t.lemma in self.substitutions else \
                strip_third_person(t.lemma)
            if key in self.substitutions and t.category in (
                    Category.VERB, Category.UNKNOWN):
                out.append(Token(t.text, self.substitutions[key], t.index,
                                 Category.VERB, verb_form=VerbForm.BASE))
            else:
                out.append(t)
        return out

    @staticmethod
    def _map_tokens_to_words(text: str, tokens: list[Token],
                             words) -> dict[int, int]:
        """token index -> transcript word id, by character offsets."""
        char_to_word: dict[int, int] = {}
        pos = 0
        for w in words:
            for i in range(len(w.text)):
                char_to_word[pos + i] = w.id
            pos += len(w.text) + 1
        word_for_token: dict[int, int] = {}
        cursor = 0
        for tok in tokens:
            found = text.find(tok.text, cursor)
            if found >= 0:
                word_for_token[tok.index] = char_to_word.get(found, -1)
                cursor = found + len(tok.text)
        return word_for_token

    def _tokenize_selected(self) -> tuple[list[Token], dict[int, int], list]:
        words = self.transcript.selected_words()
        text = " ".join(w.text for w in words)
        tokens = self._substitute(tokenize(text, self.host.lex))
        return tokens, self._map_tokens_to_words(text, tokens, words), words

    def _split_commands(self, tokens: list[Token], word_map: dict[int, int],
                        words) -> list[list[Token]]:
        """Sentence split on punctuation and on utterance boundaries."""
        segment_of = {w.id: w.segment for w in words}
        chunks: list[list[Token]] = []
        current: list[Token] = []
        prev_segment = None
        for tok in tokens:
            seg = segment_of.get(word_map.get(tok.index))
            if current and seg is not None and prev_segment is not None \
                    and seg != prev_segment:
                chunks.append(current)
                current = []
            current.append(tok)
            if seg is not None:
                prev_segment = seg
            if tok.is_sentence_end():
                chunks.append(current)
                current = []
        if any(t.category != Category.PUNCT for t in current):
            chunks.append(current)
        return chunks

    def stage(self) -> StagedCommand:
        tokens, word_map, words = self._tokenize_selected()
        word_ids = [w.id for w in words]
        parse_errors: list[str] = []
        parses: list[ParseNode] = []
        for sentence in self._split_commands(tokens, word_map, words):
            try:
                parses.append(parse_sentence(sentence, self.host.lex))
            except UnsupportedGrammar as e:
                parse_errors.append(str(e))
        root = None
        slots: list[BindingSlot] = []
        verb_errors: dict[int, tuple[str, list[str]]] = {}
        extra_errors: list[str] = []
        diagram = DiagramModel()
        if parses:
            root = build_command(parses, self.history, self.host.lex)
            slots = bind(root, self.host.world, self.selection)
            try:
                self.host.compiler.compile_command(root, slots)
            except UnknownVerb as e:
                idx = self._token_index_of_verb(root, e.lemma)
                verb_errors[idx] = ("unknown verb", e.suggestions)
            except EngineError as e:
                extra_errors.append(str(e))
            diagram = build_diagram(root, slots, word_map, verb_errors,
                                    extra_errors)
        diagram.errors.extend(parse_errors)
        self.staged = StagedCommand(word_ids=word_ids, tokens=tokens,
                                    root=root, slots=slots, diagram=diagram,
                                    parse_errors=parse_errors)
        return self.staged

    def _token_index_of_verb(self, root: S2Element, lemma: str) -> int:
        for el in root.walk():
            if el.is_action() and el.label == lemma and el.token is not None:
                return el.token.index
        return -1

    def substitute_verb(self, unknown_lemma: str, replacement: str) -> None:
        self.substitutions[unknown_lemma] = replacement
        if self.staged is not None and self.staged.state == STAGED:
            self.stage()

    def confirm(self) -> dict:
        staged = self.staged
        if staged is None or staged.state != STAGED:
            raise EngineError("no staged command")
        if staged.blocked:
            raise EngineError("; ".join(staged.diagram.errors) or "blocked")
        compiled = self.host.compiler.compile_command(staged.root, staged.slots)
        script_ids = [self.host.vm.launch(program, label)
                      for program, label in compiled.programs]
        rule_ids = [self.host.rules.install(tr, staged.slots).id
                    for tr in compiled.rules]
        for slot in staged.slots:
            slot.confirmed = True
        staged.state = CONFIRMED
        self.history.append(staged.root)
        self.selection.clear()
        return {"scripts": script_ids, "rules": rule_ids}

    def discard(self) -> None:
        self.transcript.clear()
        if self.staged is not None:
            self.staged.state = DISCARDED
        self.staged = None

    # -- diagram editing -----------------------------------------------------------

    def slot_for_node(self, node_id: int) -> BindingSlot | None:
        if self.staged is None:
            return None
        for slot in self.staged.slots:
            if slot.node.elem_id == node_id:
                return slot
        return None

    def relink(self, node_id: int, entity_id: int, replace: bool = False) -> None:
        slot = self.slot_for_node(node_id)
        if slot is None:
            raise UnknownEntry(f"no slot for node {node_id}")
        relink(slot, self.host.world, entity_id, replace)
        self._refresh_diagram()

    def unlink(self, node_id: int, entity_id: int) -> None:
        slot = self.slot_for_node(node_id)
        if slot is None:
            raise UnknownEntry(f"no slot for node {node_id}")
        unlink(slot, self.host.world, entity_id)
        self._refresh_diagram()

    def _refresh_diagram(self) -> None:
        staged = self.staged
        if staged is None or staged.root is None:
            return
        _, word_map, _ = self._tokenize_selected()
        staged.diagram = build_diagram(staged.root, staged.slots, word_map,
                                       {}, list(staged.parse_errors))

    # -- labeling by link ---------------------------------------------------------

    def label_link(self, entity_ids: list[int], word_id: int) -> None:
        from ..binding.labeling import label_by_link
        word = self.transcript.word_by_id(word_id)
        if word is None:
            raise UnknownEntry(f"no word {word_id}")
        token = tokenize(word.text.strip(".,!?"), self.host.lex)[0]
        label_by_link(self.host.world, entity_ids, token)

    # -- find panel ------------------------------------------------------------------

    def find(self, noun: str | None, adjectives: tuple[str, ...] = ()) -> list[dict]:
        world = self.host.world
        out = []
        for eid in world.query(noun, adjectives):
            ent = world.get(eid)
            x, y = world.world_position(eid)
            out.append({"id": eid, "labels": list(ent.noun_labels),
                        "adjectives": list(ent.adjective_labels),
                        "x": x, "y": y})
        return out

    def warp_to(self, entity_id: int) -> None:
        if not self.host.world.alive(entity_id):
            raise UnknownEntry(str(entity_id))
        x, y = self.host.world.world_position(entity_id)
        cam = self.host.world.camera
        cam.follow_target = None
        cam.x, cam.y = x, y

    def copy_entity(self, entity_id: int) -> int:
        world = self.host.world
        ent = world.require(entity_id)
        record = world._record(ent)
        x, y = world.world_position(entity_id)
        return world._instantiate(record, (x + ent.width + 10.0, y), None)

    def delete_entity(self, entity_id: int) -> None:
        self.host.world.delete(entity_id)
