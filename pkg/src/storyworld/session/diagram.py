"""Semantics diagram model: one block per salient word with bindings.

The diagram mirrors the machine's reading of a staged command: noun
blocks carry their bound entities, unknown verbs carry substitution
suggestions, and binding failures show as error markers. Relinking
updates the underlying slot, so the diagram always reflects current
bindings.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..binding.binder import BindingSlot
from ..semantics import s2
from ..semantics.s2 import S2Element


@dataclass
class DiagramBlock:
    word_id: int | None
    text: str
    kind: str                      # noun | verb | preposition | marker
    node_id: int | None = None
    entity_ids: list[int] = field(default_factory=list)
    error: str | None = None
    suggestions: list[str] = field(default_factory=list)


@dataclass
class DiagramModel:
    blocks: list[DiagramBlock] = field(default_factory=list)
    errors: list[str] = field(default_factory=list)

    def state(self) -> dict:
        return {
            "blocks": [{
                "word_id": b.word_id, "text": b.text, "kind": b.kind,
                "node_id": b.node_id, "entities": b.entity_ids,
                "error": b.error, "suggestions": b.suggestions,
            } for b in self.blocks],
            "errors": self.errors,
        }


def build_diagram(root: S2Element, slots: list[BindingSlot],
                  word_id_for_token: dict[int, int],
                  verb_errors: dict[int, tuple[str, list[str]]],
                  extra_errors: list[str]) -> DiagramModel:
    slot_by_node = {slot.node.elem_id: slot for slot in slots}
    blocks: list[DiagramBlock] = []

    items: list[tuple[int, S2Element, str]] = []
    for el in root.walk():
        if el.token is None:
            continue
        if el.is_action():
            items.append((el.token.index, el, "verb"))
        elif el.is_noun() and el.elem_id in slot_by_node:
            items.append((el.token.index, el, "noun"))
        elif el.node_type == s2.PREPOSITION and el.kind != "HIERARCHY":
            items.append((el.token.index, el, "preposition"))
    items.sort(key=lambda t: t[0])

    model = DiagramModel()
    for tok_index, el, kind in items:
        block = DiagramBlock(
            word_id=word_id_for_token.get(tok_index),
            text=el.token.text if kind != "noun" else el.label,
            kind=kind, node_id=el.elem_id)
        if kind == "noun":
            slot = slot_by_node[el.elem_id]
            block.entity_ids = list(slot.entities)
            if slot.blocking:
                block.error = slot.error
                model.errors.append(f"{el.label}: {slot.error}")
        if kind == "verb" and el.token.index in verb_errors:
            err, suggestions = verb_errors[el.token.index]
            block.error = err
            block.suggestions = suggestions
            model.errors.append(f"{el.label}: {err}")
        blocks.append(block)
    model.blocks = blocks
    model.errors.extend(extra_errors)
    return model
