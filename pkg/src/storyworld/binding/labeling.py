"""Label mutations: copular deixis sentences and touch+pen word links."""

from __future__ import annotations

from ..errors import NoSelection, WordNotLabelable
from ..grammar.tokens import Category, Token
from ..world.world import World

_FLAG_ADJECTIVES = ("static", "visible", "invisible")


def apply_adjective(world: World, entity_id: int, lemma: str,
                    negated: bool = False, chain: str | None = None) -> None:
    """Apply one adjective (or its negation) to an entity.

    ``chain`` is the full modifier text ("very fast") when adverbs were
    attached; plain labels store just the lemma.
    """
    ent = world.require(entity_id)
    if lemma == "static":
        ent.static_flag = not negated
        return
    if lemma in ("visible", "invisible"):
        target = (lemma == "visible") != negated
        if target and not ent.visible:
            world.mark_appeared(entity_id)
        ent.visible = target
        return
    if negated:
        ent.remove_adjective(lemma)
    else:
        ent.remove_adjective(lemma)       # idempotent: one entry per head word
        ent.add_adjective(chain or lemma)


def label_by_deixis(world: World, targets: list[int],
                    nouns: list[tuple[str, list[tuple[str, bool, str | None]]]],
                    adjectives: list[tuple[str, bool, str | None]]) -> None:
    """Copular labeling: nouns and adjectives onto the selected entities.

    ``nouns`` pairs each noun lemma with the adjectives embedded in its
    phrase ("a visible boy"); ``adjectives`` are bare predicates
    ("... is fast"). Negated adjectives are removed instead of added.
    """
    if not targets:
        raise NoSelection("deictic labeling needs a touched entity")
    for eid in targets:
        ent = world.require(eid)
        for lemma, embedded in nouns:
            ent.add_noun(lemma)
            for adj, negated, chain in embedded:
                apply_adjective(world, eid, adj, negated, chain)
        for adj, negated, chain in adjectives:
            apply_adjective(world, eid, adj, negated, chain)


def label_by_link(world: World, entity_ids: list[int], word: Token) -> None:
    """Touch entities + pen-tap a transcript word: toggle that label."""
    if word.category == Category.NOUN or (
            word.category == Category.UNKNOWN):
        for eid in entity_ids:
            ent = world.require(eid)
            if word.lemma in ent.noun_labels:
                ent.remove_noun(word.lemma)
            else:
                ent.add_noun(word.lemma)
        return
    if word.category == Category.ADJ or (
            word.category == Category.ADV and word.lemma in _FLAG_ADJECTIVES):
        for eid in entity_ids:
            ent = world.require(eid)
            if ent.has_adjective(word.lemma):
                ent.remove_adjective(word.lemma)
            else:
                apply_adjective(world, eid, word.lemma)
        return
    raise WordNotLabelable(f"{word.text!r} is a {word.category.value}")
