"""Continuous adjective/adverb modulation of verb behavior.

Factors are recomputed every tick from the agent's current adjective
labels plus the command's own modifiers, so labeling an entity "slow"
mid-flight changes motion that is already running. Adverbs heighten the
adjective's effect multiplicatively: they push speed-up factors further
above 1 and slow-down factors further below it, and they chain.
"""

from __future__ import annotations

from ..grammar.lexicon import Lexicon
from ..world.entity import Entity


def _chain_factor(base: float, adverb_product: float) -> float:
    if base >= 1.0:
        return base * adverb_product
    return base / adverb_product


def _entry_factors(lex: Lexicon, entry: str) -> tuple[float, float]:
    """(speed, magnitude) factors for one label entry like "very fast"."""
    words = entry.split()
    adv_product = 1.0
    for w in words[:-1]:
        f = lex.adverb_factor(w)
        if f is not None:
            adv_product *= f
    head = words[-1]
    table = lex.adjective_factors(head)
    speed = table.get("speed", 1.0)
    magnitude = table.get("magnitude", 1.0)
    if adv_product != 1.0:
        if speed != 1.0:
            speed = _chain_factor(speed, adv_product)
        if magnitude != 1.0:
            magnitude = _chain_factor(magnitude, adv_product)
    return speed, magnitude


def modulation(lex: Lexicon, entity: Entity | None,
               action_modifiers: tuple[tuple[str, bool], ...] = ()
               ) -> tuple[float, float]:
    """Current (speed, magnitude) multipliers for one agent."""
    speed = magnitude = 1.0
    if entity is not None:
        for entry in entity.adjective_labels:
            s, m = _entry_factors(lex, entry)
            speed *= s
            magnitude *= m
    pending_advs = 1.0
    for lemma, negated in action_modifiers:
        if negated:
            continue
        adv = lex.adverb_factor(lemma)
        if adv is not None:
            pending_advs *= adv
            continue
        adj = lemma if lemma in lex.adjectives else lex.adverb_adjective(lemma)
        if adj is not None:
            table = lex.adjective_factors(adj)
            s, m = table.get("speed", 1.0), table.get("magnitude", 1.0)
            if pending_advs != 1.0:
                s = _chain_factor(s, pending_advs) if s != 1.0 else s
                m = _chain_factor(m, pending_advs) if m != 1.0 else m
                pending_advs = 1.0
            speed *= s
            magnitude *= m
    return speed, magnitude
