"""Coreference substitution over built S2 graphs.

A pronoun (or a repeated definite noun within the same utterance) is
replaced by a clone of its antecedent element; the clone keeps the
antecedent's key and bound value and records the link in refers_to.

Antecedent choice is deterministic: number must agree, grammatical
gender is ignored, anything co-referring with another argument of the
pronoun's own clause is excluded, and agents are preferred over other
roles before recency breaks ties. Unresolved pronouns are annotated and
surface as empty slots, never as hard failures.
"""

from __future__ import annotations

from . import s2
from .s2 import S2Element


def resolve_coreference(root: S2Element,
                        history: list[S2Element] | None = None) -> int:
    history = history or []
    substitutions = 0
    entries = root.get(s2.CMD_LIST)
    for entry_idx, entry in enumerate(entries):
        nouns = _nouns_in_order(entry)
        for noun in nouns:
            if s2.PRONOUN in noun.annotations:
                antecedent = _find_antecedent(noun, entry, entries[:entry_idx],
                                              history)
                if antecedent is None:
                    noun.annotations.add(s2.UNRESOLVED_PRONOUN)
                    continue
                _substitute(noun, antecedent)
                substitutions += 1
            elif _is_repeated_definite(noun):
                earlier = _earlier_same_noun(noun, entry)
                if earlier is not None:
                    _substitute(noun, earlier)
                    substitutions += 1
    return substitutions


def _nouns_in_order(scope: S2Element) -> list[S2Element]:
    nouns = [el for el in scope.walk() if el.is_noun() and el.token is not None]
    nouns.sort(key=lambda el: el.token.index)
    return nouns


def _origin(el: S2Element) -> S2Element:
    while el.refers_to is not None:
        el = el.refers_to
    return el


def _governing_action(el: S2Element) -> S2Element | None:
    cur = el.parent
    while cur is not None:
        if cur.is_action():
            return cur
        cur = cur.parent
    return None


def _clause_arguments(action: S2Element | None) -> list[S2Element]:
    if action is None:
        return []
    args = []
    for key in s2.NOUN_ROLES:
        args.extend(action.get(key))
    for prep in action.get(s2.PREPOSITION):
        args.extend(prep.get(s2.OBJECT))
    return args


def _find_antecedent(pronoun: S2Element, entry: S2Element,
                     earlier_entries: list[S2Element],
                     history: list[S2Element]) -> S2Element | None:
    excluded = {_origin(a).elem_id
                for a in _clause_arguments(_governing_action(pronoun))}

    def candidates(scope: S2Element, before: int | None) -> list[S2Element]:
        out = []
        for el in _nouns_in_order(scope):
            if el is pronoun:
                continue
            if before is not None and el.token.index >= before:
                continue
            if s2.PRONOUN in el.annotations or s2.UNRESOLVED_PRONOUN in el.annotations:
                continue
            if any(a in el.annotations for a in
                   (s2.RESERVED_SELF, s2.RESERVED_VIEW, s2.RESERVED_THING)):
                continue
            if not el.label:
                continue
            spec = el.noun_spec()
            if spec.plural != pronoun.token.plural:
                continue
            if _origin(el).elem_id in excluded:
                continue
            out.append(el)
        return out

    scopes: list[list[S2Element]] = [candidates(entry, pronoun.token.index)]
    for prior in reversed(earlier_entries):
        scopes.append(candidates(prior, None))
    for prior_root in reversed(history):
        for prior_entry in reversed(prior_root.get(s2.CMD_LIST)):
            scopes.append(candidates(prior_entry, None))

    for scope in scopes:
        agents = [el for el in scope if el.node_type == s2.AGENT]
        pool = agents or scope
        if pool:
            return _origin(max(pool, key=lambda el: el.token.index))
    return None


def _is_repeated_definite(noun: S2Element) -> bool:
    if noun.refers_to is not None or not noun.label:
        return False
    if noun.kind != s2.V_THING_INSTANCE:
        return False
    spec = noun.noun_spec()
    return spec.determiner == "the" and not spec.deictic


def _earlier_same_noun(noun: S2Element, entry: S2Element) -> S2Element | None:
    spec = noun.noun_spec()
    best = None
    for el in _nouns_in_order(entry):
        if el is noun or el.token.index >= noun.token.index:
            continue
        if s2.PRONOUN in el.annotations or el.refers_to is not None:
            continue
        if el.label != noun.label or el.kind != s2.V_THING_INSTANCE:
            continue
        other = el.noun_spec()
        if other.determiner != "the" or other.plural != spec.plural:
            continue
        if sorted(other.adjectives) != sorted(spec.adjectives):
            continue
        if other.hierarchy != spec.hierarchy:
            continue
        best = el
    return _origin(best) if best is not None else None


def _substitute(noun: S2Element, antecedent: S2Element) -> None:
    clone = antecedent.clone()
    clone.refers_to = antecedent
    clone.token = noun.token         # clone sits at the substituted word
    parent = noun.parent
    for key, lst in parent.children.items():
        for i, el in enumerate(lst):
            if el is noun:
                clone.parent = parent
                lst[i] = clone
                return
