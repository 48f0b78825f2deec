"""Fill S2 noun slots with concrete entity ids from world context.

Deixis binds against the user's currently-touched entities in mention
order; "the X" binds label-query matches; "a/an X" stays late-bound and
is re-picked randomly at each execution; bare plurals stay type slots
so rules can match entities created later. Binding failures surface as
slot errors for the diagram instead of aborting the staging flow.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import SlotImmutable, UnknownEntity
from ..semantics import s2
from ..semantics.s2 import NounSpec, S2Element
from ..world.world import World

INSTANCES = "INSTANCES"
TYPE = "TYPE"
UNSPECIFIC = "UNSPECIFIC"
RESERVED = "RESERVED"

LABEL_MATCH = "LABEL_MATCH"
DEIXIS = "DEIXIS"
USER_LINK = "USER_LINK"
COREFERENCE = "COREFERENCE"

NO_MATCH = "NO_MATCH"
INSUFFICIENT = "INSUFFICIENT_COUNT"
NO_SELECTION = "NO_SELECTION"
UNRESOLVED = "UNRESOLVED_PRONOUN"

# (verb, role[, preposition]) positions that name prototypes or labels
# rather than referencing world entities
_SKIP_DOBJ_VERBS = {"create", "be", "become"}
_PROTO_PREPS = {"transform": ("into", "in"), "pack": ("with",)}


@dataclass
class BindingSlot:
    node: S2Element
    spec: NounSpec
    mode: str
    source: str = LABEL_MATCH
    entities: list[int] = field(default_factory=list)
    reserved: str | None = None
    error: str | None = None
    ambiguous: bool = False
    confirmed: bool = False

    @property
    def blocking(self) -> bool:
        return self.error is not None

    def sync_node(self) -> None:
        if self.mode == INSTANCES:
            self.node.value[s2.V_THING_INSTANCE] = list(self.entities) or [0]

    def resolve(self, world: World, rng) -> list[int]:
        """Entity ids to act on right now (late binding happens here)."""
        if self.mode == INSTANCES:
            return [e for e in self.entities if world.alive(e)]
        if self.mode in (TYPE, UNSPECIFIC):
            noun = None if self.spec.reserved == "THING" else self.spec.lemma
            found = world.query(noun, tuple(self.spec.positive_adjectives),
                                within=self.spec.hierarchy[1] if self.spec.hierarchy else None,
                                numeric=self.spec.numeric_filter)
            if self.mode == UNSPECIFIC:
                want = max(1, int(self.spec.count))
                if len(found) <= want:
                    return found
                return sorted(rng.sample(found, want))
            return found
        return []


def bind(root: S2Element, world: World,
         selection_context: list[int] | None = None,
         confirmed_slots: dict[int, BindingSlot] | None = None) -> list[BindingSlot]:
    """Produce binding slots for every referential noun node under root."""
    selection = list(selection_context or [])
    slots: list[BindingSlot] = []
    deixis_cursor = 0

    nouns = [el for el in root.walk() if el.is_noun() and _is_referential(el)]
    nouns.sort(key=lambda el: el.token.index if el.token else 0)

    for node in nouns:
        spec = node.noun_spec()
        slot = BindingSlot(node=node, spec=spec, mode=INSTANCES)
        if node.refers_to is not None:
            slot.source = COREFERENCE

        if spec.reserved in ("SELF", "VIEW"):
            slot.mode = RESERVED
            slot.reserved = spec.reserved
        elif s2.UNRESOLVED_PRONOUN in node.annotations:
            slot.error = UNRESOLVED
        elif spec.deictic:
            slot.source = DEIXIS
            if spec.plural:
                picked = selection[deixis_cursor:]
                deixis_cursor = len(selection)
            else:
                picked = selection[deixis_cursor:deixis_cursor + 1]
                deixis_cursor += 1
            if picked:
                slot.entities = list(picked)
            else:
                slot.error = NO_SELECTION
        elif node.kind == s2.V_THING_TYPE:
            slot.mode = TYPE
            if spec.reserved == "THING":
                slot.reserved = "THING"
        elif not spec.specific:
            slot.mode = UNSPECIFIC
        else:
            noun = None if spec.reserved == "THING" else spec.lemma
            if spec.reserved == "THING" and selection:
                slot.source = DEIXIS
                slot.entities = list(selection)
            else:
                found = world.query(
                    noun, tuple(spec.positive_adjectives),
                    within=spec.hierarchy[1] if spec.hierarchy else None,
                    numeric=spec.numeric_filter)
                if spec.wants_all:
                    slot.entities = found
                elif not found:
                    slot.error = NO_MATCH
                elif spec.count > 1:
                    if len(found) < spec.count:
                        slot.error = INSUFFICIENT
                        slot.entities = found
                    else:
                        slot.entities = found[:int(spec.count)]
                elif spec.plural:
                    slot.entities = found
                else:
                    slot.entities = found[:1]
                    slot.ambiguous = len(found) > 1
        slot.sync_node()
        slots.append(slot)
    return slots


def _is_referential(node: S2Element) -> bool:
    if node.kind == "VALUE":
        return False                      # numeric literal
    action = node.parent
    while action is not None and not action.is_action():
        action = action.parent
    if action is None:
        return True
    verb = action.label
    if node.node_type == s2.DIRECT_OBJECT and verb in _SKIP_DOBJ_VERBS:
        return False
    if node.node_type == s2.OBJECT and verb in _PROTO_PREPS:
        prep = node.parent
        if prep is not None and prep.node_type == s2.PREPOSITION \
                and prep.label in _PROTO_PREPS[verb]:
            return False
    return True


def relink(slot: BindingSlot, world: World, entity_id: int,
           replace: bool = False) -> None:
    if slot.confirmed:
        raise SlotImmutable("command already confirmed")
    if not world.alive(entity_id):
        raise UnknownEntity(str(entity_id))
    if replace:
        slot.entities = [entity_id]
    elif entity_id not in slot.entities:
        slot.entities.append(entity_id)
    slot.mode = INSTANCES
    slot.source = USER_LINK
    slot.error = None
    slot.ambiguous = False
    slot.sync_node()


def unlink(slot: BindingSlot, world: World, entity_id: int) -> None:
    if slot.confirmed:
        raise SlotImmutable("command already confirmed")
    if entity_id in slot.entities:
        slot.entities.remove(entity_id)
    slot.source = USER_LINK
    slot.sync_node()
