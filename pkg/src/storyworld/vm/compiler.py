"""Compile complete S2 graphs into VM instruction programs.

ACTION chains become CALL/WAIT segments (simultaneous actions share one
wait queue, "and then" appends segments); loop markers wrap the whole
body; interval markers add an inter-iteration delay; duration markers
become per-call timers. Verbs missing an agent inherit the governing
action's agent. TRIGGER_RESPONSE entries are returned for the rules
engine rather than compiled here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

from ..binding.binder import RESERVED, BindingSlot
from ..errors import (MalformedParse, MisplacedEventVerb, MissingRole,
                      RecursionLimit, UnknownVerb)
from ..grammar.lexicon import Lexicon
from ..semantics import s2
from ..semantics.s2 import S2Element
from .script import (FOREVER, Call, Delay, LoopEnd, LoopStart,
                     VerbInvocation, Wait)
from .verbs import VerbArgs, VerbModule

MAX_EXPANSION_DEPTH = 16

_MOTION_PREPS = ("to", "toward", "towards", "into", "onto", "on", "at",
                 "over", "under", "up", "with", "from", "near", "in", "by",
                 "around", "above", "below")


@dataclass
class CompiledCommand:
    programs: list[tuple[list, str]] = field(default_factory=list)
    rules: list[S2Element] = field(default_factory=list)


class Compiler:
    def __init__(self, lexicon: Lexicon, registry: dict[str, VerbModule],
                 dt: float,
                 defined_lookup: Callable[[str], object] | None = None):
        self.lex = lexicon
        self.registry = registry
        self.dt = dt
        self.defined_lookup = defined_lookup or (lambda lemma: None)

    # -- entry points ---------------------------------------------------------

    def compile_command(self, root: S2Element,
                        slots: list[BindingSlot]) -> CompiledCommand:
        slots_by_id = {slot.node.elem_id: slot for slot in slots}
        out = CompiledCommand()
        for entry in root.get(s2.CMD_LIST):
            for tr in entry.get(s2.TRIGGER_RESPONSE):
                out.rules.append(tr)
            for action in entry.get(s2.ACTION):
                program = self.action_program(action, slots_by_id)
                out.programs.append((program, action.label))
        return out

    def action_program(self, action: S2Element,
                       slots_by_id: dict[int, BindingSlot],
                       depth: int = 0) -> list:
        segments = []
        self._collect_segments(action, segments, [])
        governing_agent = self._agent_slot(action, slots_by_id)
        body: list = []
        for group in segments:
            for act in group:
                inv = self.invocation(act, slots_by_id, governing_agent, depth)
                body.append(Call(inv))
            body.append(Wait())
        loop = self._loop_marker(segments)
        if loop is None:
            return body
        kind, value = loop
        if kind == "forever":
            return [LoopStart(FOREVER), *body, LoopEnd()]
        if kind == "count":
            return [LoopStart(value), *body, LoopEnd()]
        delay = Delay(self._ticks(value))
        return [LoopStart(FOREVER), *body, delay, LoopEnd()]

    # -- structure helpers -------------------------------------------------------

    def _collect_segments(self, action: S2Element, segments: list,
                          group: list) -> None:
        if not group and not segments:
            segments.append(group)
        group.append(action)
        for sim in action.get(s2.SEQUENCE_SIMULTANEOUS):
            self._collect_segments(sim, segments, group)
        for nxt in action.get(s2.SEQUENCE_THEN):
            new_group: list = []
            segments.append(new_group)
            self._collect_segments(nxt, segments, new_group)

    def _loop_marker(self, segments: list) -> tuple[str, float] | None:
        for group in segments:
            for act in group:
                for prop in act.get(s2.PROPERTY):
                    if prop.label == "modifier" \
                            and prop.value.get(s2.V_TEXT) == ["forever"]:
                        return ("forever", 0.0)
                count = act.first(s2.COUNT)
                if count is not None:
                    return ("count", count.value[s2.V_NUMERIC][0])
                for tnode in act.get(s2.TIME):
                    if tnode.type_display == "INTERVAL":
                        return ("interval", self._interval_seconds(tnode))
        return None

    def _interval_seconds(self, tnode: S2Element) -> float:
        if s2.V_NUMERIC in tnode.value:
            return float(tnode.value[s2.V_NUMERIC][0])
        for prop in tnode.get(s2.PROPERTY):
            trait = prop.value.get(s2.V_TEXT, [""])[0]
            if trait in self.lex.interval_traits:
                return float(self.lex.interval_traits[trait])
        return 1.0

    def _ticks(self, seconds: float) -> int:
        return max(1, math.ceil(seconds / self.dt - 1e-9))

    def _agent_slot(self, action: S2Element,
                    slots_by_id: dict[int, BindingSlot]) -> BindingSlot | None:
        agent = action.first(s2.AGENT)
        if agent is None:
            return None
        return slots_by_id.get(agent.elem_id)

    # -- invocations -----------------------------------------------------------

    def invocation(self, action: S2Element,
                   slots_by_id: dict[int, BindingSlot],
                   governing_agent: BindingSlot | None,
                   depth: int = 0) -> VerbInvocation:
        lemma = action.label
        module = self.registry.get(lemma)
        definition = None
        if module is None:
            definition = self.defined_lookup(lemma)
            if definition is None:
                raise UnknownVerb(lemma, self.lex.synonyms(lemma))
        elif module.event_only:
            raise MisplacedEventVerb(f"{lemma!r} is only valid in a trigger")

        agent_slot = self._agent_slot(action, slots_by_id) or governing_agent
        dobj_slots = [slots_by_id[n.elem_id] for n in action.get(s2.DIRECT_OBJECT)
                      if n.elem_id in slots_by_id]
        iobj_slots = [slots_by_id[n.elem_id] for n in action.get(s2.INDIRECT_OBJECT)
                      if n.elem_id in slots_by_id]
        prep_slots: dict[str, BindingSlot] = {}
        prep_numeric: dict[str, float] = {}
        for prep in action.get(s2.PREPOSITION):
            obj = prep.first(s2.OBJECT)
            if obj is None:
                continue
            if obj.elem_id in slots_by_id:
                prep_slots[prep.label] = slots_by_id[obj.elem_id]
            elif s2.V_NUMERIC in obj.value:
                prep_numeric[prep.label] = obj.value[s2.V_NUMERIC][0]

        direction = None
        modifiers: list[tuple[str, bool]] = []
        stop_verb: str | None = None
        for prop in action.get(s2.PROPERTY):
            text = prop.value.get(s2.V_TEXT, [""])[0]
            negated = prop.value.get(s2.V_FLAG, [True])[0] is False
            if prop.label == "verb":
                stop_verb = text
            elif prop.label == "modifier" and text in self.lex.direction_words:
                direction = text
            elif prop.label == "modifier" and text == "forever":
                continue
            else:
                chain = self._chain_text(prop)
                modifiers.append((chain, negated))

        prototype, proto_count = self._prototype(action)
        label_nouns, label_adjs = self._label_payload(action)

        timer_ticks = None
        for tnode in action.get(s2.TIME):
            if tnode.type_display == "DURATION" and s2.V_NUMERIC in tnode.value:
                timer_ticks = self._ticks(tnode.value[s2.V_NUMERIC][0])

        self._check_required(module, lemma, agent_slot, dobj_slots,
                             iobj_slots, prep_slots, prototype)

        resolver = _make_resolver(
            agent_slot, dobj_slots, iobj_slots, prep_slots, prep_numeric,
            direction, tuple(modifiers), prototype, proto_count,
            label_nouns, label_adjs, stop_verb)

        expand = None
        if definition is not None:
            if depth >= MAX_EXPANSION_DEPTH:
                raise RecursionLimit(f"verb {lemma!r} expands too deep")
            expand = definition.make_expander(self, depth)

        return VerbInvocation(verb=lemma, module=module, resolve=resolver,
                              timer_ticks=timer_ticks, expand=expand,
                              depth=depth)

    def _chain_text(self, prop: S2Element) -> str:
        advs = [p.value.get(s2.V_TEXT, [""])[0] for p in prop.get(s2.PROPERTY)]
        head = prop.value.get(s2.V_TEXT, [""])[0]
        return " ".join([*advs, head]) if advs else head

    def _prototype(self, action: S2Element) -> tuple[str | None, int]:
        verb = action.label
        if verb == "create":
            noun = action.first(s2.DIRECT_OBJECT)
            if noun is not None and noun.label:
                spec = noun.noun_spec()
                n = int(spec.count) if spec.count > 0 else 1
                return noun.label, n
        if verb in ("transform", "pack"):
            wanted = ("into", "in") if verb == "transform" else ("with",)
            for prep in action.get(s2.PREPOSITION):
                if prep.label in wanted:
                    obj = prep.first(s2.OBJECT)
                    if obj is not None and obj.label:
                        return obj.label, 1
        return None, 1

    def _label_payload(self, action: S2Element):
        nouns = []
        adjs = []
        if action.label in ("be", "become"):
            for noun in action.get(s2.DIRECT_OBJECT):
                embedded = []
                for prop in noun.get(s2.PROPERTY):
                    if prop.kind == "HIERARCHY":
                        continue
                    text = prop.value.get(s2.V_TEXT, [""])[0]
                    negated = prop.value.get(s2.V_FLAG, [True])[0] is False
                    embedded.append((text, negated, self._chain_text(prop)))
                if noun.label:
                    nouns.append((noun.label, embedded))
            for prop in action.get(s2.PROPERTY):
                if prop.label != "trait":
                    continue
                text = prop.value.get(s2.V_TEXT, [""])[0]
                negated = prop.value.get(s2.V_FLAG, [True])[0] is False
                adjs.append((text, negated, self._chain_text(prop)))
        return nouns, adjs

    def _check_required(self, module: VerbModule | None, lemma: str,
                        agent_slot, dobj_slots, iobj_slots, prep_slots,
                        prototype) -> None:
        if module is None:
            return
        for need in module.required:
            if need == "dobj" and not dobj_slots:
                raise MissingRole(f"{lemma} needs a direct object")
            if need == "target" and not (dobj_slots or prep_slots):
                raise MissingRole(f"{lemma} needs a target")
            if need == "recipient" and not (iobj_slots or "to" in prep_slots):
                raise MissingRole(f"{lemma} needs a recipient")
            if need == "prototype" and prototype is None:
                raise MissingRole(f"{lemma} needs a saved thing name")


def _make_resolver(agent_slot, dobj_slots, iobj_slots, prep_slots,
                   prep_numeric, direction, modifiers, prototype,
                   proto_count, label_nouns, label_adjs, stop_verb):
    def resolve(world, rng) -> VerbArgs:
        args = VerbArgs(direction=direction, modifiers=modifiers,
                        prototype=prototype, prototype_count=proto_count,
                        label_nouns=label_nouns, label_adjectives=label_adjs,
                        stop_verb=stop_verb,
                        prep_numeric=dict(prep_numeric))
        if agent_slot is not None:
            if agent_slot.mode == RESERVED:
                args.is_self = agent_slot.reserved == "SELF"
                args.is_view = agent_slot.reserved == "VIEW"
            else:
                args.agents = agent_slot.resolve(world, rng)
        for slot in dobj_slots:
            args.dobj.extend(slot.resolve(world, rng))
        for slot in iobj_slots:
            args.iobj.extend(slot.resolve(world, rng))
        for prep, slot in prep_slots.items():
            args.preps[prep] = slot.resolve(world, rng)
        return args
    return resolve
