"""Trigger-response rules evaluated each tick against world events.

WHEN fires once on the begin edge of its condition per match key, AFTER
fires once on the end edge, and AS starts its responses on begin and
cancels them on end. Match keys (the bound entity pair) prevent a
single ongoing episode from firing twice. Bare-plural (type) slots in
responses bind to the specific entities that matched the trigger, so
rules apply to entities created after installation.

A rule whose trigger verb is unknown defines that verb: invoking it
expands the rule's responses with the caller's bindings.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..binding.binder import INSTANCES, RESERVED, TYPE, UNSPECIFIC, BindingSlot
from ..errors import MalformedTrigger, UnknownRule, UnknownScript
from ..semantics import s2
from ..semantics.s2 import S2Element
from ..vm.compiler import Compiler
from ..vm.script import VM
from ..world.world import BEGIN, CONTINUE, END, World

WHEN = "when"
AS = "as"
AFTER = "after"

_EVENT_KINDS = ("collide", "press", "appear", "disappear", "equal", "exceed")


@dataclass
class TriggerSpec:
    kind: str
    subject_slot: BindingSlot | None = None
    object_slot: BindingSlot | None = None
    subject_lemma: str = ""
    object_lemma: str = ""
    literal: float | None = None


@dataclass
class Rule:
    id: int
    marker: str
    trigger: TriggerSpec
    responses: list[tuple[S2Element, dict[int, BindingSlot]]]
    element: S2Element
    display: str
    enabled: bool = True
    began: set = field(default_factory=set)
    active_matches: dict = field(default_factory=dict)
    comparison_state: dict = field(default_factory=dict)
    defines_verb: str | None = None


@dataclass
class VerbDefinition:
    lemma: str
    subject_lemma: str
    rule_id: int
    engine: "RulesEngine"

    def make_expander(self, compiler: Compiler, depth: int):
        rule = self.engine.rules.get(self.rule_id)

        def expand(args, new_depth):
            instrs = []
            if rule is None or not rule.enabled:
                return instrs
            for element, slots in rule.responses:
                overridden = self.engine._override_slots(
                    slots, {self.subject_lemma: list(args.agents)})
                instrs.extend(compiler.action_program(
                    element, overridden, depth=new_depth))
            return instrs

        return expand


class RulesEngine:
    def __init__(self, world: World, vm: VM, compiler: Compiler):
        self.world = world
        self.vm = vm
        self.compiler = compiler
        self.rules: dict[int, Rule] = {}
        self.definitions: dict[str, VerbDefinition] = {}
        self._next_id = 1

    def defined_lookup(self, lemma: str) -> VerbDefinition | None:
        return self.definitions.get(lemma)

    # -- installation ---------------------------------------------------------

    def install(self, tr: S2Element, slots: list[BindingSlot]) -> Rule:
        trigger_el = tr.first(s2.TRIGGER)
        if trigger_el is None:
            raise MalformedTrigger("missing trigger")
        slots_by_id = {slot.node.elem_id: slot for slot in slots}
        marker = WHEN
        for prop in trigger_el.get(s2.PROPERTY):
            if prop.label == "marker":
                marker = prop.value.get(s2.V_TEXT, [WHEN])[0]

        spec = self._trigger_spec(trigger_el, slots_by_id)
        responses = []
        for resp in tr.get(s2.RESPONSE):
            resp_slot_ids = {el.elem_id for el in resp.walk()}
            resp_slots = {eid: slot for eid, slot in slots_by_id.items()
                          if eid in resp_slot_ids}
            responses.append((resp, resp_slots))
        if not responses:
            raise MalformedTrigger("missing response")

        rule = Rule(id=self._next_id, marker=marker, trigger=spec,
                    responses=responses, element=tr,
                    display="")
        self._next_id += 1
        if spec.kind == "verb":
            lemma = trigger_el.label
            rule.defines_verb = lemma
            self.definitions[lemma] = VerbDefinition(
                lemma=lemma, subject_lemma=spec.subject_lemma,
                rule_id=rule.id, engine=self)
        rule.display = self._display(rule)
        self.rules[rule.id] = rule
        return rule

    def _trigger_spec(self, trigger_el: S2Element,
                      slots_by_id: dict[int, BindingSlot]) -> TriggerSpec:
        verb = trigger_el.label
        subject = trigger_el.first(s2.AGENT)
        subject_slot = slots_by_id.get(subject.elem_id) if subject is not None else None
        spec = TriggerSpec(kind=verb,
                           subject_slot=subject_slot,
                           subject_lemma=subject.label if subject is not None else "")

        if verb == "collide":
            obj = None
            for prep in trigger_el.get(s2.PREPOSITION):
                if prep.label in ("with", "into"):
                    obj = prep.first(s2.OBJECT)
            if obj is None or subject is None:
                raise MalformedTrigger("collide needs a subject and a 'with' object")
            spec.object_slot = slots_by_id.get(obj.elem_id)
            spec.object_lemma = obj.label
            return spec
        if verb == "press":
            obj = trigger_el.first(s2.DIRECT_OBJECT)
            if obj is None:
                raise MalformedTrigger("press needs a target")
            spec.object_slot = slots_by_id.get(obj.elem_id)
            spec.object_lemma = obj.label
            return spec
        if verb in ("appear", "disappear"):
            if subject is None:
                raise MalformedTrigger(f"{verb} needs a subject")
            return spec
        if verb in ("equal", "exceed"):
            obj = trigger_el.first(s2.DIRECT_OBJECT)
            if obj is None:
                raise MalformedTrigger(f"{verb} needs a comparison value")
            if obj.kind == "VALUE" and s2.V_NUMERIC in obj.value:
                spec.literal = obj.value[s2.V_NUMERIC][0]
            else:
                spec.object_slot = slots_by_id.get(obj.elem_id)
                spec.object_lemma = obj.label
            return spec
        if self.compiler.registry.get(verb) is not None:
            raise MalformedTrigger(
                f"{verb!r} is not an event; rules trigger on events, "
                f"inequalities, or new verbs")
        spec.kind = "verb"
        if subject is None:
            raise MalformedTrigger("verb definitions need a subject")
        return spec

    # -- matching -------------------------------------------------------------

    def _slot_matches(self, slot: BindingSlot | None, lemma: str,
                      entity_id: int) -> bool:
        if slot is None:
            return False
        if slot.mode == INSTANCES:
            return entity_id in slot.entities
        if slot.mode in (TYPE, UNSPECIFIC):
            ent = self.world.get(entity_id)
            if ent is None:
                return False
            if slot.reserved == "THING":
                return True
            spec = slot.spec
            if spec.lemma not in ent.noun_labels:
                return False
            return all(ent.has_adjective(a) for a in spec.positive_adjectives)
        return False

    # -- evaluation -------------------------------------------------------------

    def evaluate(self, collision_events: list[tuple[str, int, int]],
                 presses: list[int], appeared: list[int]) -> list[int]:
        """Run one tick of rule evaluation; returns launched script ids."""
        launched: list[int] = []
        for rid in sorted(self.rules):
            rule = self.rules[rid]
            if not rule.enabled:
                continue
            kind = rule.trigger.kind
            if kind == "collide":
                launched += self._eval_collide(rule, collision_events)
            elif kind == "press":
                launched += self._eval_point(rule, presses, use_object=True)
            elif kind in ("appear", "disappear"):
                launched += self._eval_point(rule, appeared, use_object=False)
            elif kind in ("equal", "exceed"):
                launched += self._eval_comparison(rule)
        return launched

    def _eval_collide(self, rule: Rule, events) -> list[int]:
        launched = []
        trig = rule.trigger
        for phase, a, b in events:
            if phase == CONTINUE:
                continue
            for subj, obj in ((a, b), (b, a)):
                if not self._slot_matches(trig.subject_slot, trig.subject_lemma, subj):
                    continue
                if not self._slot_matches(trig.object_slot, trig.object_lemma, obj):
                    continue
                key = (subj, obj)
                if phase == BEGIN and key not in rule.began:
                    rule.began.add(key)
                    if rule.marker in (WHEN, AS):
                        ids = self._fire(rule, subj, obj)
                        launched += ids
                        if rule.marker == AS:
                            rule.active_matches[key] = ids
                elif phase == END and key in rule.began:
                    rule.began.discard(key)
                    if rule.marker == AFTER:
                        launched += self._fire(rule, subj, obj)
                    elif rule.marker == AS:
                        for sid in rule.active_matches.pop(key, []):
                            self.vm.cancel(sid)
        return launched

    def _eval_point(self, rule: Rule, entity_ids: list[int],
                    use_object: bool) -> list[int]:
        launched = []
        trig = rule.trigger
        slot = trig.object_slot if use_object else trig.subject_slot
        lemma = trig.object_lemma if use_object else trig.subject_lemma
        for eid in entity_ids:
            if not self._slot_matches(slot, lemma, eid):
                continue
            subj = None if use_object else eid
            obj = eid if use_object else None
            launched += self._fire(rule, subj, obj)
        return launched

    def _eval_comparison(self, rule: Rule) -> list[int]:
        launched = []
        trig = rule.trigger
        subjects = (trig.subject_slot.resolve(self.world, None)
                    if trig.subject_slot is not None else [])
        rhs = trig.literal
        if rhs is None and trig.object_slot is not None:
            others = trig.object_slot.resolve(self.world, None)
            if not others:
                return launched
            rhs = self.world.get(others[0]).numeric_value
        if rhs is None:
            return launched
        for sid_ in subjects:
            ent = self.world.get(sid_)
            if ent is None:
                continue
            value = ent.numeric_value
            current = (value == rhs) if trig.kind == "equal" else (value > rhs)
            previous = rule.comparison_state.get(sid_, False)
            rule.comparison_state[sid_] = current
            if current and not previous:
                ids = self._fire(rule, sid_, None)
                launched += ids
                if rule.marker == AS:
                    rule.active_matches[sid_] = ids
            elif previous and not current:
                if rule.marker == AFTER:
                    launched += self._fire(rule, sid_, None)
                elif rule.marker == AS:
                    for sid2 in rule.active_matches.pop(sid_, []):
                        self.vm.cancel(sid2)
        return launched

    def _fire(self, rule: Rule, subject: int | None,
              obj: int | None) -> list[int]:
        overrides: dict[str, list[int]] = {}
        if subject is not None and rule.trigger.subject_lemma:
            overrides[rule.trigger.subject_lemma] = [subject]
        if obj is not None and rule.trigger.object_lemma:
            overrides[rule.trigger.object_lemma] = [obj]
        launched = []
        for element, slots in rule.responses:
            slots2 = self._override_slots(slots, overrides)
            program = self.compiler.action_program(element, slots2)
            launched.append(self.vm.launch(
                program, label=f"rule {rule.id}: {element.label}"))
        return launched

    def _override_slots(self, slots: dict[int, BindingSlot],
                        overrides: dict[str, list[int]]) -> dict[int, BindingSlot]:
        out: dict[int, BindingSlot] = {}
        for eid, slot in slots.items():
            if slot.mode in (TYPE, UNSPECIFIC) and slot.spec.lemma in overrides \
                    and not slot.spec.positive_adjectives:
                replacement = BindingSlot(
                    node=slot.node, spec=slot.spec, mode=INSTANCES,
                    source=slot.source,
                    entities=list(overrides[slot.spec.lemma]))
                out[eid] = replacement
            else:
                out[eid] = slot
        return out

    # -- panel operations ----------------------------------------------------------

    def toggle_rule(self, rule_id: int) -> bool:
        rule = self.rules.get(rule_id)
        if rule is None:
            raise UnknownRule(str(rule_id))
        rule.enabled = not rule.enabled
        return rule.enabled

    def delete_rule(self, rule_id: int) -> None:
        rule = self.rules.pop(rule_id, None)
        if rule is None:
            raise UnknownRule(str(rule_id))
        if rule.defines_verb and rule.defines_verb in self.definitions:
            del self.definitions[rule.defines_verb]

    def list_rules(self) -> list[tuple[int, bool, str]]:
        return [(r.id, r.enabled, r.display)
                for r in (self.rules[i] for i in sorted(self.rules))]

    def list_actions(self, entity_id: int) -> list[tuple[int, str]]:
        return [(s.id, s.label)
                for s in self.vm.scripts_for_entity(entity_id)]

    def cancel_action(self, script_id: int) -> None:
        if script_id not in self.vm.scripts:
            raise UnknownScript(str(script_id))
        self.vm.cancel_root(script_id)

    # -- display -------------------------------------------------------------------

    def _display(self, rule: Rule) -> str:
        trig = rule.trigger
        parts = [rule.marker.upper()]
        parts.append(self._noun_display(trig.subject_slot, trig.subject_lemma))
        parts.append(trig.kind if trig.kind != "verb" else rule.defines_verb or "")
        if trig.kind == "collide":
            parts.append("with")
        if trig.literal is not None:
            parts.append(f"{trig.literal:g}")
        elif trig.object_lemma:
            parts.append(self._noun_display(trig.object_slot, trig.object_lemma))
        out = " ".join(p for p in parts if p) + " -> "
        resp_parts = []
        for element, slots in rule.responses:
            resp_parts.append(self._action_display(element, slots))
        return out + " THEN ".join(resp_parts)

    def _noun_display(self, slot: BindingSlot | None, lemma: str) -> str:
        if slot is not None and slot.reserved == "SELF":
            return "I"
        if not lemma:
            return ""
        if lemma == "i":
            return "I"
        return f"*{lemma}"

    def _action_display(self, element: S2Element,
                        slots: dict[int, BindingSlot]) -> str:
        chunks = []
        agent = element.first(s2.AGENT)
        if agent is not None:
            chunks.append(self._noun_display(slots.get(agent.elem_id),
                                             agent.label))
        chunks.append(element.label)
        for d in element.get(s2.DIRECT_OBJECT):
            if d.label:
                chunks.append(self._noun_display(slots.get(d.elem_id), d.label))
        for prep in element.get(s2.PREPOSITION):
            obj = prep.first(s2.OBJECT)
            if obj is not None and obj.label:
                chunks.append(prep.label)
                chunks.append(self._noun_display(slots.get(obj.elem_id),
                                                 obj.label))
        if element.get(s2.TIME):
            chunks.append("for TIME")
        text = " ".join(chunks)
        tails = []
        for sim in element.get(s2.SEQUENCE_SIMULTANEOUS):
            tails.append(" AND " + self._action_display(sim, slots))
        for nxt in element.get(s2.SEQUENCE_THEN):
            tails.append(" THEN " + self._action_display(nxt, slots))
        return text + "".join(tails)
