"""Scenario files: the headless test surface.

A scenario is a versioned JSON document holding the seed, the initial
world (entities and saved prototypes), and a schedule of protocol
messages keyed by step index. Running a scenario replays the schedule
against a fresh host and returns the JSON-lines trace; a fixed seed and
schedule always reproduce the same bytes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from ..errors import ScenarioError
from ..world.entity import NUMBER, SKETCH, TEXT, Prototype
from ..world.world import World
from .host import SimulationHost
from .protocol import apply_message
from .session import Session

SCENARIO_SCHEMA_VERSION = 1

_KINDS = {"sketch": SKETCH, "number": NUMBER, "text": TEXT}


@dataclass
class Scenario:
    seed: int = 0
    ticks_per_second: int = 60
    prototypes: dict = field(default_factory=dict)
    entities: list = field(default_factory=list)
    schedule: list = field(default_factory=list)      # [{"step": n, "message": {...}}]
    rules: list = field(default_factory=list)         # serialized rule docs
    camera: dict | None = None
    tick: int = 0


def load_scenario(source: str | Path | dict) -> Scenario:
    if isinstance(source, (str, Path)):
        raw = json.loads(Path(source).read_text(encoding="utf-8"))
    else:
        raw = source
    version = raw.get("schema_version")
    if version != SCENARIO_SCHEMA_VERSION:
        raise ScenarioError(f"unsupported scenario schema_version {version!r}")
    return Scenario(
        seed=int(raw.get("seed", 0)),
        ticks_per_second=int(raw.get("ticks_per_second", 60)),
        prototypes=raw.get("prototypes", {}),
        entities=raw.get("entities", []),
        schedule=sorted(raw.get("schedule", []), key=lambda m: m["step"]),
        rules=raw.get("rules", []),
        camera=raw.get("camera"),
        tick=int(raw.get("tick", 0)),
    )


def add_entity_record(world: World, rec: dict, parent: int | None = None) -> int:
    ent = world.add_entity(
        entity_id=rec.get("id"),
        kind=_KINDS.get(rec.get("kind", "sketch"), SKETCH),
        noun_labels=list(rec.get("labels", [])),
        adjective_labels=list(rec.get("adjectives", [])),
        x=float(rec.get("x", 0.0)), y=float(rec.get("y", 0.0)),
        vx=float(rec.get("vx", 0.0)), vy=float(rec.get("vy", 0.0)),
        width=float(rec.get("width", 40.0)),
        height=float(rec.get("height", 40.0)),
        angle=float(rec.get("angle", 0.0)),
        visible=bool(rec.get("visible", True)),
        static_flag=bool(rec.get("static", False)),
        numeric_value=float(rec.get("value", 0.0)),
        text_value=rec.get("text", ""),
        stroke_payload=rec.get("stroke"),
    )
    if parent is not None:
        # records carry parent-relative transforms already
        ent.parent = parent
        world.entities[parent].children.append(ent.id)
    for child in rec.get("children", []):
        add_entity_record(world, child, ent.id)
    return ent.id


def build_session(scenario: Scenario, record_trace: bool = True
                  ) -> tuple[SimulationHost, Session]:
    host = SimulationHost(seed=scenario.seed,
                          dt=1.0 / scenario.ticks_per_second,
                          record_trace=record_trace)
    for name, rec in scenario.prototypes.items():
        host.world.prototypes[name] = Prototype(name=name, root=_proto_root(rec))
    for rec in scenario.entities:
        add_entity_record(host.world, rec)
    host.world.drain_appeared()       # the initial world never "appears"
    if scenario.rules:
        _restore_rules(host, scenario.rules)
    if scenario.camera:
        cam = host.world.camera
        cam.x = float(scenario.camera.get("x", 0.0))
        cam.y = float(scenario.camera.get("y", 0.0))
        cam.zoom = float(scenario.camera.get("zoom", 1.0))
        cam.follow_target = scenario.camera.get("follow")
    host.world.clock.tick_index = scenario.tick
    session = Session(host)
    return host, session


def _proto_root(rec: dict) -> dict:
    """Normalize a scenario prototype record to the world's record shape."""
    if "noun_labels" in rec:
        return rec                             # already world-shaped
    return {
        "kind": _KINDS.get(rec.get("kind", "sketch"), SKETCH),
        "noun_labels": list(rec.get("labels", [])),
        "adjective_labels": list(rec.get("adjectives", [])),
        "x": float(rec.get("x", 0.0)), "y": float(rec.get("y", 0.0)),
        "angle": float(rec.get("angle", 0.0)),
        "width": float(rec.get("width", 40.0)),
        "height": float(rec.get("height", 40.0)),
        "visible": bool(rec.get("visible", True)),
        "static": bool(rec.get("static", False)),
        "numeric_value": float(rec.get("value", 0.0)),
        "text_value": rec.get("text", ""),
        "stroke_payload": rec.get("stroke"),
        "children": [_proto_root(c) for c in rec.get("children", [])],
    }


def run_scenario(source: str | Path | dict, ticks: int,
                 trace_path: str | Path | None = None) -> list[str]:
    scenario = load_scenario(source)
    host, session = build_session(scenario)
    schedule = list(scenario.schedule)
    cursor = 0
    for step in range(ticks):
        while cursor < len(schedule) and schedule[cursor]["step"] <= step:
            apply_message(session, schedule[cursor]["message"])
            cursor += 1
        host.tick()
    if trace_path is not None:
        write_trace(trace_path, host)
    return host.trace


def write_trace(path: str | Path, host: SimulationHost) -> None:
    from .host import TRACE_SCHEMA_VERSION
    header = json.dumps({"schema_version": TRACE_SCHEMA_VERSION,
                         "seed": host.seed}, separators=(",", ":"))
    Path(path).write_text("\n".join([header, *host.trace]) + "\n",
                          encoding="utf-8")


# -- world document save/load ---------------------------------------------------

_KIND_NAMES = {SKETCH: "sketch", NUMBER: "number", TEXT: "text"}


def _entity_to_record(world: World, eid: int) -> dict:
    ent = world.entities[eid]
    rec = {
        "id": ent.id,
        "kind": _KIND_NAMES[ent.kind],
        "labels": list(ent.noun_labels),
        "adjectives": list(ent.adjective_labels),
        "x": ent.x, "y": ent.y, "vx": ent.vx, "vy": ent.vy,
        "width": ent.width, "height": ent.height, "angle": ent.angle,
        "visible": ent.visible, "static": ent.static_flag,
        "value": ent.numeric_value, "text": ent.text_value,
        "stroke": ent.stroke_payload,
        "children": [_entity_to_record(world, c) for c in ent.children
                     if c in world.entities],
    }
    return rec


def save_world(host: SimulationHost) -> dict:
    """Snapshot the world as a versioned scenario-shaped document.

    Entities keep their ids (rule bindings reference them), rules carry
    their trigger-response graphs and slot states. Running scripts are
    not part of the document.
    """
    world = host.world
    roots = [eid for eid in sorted(world.entities)
             if world.entities[eid].parent is None]
    rules = []
    for rid in sorted(host.rules.rules):
        rule = host.rules.rules[rid]
        slot_states = {}
        all_slots = dict(((s.node.elem_id, s) for _, slots in rule.responses
                          for s in slots.values()))
        for slot in (rule.trigger.subject_slot, rule.trigger.object_slot):
            if slot is not None:
                all_slots[slot.node.elem_id] = slot
        for eid, slot in all_slots.items():
            slot_states[str(eid)] = {
                "mode": slot.mode, "source": slot.source,
                "entities": list(slot.entities), "reserved": slot.reserved,
            }
        rules.append({
            "element": rule.element.to_dict(),
            "slots": slot_states,
            "enabled": rule.enabled,
        })
    return {
        "schema_version": SCENARIO_SCHEMA_VERSION,
        "seed": host.seed,
        "ticks_per_second": round(1.0 / host.dt),
        "tick": world.clock.tick_index,
        "camera": {"x": world.camera.x, "y": world.camera.y,
                   "zoom": world.camera.zoom,
                   "follow": world.camera.follow_target},
        "prototypes": {name: proto.root
                       for name, proto in world.prototypes.items()},
        "entities": [_entity_to_record(world, eid) for eid in roots],
        "rules": rules,
        "schedule": [],
    }


def _restore_rules(host: SimulationHost, rules: list) -> None:
    from ..binding.binder import BindingSlot
    from ..semantics.s2 import S2Element

    for rec in rules:
        element = S2Element.from_dict(rec["element"])
        nodes = {el.elem_id: el for el in element.walk()}
        slots = []
        for eid_str, state in rec["slots"].items():
            node = nodes.get(int(eid_str))
            if node is None:
                continue
            slots.append(BindingSlot(
                node=node, spec=node.noun_spec(), mode=state["mode"],
                source=state["source"], entities=list(state["entities"]),
                reserved=state["reserved"], confirmed=True))
        rule = host.rules.install(element, slots)
        if not rec.get("enabled", True):
            rule.enabled = False
