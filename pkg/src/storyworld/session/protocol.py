"""Wire-protocol message handling shared by the server and scenarios.

Messages are UTF-8 JSON objects with a ``type`` field. Handlers apply
between ticks, mutate the session, and return reply frames. Malformed
or unknown messages produce an error frame and leave the session alive.
"""

from __future__ import annotations

from ..errors import EngineError
from ..world.entity import NUMBER, SKETCH, TEXT
from .session import Session

PROTOCOL_VERSION = 1


def world_delta(session: Session) -> dict:
    world = session.host.world
    ents = []
    for eid in sorted(world.entities):
        ent = world.entities[eid]
        x, y, angle = world.world_transform(eid)
        ents.append({
            "id": eid, "kind": ent.kind, "x": x, "y": y, "angle": angle,
            "width": ent.width, "height": ent.height,
            "labels": list(ent.noun_labels),
            "adjectives": list(ent.adjective_labels),
            "visible": ent.visible, "static": ent.static_flag,
            "value": ent.numeric_value, "text": ent.text_value,
            "stroke": ent.stroke_payload,
        })
    cam = world.camera
    return {"type": "world_delta", "tick": world.clock.tick_index,
            "entities": ents,
            "camera": {"x": cam.x, "y": cam.y, "zoom": cam.zoom}}


def transcript_state(session: Session) -> dict:
    return {"type": "transcript_state", "words": session.transcript.state()}


def diagram_state(session: Session) -> dict:
    staged = session.staged
    return {"type": "diagram_state",
            "staged": staged.state if staged else None,
            "diagram": staged.diagram.state() if staged else None}


def rule_list(session: Session) -> dict:
    return {"type": "rule_list",
            "rules": [{"id": rid, "enabled": enabled, "text": text}
                      for rid, enabled, text in session.host.rules.list_rules()]}


def _err(reason: str) -> list[dict]:
    return [{"type": "error", "reason": reason}]


def apply_message(session: Session, msg: dict) -> list[dict]:
    if not isinstance(msg, dict) or "type" not in msg:
        return _err("malformed message")
    mtype = msg["type"]
    try:
        return _dispatch(session, mtype, msg)
    except EngineError as e:
        return _err(f"{type(e).__name__}: {e}")
    except (KeyError, TypeError, ValueError) as e:
        return _err(f"malformed {mtype}: {e}")


def _dispatch(session: Session, mtype: str, msg: dict) -> list[dict]:
    host = session.host
    if mtype == "speech_text":
        session.append_speech(msg["text"])
        return [transcript_state(session)]
    if mtype == "edit_text":
        session.edit_text(int(msg["start"]), int(msg["end"]), msg["replacement"])
        return [transcript_state(session)]
    if mtype == "select_words":
        session.select_words(int(msg["start"]), int(msg["end"]), bool(msg["on"]))
        return [transcript_state(session)]
    if mtype == "pointer_down":
        session.pointer_down([int(e) for e in msg["entities"]])
        return []
    if mtype == "pointer_move":
        session.pointer_move(int(msg["entity"]), float(msg["x"]), float(msg["y"]))
        return []
    if mtype == "pointer_up":
        session.pointer_up([int(e) for e in msg.get("entities", [])])
        return []
    if mtype == "stroke_add":
        kind = {"sketch": SKETCH, "number": NUMBER, "text": TEXT}.get(
            msg.get("kind", "sketch"), SKETCH)
        ent = host.world.add_entity(
            kind=kind, x=float(msg["x"]), y=float(msg["y"]),
            width=float(msg.get("width", 40.0)),
            height=float(msg.get("height", 40.0)),
            numeric_value=float(msg.get("value", 0.0)),
            text_value=msg.get("text", ""),
            stroke_payload=msg.get("payload"))
        return [{"type": "ack", "entity": ent.id}]
    if mtype == "label_link":
        session.label_link([int(e) for e in msg["entities"]], int(msg["word_id"]))
        return [world_delta(session)]
    if mtype == "stage":
        session.stage()
        return [diagram_state(session)]
    if mtype == "confirm":
        result = session.confirm()
        return [{"type": "confirmed", **result}, diagram_state(session)]
    if mtype == "discard":
        session.discard()
        return [transcript_state(session), diagram_state(session)]
    if mtype == "substitute_verb":
        session.substitute_verb(msg["unknown"], msg["replacement"])
        return [diagram_state(session)]
    if mtype == "relink":
        session.relink(int(msg["node_id"]), int(msg["entity"]),
                       bool(msg.get("replace", False)))
        return [diagram_state(session)]
    if mtype == "unlink":
        session.unlink(int(msg["node_id"]), int(msg["entity"]))
        return [diagram_state(session)]
    if mtype == "find":
        results = session.find(msg.get("noun"),
                               tuple(msg.get("adjectives", ())))
        return [{"type": "find_results", "entries": results}]
    if mtype == "warp_to":
        session.warp_to(int(msg["entity"]))
        return [world_delta(session)]
    if mtype == "copy":
        new_id = session.copy_entity(int(msg["entity"]))
        return [{"type": "ack", "entity": new_id}]
    if mtype == "delete":
        session.delete_entity(int(msg["entity"]))
        return [world_delta(session)]
    if mtype == "save_thing":
        host.world.save_prototype(msg["name"], int(msg["entity"]))
        return [{"type": "ack"}]
    if mtype == "toggle_rule":
        enabled = host.rules.toggle_rule(int(msg["rule"]))
        return [{"type": "ack", "enabled": enabled}, rule_list(session)]
    if mtype == "delete_rule":
        host.rules.delete_rule(int(msg["rule"]))
        return [rule_list(session)]
    if mtype == "list_rules":
        return [rule_list(session)]
    if mtype == "list_actions":
        actions = host.rules.list_actions(int(msg["entity"]))
        return [{"type": "action_list",
                 "actions": [{"id": sid, "verb": verb} for sid, verb in actions]}]
    if mtype == "cancel_action":
        host.rules.cancel_action(int(msg["script"]))
        return [{"type": "ack"}]
    if mtype == "press":
        host.press(int(msg["entity"]))
        return []
    if mtype == "pause":
        host.paused = True
        return [{"type": "ack"}]
    if mtype == "resume":
        host.paused = False
        return [{"type": "ack"}]
    if mtype == "set_velocity":
        ent = host.world.require(int(msg["entity"]))
        ent.vx, ent.vy = float(msg["vx"]), float(msg["vy"])
        return [{"type": "ack"}]
    if mtype == "add_entity":
        from .scenario import add_entity_record
        eid = add_entity_record(host.world, msg["entity"])
        return [{"type": "ack", "entity": eid}]
    return _err(f"unknown message type {mtype!r}")
