"""Scenario builders shared by the integration and acceptance tests."""

from __future__ import annotations


def speech_steps(step: int, text: str) -> list[dict]:
    """Stage-and-confirm a command via protocol messages."""
    return [
        {"step": step, "message": {"type": "speech_text", "text": text}},
        {"step": step, "message": {"type": "stage"}},
        {"step": step, "message": {"type": "confirm"}},
        {"step": step, "message": {"type": "discard"}},
    ]


def windmill_scenario(rule_order: tuple[str, str], presses=(60, 660, 1260)) -> dict:
    rotate = "When wind collides with blades, blades rotate."
    stop = "After wind collides with blades, blades stop rotating."
    first, second = (rotate, stop) if rule_order == ("rotate", "stop") else (stop, rotate)
    schedule = []
    schedule += speech_steps(0, first)
    schedule += speech_steps(1, second)
    schedule += speech_steps(2, "When I press the switch I create wind at the wall")
    schedule += speech_steps(3, "After wind appears, wind moves right")
    schedule += speech_steps(4, "I attach the blades to the windmill")
    for step in presses:
        # entity ids: windmill 1, blade 2, wall 3, switch 4
        schedule.append({"step": step, "message": {"type": "press", "entity": 4}})
    return {
        "schema_version": 1,
        "seed": 17,
        "prototypes": {
            "wind": {"labels": ["wind"], "width": 30, "height": 30},
        },
        "entities": [
            {"labels": ["windmill"], "x": 0, "y": -60, "width": 40, "height": 80},
            {"labels": ["blade"], "x": 0, "y": 0, "width": 60, "height": 60},
            {"labels": ["wall"], "x": -300, "y": 0, "width": 20, "height": 120},
            {"labels": ["switch"], "x": 0, "y": -200, "width": 30, "height": 30},
        ],
        "schedule": sorted(schedule, key=lambda m: m["step"]),
    }


def pong_scenario() -> dict:
    schedule = []
    schedule += speech_steps(0, "when balls collide with walls walls reflect balls")
    schedule += speech_steps(1, "when balls collide with paddles paddles reflect balls")
    schedule += speech_steps(2, "When balls collide with first goals second scores increase")
    schedule += speech_steps(3, "When balls collide with second goals first scores increase")
    return {
        "schema_version": 1,
        "seed": 23,
        "entities": [
            {"labels": ["ball"], "x": 0, "y": 0, "width": 10, "height": 10,
             "vx": 173.0, "vy": 131.0},
            {"labels": ["wall"], "x": 0, "y": 160, "width": 440, "height": 20},
            {"labels": ["wall"], "x": 0, "y": -160, "width": 440, "height": 20},
            {"labels": ["wall"], "x": -220, "y": 0, "width": 20, "height": 340},
            {"labels": ["wall"], "x": 220, "y": 0, "width": 20, "height": 340},
            {"labels": ["paddle"], "x": -180, "y": 0, "width": 10, "height": 60},
            {"labels": ["paddle"], "x": 180, "y": 0, "width": 10, "height": 60},
            {"labels": ["goal"], "adjectives": ["first"], "x": -200, "y": 0,
             "width": 8, "height": 300, "visible": False},
            {"labels": ["goal"], "adjectives": ["second"], "x": 200, "y": 0,
             "width": 8, "height": 300, "visible": False},
            {"labels": ["score"], "adjectives": ["first"], "kind": "number",
             "x": -60, "y": 200, "static": True, "value": 0.0},
            {"labels": ["score"], "adjectives": ["second"], "kind": "number",
             "x": 60, "y": 200, "static": True, "value": 0.0},
        ],
        "schedule": sorted(schedule, key=lambda m: m["step"]),
    }


def bounce_box_scenario() -> dict:
    schedule = speech_steps(0, "when balls collide with walls walls reflect balls")
    return {
        "schema_version": 1,
        "seed": 5,
        "entities": [
            {"labels": ["ball"], "x": 0, "y": 0, "width": 10, "height": 10,
             "vx": 610.0, "vy": 497.0},
            {"labels": ["wall"], "x": 0, "y": 55, "width": 140, "height": 20},
            {"labels": ["wall"], "x": 0, "y": -55, "width": 140, "height": 20},
            {"labels": ["wall"], "x": -55, "y": 0, "width": 20, "height": 140},
            {"labels": ["wall"], "x": 55, "y": 0, "width": 20, "height": 140},
        ],
        "schedule": schedule,
    }


def pond_scenario(late_lily_step: int = 600) -> dict:
    schedule = speech_steps(0, "Forever the frog hops to a lily.")
    schedule.append({"step": late_lily_step, "message": {
        "type": "add_entity",
        "entity": {"labels": ["lily"], "x": 60, "y": -120,
                   "width": 36, "height": 14},
    }})
    return {
        "schema_version": 1,
        "seed": 41,
        "entities": [
            {"labels": ["frog"], "x": 0, "y": 0, "width": 24, "height": 24},
            {"labels": ["lily"], "x": 140, "y": 30, "width": 36, "height": 14},
            {"labels": ["lily"], "x": -120, "y": 60, "width": 36, "height": 14},
            {"labels": ["water"], "x": 0, "y": 0, "width": 400, "height": 300,
             "static": True},
        ],
        "schedule": sorted(schedule, key=lambda m: m["step"]),
    }


def p1_loop_scenario() -> dict:
    schedule = []
    schedule += speech_steps(0, "When boys collide with trees, boys move to houses.")
    schedule += speech_steps(1, "When boys collide with houses, boys move to trees.")
    schedule += speech_steps(2, "the boy moves to the tree")
    return {
        "schema_version": 1,
        "seed": 3,
        "entities": [
            {"labels": ["boy"], "x": 0, "y": 0, "width": 30, "height": 30},
            {"labels": ["tree"], "x": 250, "y": 0, "width": 40, "height": 60},
            {"labels": ["house"], "x": -250, "y": 0, "width": 50, "height": 50},
        ],
        "schedule": sorted(schedule, key=lambda m: m["step"]),
    }
