import json

import pytest

from storyworld.errors import MalformedTrigger, UnknownRule, UnknownScript
from storyworld.session import Session, SimulationHost


def make_session(seed=1):
    host = SimulationHost(seed=seed)
    return host, Session(host)


def say(session, text, selection=None):
    session.append_speech(text)
    if selection is not None:
        session.selection = list(selection)
    session.stage()
    assert not session.staged.blocked, session.staged.diagram.errors
    result = session.confirm()
    session.discard()
    return result


def events_of(host, phase=None):
    out = []
    for line in host.trace:
        d = json.loads(line)
        for e in d["events"]:
            if phase is None or e[0] == phase:
                out.append((d["tick"], e))
    return out


def test_when_fires_once_per_episode():
    host, s = make_session()
    w = host.world
    arrow = w.add_entity(noun_labels=["arrow"], x=-100, y=0, width=10,
                         height=10, vx=200.0)
    balloon = w.add_entity(noun_labels=["balloon"], x=100, y=0, width=20,
                           height=20)
    w.drain_appeared()
    say(s, "When arrows collide with balloons, arrows destroy balloons.")
    host.run(120)
    assert not w.alive(balloon.id)
    assert w.alive(arrow.id)


def test_rule_applies_to_later_entities():
    host, s = make_session()
    w = host.world
    say(s, "When arrows collide with balloons, arrows destroy balloons.")
    balloon = w.add_entity(noun_labels=["balloon"], x=50, y=0, width=20, height=20)
    arrow = w.add_entity(noun_labels=["arrow"], x=-50, y=0, width=10, height=10,
                         vx=150.0)
    host.run(120)
    assert not w.alive(balloon.id)


def test_type_slots_bind_matched_instances_only():
    host, s = make_session()
    w = host.world
    near = w.add_entity(noun_labels=["balloon"], x=40, y=0, width=20, height=20)
    far = w.add_entity(noun_labels=["balloon"], x=4000, y=0, width=20, height=20)
    arrow = w.add_entity(noun_labels=["arrow"], x=0, y=0, width=10, height=10,
                         vx=120.0)
    w.drain_appeared()
    say(s, "When arrows collide with balloons, arrows destroy balloons.")
    host.run(60)
    assert not w.alive(near.id)
    assert w.alive(far.id)          # unrelated same-label entity untouched


def test_press_trigger_with_reserved_self():
    host, s = make_session()
    w = host.world
    wind = w.add_entity(noun_labels=["wind"], width=16, height=16)
    w.save_prototype("wind", wind.id)
    w.delete(wind.id)
    switch = w.add_entity(noun_labels=["switch"], x=0, y=-200)
    wall = w.add_entity(noun_labels=["wall"], x=-300, y=0)
    w.drain_appeared()
    say(s, "When I press the switch I create wind at the wall")
    host.run(5)
    assert w.query("wind") == []
    host.press(switch.id)
    host.run(5)
    assert len(w.query("wind")) == 1
    host.press(switch.id)
    host.run(5)
    assert len(w.query("wind")) == 2


def test_appear_trigger():
    host, s = make_session()
    w = host.world
    ghost_proto = w.add_entity(noun_labels=["ghost"], width=20, height=20)
    w.save_prototype("ghost", ghost_proto.id)
    w.delete(ghost_proto.id)
    boy = w.add_entity(noun_labels=["boy"], x=400, y=0)
    w.drain_appeared()
    say(s, "When ghosts appear, ghosts follow the boy")
    spawned = w.spawn("ghost", (0.0, 0.0))
    x0 = w.world_position(spawned)[0]
    host.run(60)
    assert w.world_position(spawned)[0] > x0 + 50


def test_as_rule_runs_only_during_overlap():
    host, s = make_session()
    w = host.world
    wind = w.add_entity(noun_labels=["wind"], x=-100, y=0, width=20,
                        height=20, vx=200.0)
    blade = w.add_entity(noun_labels=["blade"], x=0, y=0, width=40, height=40)
    w.drain_appeared()
    say(s, "as wind collides with blades, blades rotate")
    host.run(150)
    spin_ticks = []
    for line in host.trace:
        d = json.loads(line)
        for e in d["entities"]:
            if e[0] == blade.id and e[6] != 0:
                spin_ticks.append(d["tick"])
    begins = [t for t, e in events_of(host, "BEGIN")]
    ends = [t for t, e in events_of(host, "END")]
    assert spin_ticks, "blade never rotated"
    assert abs(spin_ticks[0] - begins[0]) <= 1
    assert abs(spin_ticks[-1] - ends[0]) <= 1


def test_after_rule_fires_on_end_edge():
    host, s = make_session()
    w = host.world
    wind = w.add_entity(noun_labels=["wind"], x=-80, y=0, width=20, height=20,
                        vx=200.0)
    blade = w.add_entity(noun_labels=["blade"], x=0, y=0, width=40, height=40)
    w.drain_appeared()
    say(s, "After wind collides with blades, blades rotate")
    host.run(22)
    assert w.get(blade.id).angular_velocity == 0       # mid-overlap: nothing
    host.run(100)
    assert w.get(blade.id).angular_velocity != 0       # fires after the exit


def test_exceed_edge_detection():
    host, s = make_session()
    w = host.world
    score = w.add_entity(kind="NUMBER", noun_labels=["score"],
                         numeric_value=0.0)
    flag = w.add_entity(noun_labels=["flag"], visible=False)
    w.drain_appeared()
    say(s, "when the score exceeds 2 the flag appears")
    for _ in range(2):
        say(s, "the score increases")
        host.run(5)
    assert not w.get(flag.id).visible                  # 2 is not > 2
    say(s, "the score increases")
    host.run(5)
    assert w.get(flag.id).visible
    fired = [1 for line in host.trace
             for sid, v, _ in json.loads(line)["started"] if v == "appear"]
    assert len(fired) == 1                             # no per-tick refiring


def test_equal_trigger():
    host, s = make_session()
    w = host.world
    score = w.add_entity(kind="NUMBER", noun_labels=["score"],
                         numeric_value=0.0)
    flag = w.add_entity(noun_labels=["flag"], visible=False)
    w.drain_appeared()
    say(s, "when the score equals 1 the flag appears")
    say(s, "the score increases")
    host.run(5)
    assert w.get(flag.id).visible


def test_toggle_rule_disables_and_reenables():
    host, s = make_session()
    w = host.world
    ball = w.add_entity(noun_labels=["ball"], x=-60, y=0, width=10, height=10,
                        vx=100.0)
    water = w.add_entity(noun_labels=["water"], x=60, y=0, width=40, height=40)
    w.drain_appeared()
    result = say(s, "When balls collide with water, water moves up for 0.2 seconds")
    rid = result["rules"][0]
    host.rules.toggle_rule(rid)
    host.run(150)
    assert w.world_position(water.id)[1] == 0          # disabled: no splash
    assert host.rules.toggle_rule(rid) is True


def test_delete_rule_twice_unknown():
    host, s = make_session()
    w = host.world
    w.add_entity(noun_labels=["ball"])
    w.add_entity(noun_labels=["water"])
    result = say(s, "When balls collide with water, water moves up for 0.2 seconds")
    rid = result["rules"][0]
    host.rules.delete_rule(rid)
    with pytest.raises(UnknownRule):
        host.rules.delete_rule(rid)


def test_rule_display_format():
    host, s = make_session()
    w = host.world
    ball = w.add_entity(noun_labels=["ball"])
    water = w.add_entity(noun_labels=["water"])
    w.drain_appeared()
    say(s, "When the ball collides with the water, water moves up for 0.2 seconds "
           "and then water moves down for 0.2 seconds")
    (rid, enabled, text), = host.rules.list_rules()
    assert text == ("WHEN *ball collide with *water -> "
                    "*water move for TIME THEN *water move for TIME")


def test_list_and_cancel_actions():
    host, s = make_session()
    w = host.world
    frog = w.add_entity(noun_labels=["frog"])
    lily = w.add_entity(noun_labels=["lily"], x=90)
    w.drain_appeared()
    say(s, "Forever the frog hops to a lily")
    host.run(10)
    actions = host.rules.list_actions(frog.id)
    assert actions and actions[0][1] == "hop"
    host.rules.cancel_action(actions[0][0])
    host.run(5)
    x0 = w.world_position(frog.id)
    host.run(100)
    assert w.world_position(frog.id) == x0             # halted immediately
    with pytest.raises(UnknownScript):
        host.rules.cancel_action(987654)


def test_verb_definition_by_rule():
    host, s = make_session()
    w = host.world
    light = w.add_entity(noun_labels=["light"], visible=True)
    w.drain_appeared()
    say(s, "When lights flicker, forever lights disappear for 0.1 seconds "
           "and then lights appear for 0.1 seconds")
    assert host.rules.defined_lookup("flicker") is not None
    say(s, "the light flickers")
    seen = set()
    for _ in range(60):
        host.tick()
        seen.add(w.get(light.id).visible)
    assert seen == {True, False}                       # oscillating


def test_known_action_verb_trigger_rejected():
    host, s = make_session()
    w = host.world
    w.add_entity(noun_labels=["dog"])
    w.add_entity(noun_labels=["cat"])
    s.append_speech("when dogs jump cats jump")
    s.stage()
    with pytest.raises(MalformedTrigger):
        s.confirm()


def test_codependent_rules_alternate_without_duplicates():
    host, s = make_session()
    w = host.world
    boy = w.add_entity(noun_labels=["boy"], x=0, y=0, width=30, height=30)
    tree = w.add_entity(noun_labels=["tree"], x=250, y=0, width=40, height=40)
    house = w.add_entity(noun_labels=["house"], x=-250, y=0, width=40, height=40)
    w.drain_appeared()
    say(s, "When boys collide with trees, boys move to houses.")
    say(s, "When boys collide with houses, boys move to trees.")
    say(s, "the boy moves to the tree")
    host.run(30 * 60)
    hits = [e for _, e in events_of(host, "BEGIN") if boy.id in e[1:]]
    assert len(hits) >= 3
    # alternating targets, one BEGIN per episode
    others = [e[1] if e[2] == boy.id else e[2] for e in hits]
    assert all(a != b for a, b in zip(others, others[1:]))


def test_windmill_order_independence():
    def run(order):
        host, s = make_session(seed=11)
        w = host.world
        windmill = w.add_entity(noun_labels=["windmill"], x=300, y=0,
                                width=40, height=80)
        blade = w.add_entity(noun_labels=["blade"], x=300, y=60,
                             width=60, height=60)
        w.attach(blade.id, windmill.id)
        w.add_entity(noun_labels=["wind"], x=-40, y=60, width=30, height=30,
                     vx=200.0)
        w.drain_appeared()
        for cmd in order:
            say(s, cmd)
        host.run(240)
        return host.trace

    rotate = "When wind collides with blades, blades rotate."
    stop = "After wind collides with blades, blades stop rotating."
    assert run([rotate, stop]) == run([stop, rotate])


def test_recursive_verb_definition_hits_depth_cap():
    host, s = make_session()
    w = host.world
    light = w.add_entity(noun_labels=["light"])
    w.drain_appeared()
    # a verb defined in terms of itself expands to the cap, then cancels
    say(s, "When lights glow, lights glow")
    say(s, "the light glows")
    host.run(40)                      # must not crash or loop forever
    assert all(sc.status != "RUNNING" or sc.label in ("glow", "glow (defined)")
               for sc in host.vm.scripts.values())
    host.run(40)
