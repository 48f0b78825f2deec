"""Scenario-style integration tests for the worked examples."""

import json

import pytest

from storyworld.session import Session, SimulationHost


def make(seed=13):
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


def verbs_started(host):
    return [v for line in host.trace
            for _, v, _ in json.loads(line)["started"]]


def test_fetch_loop_alternates_throw_and_give():
    host, s = make()
    w = host.world
    person = w.add_entity(noun_labels=["person"], x=0, y=0, width=30, height=30)
    ball = w.add_entity(noun_labels=["ball"], x=10, y=0, width=10, height=10)
    pond = w.add_entity(noun_labels=["pond"], x=300, y=0, width=80, height=40)
    dog = w.add_entity(noun_labels=["dog"], x=-100, y=0, width=30, height=30)
    w.drain_appeared()
    say(s, "Forever the person throws the ball into the pond "
           "and then the dog gives the ball to her.")
    host.run(60 * 12)
    seq = [v for v in verbs_started(host) if v in ("throw", "give")]
    assert len(seq) >= 4
    assert all(a != b for a, b in zip(seq, seq[1:]))    # strict alternation
    assert seq[0] == "throw"
    # the ball repeatedly reaches the pond and comes back to the person
    bx, _ = w.world_position(ball.id)
    assert w.alive(ball.id)


def test_pack_verb_fills_region_and_removes_it():
    host, s = make()
    w = host.world
    block = w.add_entity(noun_labels=["block"], width=20, height=10)
    w.save_prototype("block", block.id)
    w.delete(block.id)
    region = w.add_entity(noun_labels=["region"], x=0, y=120,
                          width=100, height=40)
    w.drain_appeared()
    say(s, "I pack the region with blocks")
    host.run(3)
    assert not w.alive(region.id)
    assert len(w.query("block")) == 20


def test_breakout_block_destruction_with_score():
    host, s = make()
    w = host.world
    block = w.add_entity(noun_labels=["block"], width=30, height=14)
    w.save_prototype("block", block.id)
    w.delete(block.id)
    region = w.add_entity(noun_labels=["region"], x=0, y=100,
                          width=90, height=28)
    score = w.add_entity(kind="NUMBER", noun_labels=["score"],
                         static_flag=True, x=0, y=300, numeric_value=0.0)
    ball = w.add_entity(noun_labels=["ball"], x=0, y=-80, width=10, height=10,
                        vy=160.0)
    w.drain_appeared()
    say(s, "I pack the region with blocks")
    host.run(3)
    blocks_before = len(w.query("block"))
    say(s, "When balls collide with blocks balls destroy blocks "
           "and then the score increases")
    host.run(240)
    assert len(w.query("block")) < blocks_before
    destroyed = blocks_before - len(w.query("block"))
    assert w.get(score.id).numeric_value == pytest.approx(float(destroyed))


def test_day_night_transform_chain_fires_appear_rules():
    host, s = make()
    w = host.world
    ghost = w.add_entity(noun_labels=["ghost"], width=20, height=20)
    w.save_prototype("ghost", ghost.id)
    w.delete(ghost.id)
    villager = w.add_entity(noun_labels=["villager"],
                            adjective_labels=["cursed"], x=0, y=0)
    boy = w.add_entity(noun_labels=["boy"], x=400, y=0)
    moon_proto = w.add_entity(noun_labels=["moon"], width=30, height=30)
    w.save_prototype("moon", moon_proto.id)
    w.delete(moon_proto.id)
    sun = w.add_entity(noun_labels=["sun"], x=0, y=200)
    w.drain_appeared()
    say(s, "When moons appear, all cursed villagers transform into ghosts")
    say(s, "When ghosts appear, ghosts follow the boy")
    say(s, "the sun transforms into a moon")
    host.run(120)
    # the villager became a ghost and is now chasing the boy
    ent = w.get(villager.id)
    assert ent.noun_labels == ["ghost"]
    assert w.world_position(villager.id)[0] > 50


def test_splash_rule_bumps_water_on_each_begin():
    host, s = make()
    w = host.world
    ball = w.add_entity(noun_labels=["ball"], x=-120, y=0, width=10,
                        height=10, vx=120.0)
    water = w.add_entity(noun_labels=["water"], x=0, y=0, width=60, height=60)
    w.drain_appeared()
    say(s, "When the ball collides with the water, water moves up for "
           "0.2 seconds and then water moves down for 0.2 seconds")
    ys = []
    for _ in range(240):
        host.tick()
        ys.append(w.world_position(water.id)[1])
    assert max(ys) > 5                     # bumped up
    assert abs(ys[-1]) < 2                 # and came back down


def test_deleting_scores_does_not_block_ball():
    # static entities are screen-fixed UI; they must not collide
    host, s = make()
    w = host.world
    score = w.add_entity(kind="NUMBER", noun_labels=["score"], x=0, y=0,
                         static_flag=True)
    ball = w.add_entity(noun_labels=["ball"], x=-100, y=0, width=10,
                        height=10, vx=200.0)
    w.drain_appeared()
    host.run(120)
    begins = [e for line in host.trace
              for e in json.loads(line)["events"] if e[0] == "BEGIN"]
    assert begins == []
