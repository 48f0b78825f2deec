"""Built-in verb modules.

A verb module is a per-tick update function plus a completion
predicate; registering one never touches the compiler or VM. Continuous
verbs (move, follow, rotate) run until a timer or cancellation ends
them; instant verbs (destroy, teleport, increase) complete on their
first update. Event verbs only make sense inside triggers and are
rejected when compiled as commands.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

from ..binding.labeling import apply_adjective
from ..grammar.lexicon import Lexicon
from ..world.world import World
from .modulation import modulation

EVENT_VERBS = ("press", "collide", "appear", "equal", "exceed")


@dataclass
class VerbArgs:
    agents: list[int] = field(default_factory=list)
    is_self: bool = False
    is_view: bool = False
    dobj: list[int] = field(default_factory=list)
    iobj: list[int] = field(default_factory=list)
    preps: dict[str, list[int]] = field(default_factory=dict)
    prep_numeric: dict[str, float] = field(default_factory=dict)
    direction: str | None = None
    modifiers: tuple[tuple[str, bool], ...] = ()
    prototype: str | None = None
    prototype_count: int = 1
    label_nouns: list[tuple[str, list[tuple[str, bool, str | None]]]] = field(default_factory=list)
    label_adjectives: list[tuple[str, bool, str | None]] = field(default_factory=list)
    stop_verb: str | None = None

    def targets(self, *preps: str) -> list[int]:
        """Entity targets for the given prepositions, else direct object."""
        for p in preps:
            if self.preps.get(p):
                return self.preps[p]
        return self.dobj


@dataclass
class VerbContext:
    world: World
    vm: object
    lex: Lexicon
    rng: object
    dt: float
    args: VerbArgs
    script: object

    def speed(self, agent_id: int) -> float:
        ent = self.world.get(agent_id)
        s, _ = modulation(self.lex, ent, self.args.modifiers)
        return self.lex.constant("base_speed") * s

    def magnitude(self, agent_id: int | None) -> float:
        ent = self.world.get(agent_id) if agent_id is not None else None
        _, m = modulation(self.lex, ent, self.args.modifiers)
        return m


@dataclass
class VerbModule:
    name: str
    update: Callable[[VerbContext, dict], bool]
    start: Callable[[VerbContext], dict] | None = None
    cleanup: Callable[[VerbContext, dict], None] | None = None
    required: tuple[str, ...] = ()
    event_only: bool = False


def _alive(world: World, ids: list[int]) -> list[int]:
    return [e for e in ids if world.alive(e)]


def _nearest(world: World, from_id: int, ids: list[int]) -> int | None:
    fx, fy = world.world_position(from_id)
    best, best_d = None, None
    for eid in ids:
        x, y = world.world_position(eid)
        d = (x - fx) ** 2 + (y - fy) ** 2
        if best is None or d < best_d:
            best, best_d = eid, d
    return best


def _overlap(world: World, a: int, b: int) -> bool:
    ax0, ay0, ax1, ay1 = world.bounds(a)
    bx0, by0, bx1, by1 = world.bounds(b)
    return ax0 < bx1 and bx0 < ax1 and ay0 < by1 and by0 < ay1


_DIRECTIONS = {"up": (0.0, 1.0), "down": (0.0, -1.0),
               "left": (-1.0, 0.0), "right": (1.0, 0.0)}


def _zero_velocity(ctx: VerbContext, ids) -> None:
    for eid in ids:
        ent = ctx.world.get(eid)
        if ent is not None:
            ent.vx = ent.vy = 0.0


# -- motion verbs ----------------------------------------------------------


def _move_update(ctx: VerbContext, st: dict) -> bool:
    agents = _alive(ctx.world, ctx.args.agents)
    if not agents:
        return True
    targets = _alive(ctx.world, ctx.args.targets(
        "to", "toward", "towards", "into", "onto", "at"))
    if not targets and not ctx.args.direction and ctx.args.dobj:
        return True                   # all targets gone
    arrived = st.setdefault("arrived", set())
    for eid in agents:
        if eid in arrived:
            continue
        ent = ctx.world.get(eid)
        speed = ctx.speed(eid)
        if targets:
            tgt = _nearest(ctx.world, eid, targets)
            if _overlap(ctx.world, eid, tgt):
                ent.vx = ent.vy = 0.0
                arrived.add(eid)
                continue
            tx, ty = ctx.world.world_position(tgt)
            x, y = ctx.world.world_position(eid)
            d = math.hypot(tx - x, ty - y) or 1.0
            step = speed * ctx.dt
            if d <= step:
                ctx.world.set_world_position(eid, tx, ty)
                ent.vx = ent.vy = 0.0
                arrived.add(eid)
            else:
                ent.vx = speed * (tx - x) / d
                ent.vy = speed * (ty - y) / d
        else:
            dx, dy = _DIRECTIONS.get(ctx.args.direction or "", (1.0, 0.0))
            ent.vx, ent.vy = dx * speed, dy * speed
    if targets and len(arrived) == len(agents):
        return True
    return False


def _follow_update(ctx: VerbContext, st: dict) -> bool:
    if ctx.args.is_view:
        targets = _alive(ctx.world, ctx.args.dobj)
        if not targets:
            return True
        ctx.world.camera.follow_target = targets[0]
        return False
    agents = _alive(ctx.world, ctx.args.agents)
    targets = _alive(ctx.world, ctx.args.dobj or ctx.args.targets("to"))
    if not agents or not targets:
        return True                    # target died: complete, flagged gap
    for eid in agents:
        ent = ctx.world.get(eid)
        tgt = _nearest(ctx.world, eid, targets)
        if _overlap(ctx.world, eid, tgt):
            ent.vx = ent.vy = 0.0
            continue
        tx, ty = ctx.world.world_position(tgt)
        x, y = ctx.world.world_position(eid)
        d = math.hypot(tx - x, ty - y) or 1.0
        speed = ctx.speed(eid)
        ent.vx, ent.vy = speed * (tx - x) / d, speed * (ty - y) / d
    return False


def _flee_update(ctx: VerbContext, st: dict) -> bool:
    agents = _alive(ctx.world, ctx.args.agents)
    targets = _alive(ctx.world, ctx.args.dobj or ctx.args.targets("from"))
    if not agents or not targets:
        return True
    for eid in agents:
        ent = ctx.world.get(eid)
        tgt = _nearest(ctx.world, eid, targets)
        tx, ty = ctx.world.world_position(tgt)
        x, y = ctx.world.world_position(eid)
        d = math.hypot(x - tx, y - ty) or 1.0
        speed = ctx.speed(eid)
        ent.vx, ent.vy = speed * (x - tx) / d, speed * (y - ty) / d
    return False


def _motion_cleanup(ctx: VerbContext, st: dict) -> None:
    _zero_velocity(ctx, _alive(ctx.world, ctx.args.agents))


def _view_follow_cleanup(ctx: VerbContext, st: dict) -> None:
    if ctx.args.is_view:
        ctx.world.camera.follow_target = None
    else:
        _motion_cleanup(ctx, st)


# -- jump family -----------------------------------------------------------


def _jump_land(ctx: VerbContext, agent: int, target: int | None) -> tuple[float, float]:
    x, y = ctx.world.world_position(agent)
    if target is None or not ctx.world.alive(target):
        return x, y
    ent = ctx.world.get(agent)
    tgt = ctx.world.get(target)
    tx, ty = ctx.world.world_position(target)
    preps = ctx.args.preps
    if any(preps.get(p) for p in ("on", "onto")):
        return tx, ty + tgt.height / 2 + ent.height / 2
    if preps.get("under"):
        return tx, ty - tgt.height / 2 - ent.height / 2
    if preps.get("over"):
        side = 1.0 if tx >= x else -1.0
        return tx + side * (tgt.width / 2 + ent.width / 2 + 10.0), y
    return tx, ty


def _make_jump(height_scale: float):
    def start(ctx: VerbContext) -> dict:
        duration = ctx.lex.constant("jump_duration")
        total = max(1, math.ceil(duration / ctx.dt))
        per_agent = {}
        targets = _alive(ctx.world, ctx.args.targets(
            "on", "onto", "over", "under", "to", "toward", "towards", "into"))
        for eid in _alive(ctx.world, ctx.args.agents):
            queue = list(targets) or [None]
            per_agent[eid] = {"queue": queue, "index": 0, "tick": 0,
                              "origin": ctx.world.world_position(eid),
                              "land": _jump_land(ctx, eid, queue[0]),
                              "total": total}
        return {"agents": per_agent}

    def update(ctx: VerbContext, st: dict) -> bool:
        per_agent = st.get("agents", {})
        if not per_agent:
            return True
        all_done = True
        base_h = ctx.lex.constant("jump_height") * height_scale
        for eid, a in per_agent.items():
            if a.get("done") or not ctx.world.alive(eid):
                continue
            a["tick"] += 1
            t = a["tick"] / a["total"]
            ox, oy = a["origin"]
            lx, ly = a["land"]
            h = base_h * ctx.magnitude(eid)
            x = ox + (lx - ox) * t
            y = oy + (ly - oy) * t + h * 4.0 * t * (1.0 - t)
            ctx.world.set_world_position(eid, x, y)
            if a["tick"] >= a["total"]:
                a["index"] += 1
                queue = a["queue"]
                if a["index"] < len(queue):
                    a["tick"] = 0
                    a["origin"] = (x, y)
                    a["land"] = _jump_land(ctx, eid, queue[a["index"]])
                    all_done = False
                else:
                    a["done"] = True
            else:
                all_done = False
        return all_done

    return start, update


def _throw_start(ctx: VerbContext) -> dict:
    world = ctx.world
    targets = _alive(world, ctx.args.targets(
        "to", "into", "at", "toward", "towards", "onto", "on"))
    balls = {}
    speed = ctx.lex.constant("throw_speed")
    for ball in _alive(world, ctx.args.dobj):
        if not targets:
            continue
        tgt = _nearest(world, ball, targets)
        bx, by = world.world_position(ball)
        tx, ty = world.world_position(tgt)
        dist = math.hypot(tx - bx, ty - by)
        total = max(1, math.ceil((dist / speed) / ctx.dt))
        balls[ball] = {"origin": (bx, by), "land": (tx, ty),
                       "tick": 0, "total": total}
    return {"balls": balls}


def _throw_update(ctx: VerbContext, st: dict) -> bool:
    balls = st.get("balls", {})
    if not balls:
        return True
    done = True
    h = ctx.lex.constant("jump_height")
    for ball, a in balls.items():
        if a.get("done") or not ctx.world.alive(ball):
            continue
        a["tick"] += 1
        t = a["tick"] / a["total"]
        ox, oy = a["origin"]
        lx, ly = a["land"]
        mag = ctx.magnitude(ctx.args.agents[0] if ctx.args.agents else None)
        x = ox + (lx - ox) * t
        y = oy + (ly - oy) * t + h * mag * 4.0 * t * (1.0 - t)
        ctx.world.set_world_position(ball, x, y)
        if a["tick"] >= a["total"]:
            a["done"] = True
        else:
            done = False
    return done


def _climb_start(ctx: VerbContext) -> dict:
    return {"phase": {}}


def _climb_update(ctx: VerbContext, st: dict) -> bool:
    agents = _alive(ctx.world, ctx.args.agents)
    targets = _alive(ctx.world, ctx.args.dobj or ctx.args.targets("up", "on", "onto"))
    if not agents or not targets:
        return True
    phases = st["phase"]
    speed_const = ctx.lex.constant("climb_speed")
    all_done = True
    for eid in agents:
        ph = phases.setdefault(eid, 0)
        if ph >= 2:
            continue
        ent = ctx.world.get(eid)
        tgt = _nearest(ctx.world, eid, targets)
        tent = ctx.world.get(tgt)
        tx, ty = ctx.world.world_position(tgt)
        if ph == 0:      # to the base
            goal = (tx, ty - tent.height / 2 - ent.height / 2)
        else:            # then to the top
            goal = (tx, ty + tent.height / 2 + ent.height / 2)
        x, y = ctx.world.world_position(eid)
        d = math.hypot(goal[0] - x, goal[1] - y)
        step = speed_const * ctx.dt
        if d <= step:
            ctx.world.set_world_position(eid, *goal)
            ent.vx = ent.vy = 0.0
            phases[eid] = ph + 1
            if phases[eid] < 2:
                all_done = False
        else:
            ent.vx = speed_const * (goal[0] - x) / d
            ent.vy = speed_const * (goal[1] - y) / d
            all_done = False
    return all_done


def _give_start(ctx: VerbContext) -> dict:
    return {"phase": 0, "attached": []}


def _give_update(ctx: VerbContext, st: dict) -> bool:
    world = ctx.world
    agents = _alive(world, ctx.args.agents)
    items = _alive(world, ctx.args.dobj)
    recipients = _alive(world, ctx.args.preps.get("to", []) or ctx.args.iobj)
    if not agents or not items or not recipients:
        return True
    agent = agents[0]
    ent = world.get(agent)
    if st["phase"] == 0:                      # reach the item
        item = _nearest(world, agent, items)
        if _overlap(world, agent, item):
            for it in items:
                world.attach(it, agent)
            st["attached"] = list(items)
            st["phase"] = 1
            ent.vx = ent.vy = 0.0
        else:
            _steer(ctx, agent, item)
        return False
    recipient = _nearest(world, agent, recipients)
    if _overlap(world, agent, recipient):     # hand over
        for it in st["attached"]:
            if world.alive(it):
                world.detach(it)
        ent.vx = ent.vy = 0.0
        return True
    _steer(ctx, agent, recipient)
    return False


def _steer(ctx: VerbContext, eid: int, target: int) -> None:
    ent = ctx.world.get(eid)
    tx, ty = ctx.world.world_position(target)
    x, y = ctx.world.world_position(eid)
    d = math.hypot(tx - x, ty - y) or 1.0
    speed = ctx.speed(eid)
    ent.vx, ent.vy = speed * (tx - x) / d, speed * (ty - y) / d


def _give_cleanup(ctx: VerbContext, st: dict) -> None:
    for it in st.get("attached", []):
        if ctx.world.alive(it) and ctx.world.get(it).parent is not None:
            ctx.world.detach(it)
    _motion_cleanup(ctx, st)


def _rotate_update(ctx: VerbContext, st: dict) -> bool:
    agents = _alive(ctx.world, ctx.args.agents)
    if not agents:
        return True
    omega = ctx.lex.constant("rotate_speed_deg")
    for eid in agents:
        ent = ctx.world.get(eid)
        ent.angular_velocity = omega * (ctx.speed(eid) /
                                        ctx.lex.constant("base_speed"))
    return False


def _rotate_cleanup(ctx: VerbContext, st: dict) -> None:
    for eid in _alive(ctx.world, ctx.args.agents):
        ctx.world.get(eid).angular_velocity = 0.0


# -- state-change verbs -------------------------------------------------------


def _spawn_location(ctx: VerbContext) -> tuple[float, float]:
    for prep in ("at", "on", "in", "near"):
        ids = _alive(ctx.world, ctx.args.preps.get(prep, []))
        if ids:
            return ctx.world.world_position(ids[0])
    agents = _alive(ctx.world, ctx.args.agents)
    if agents:
        return ctx.world.world_position(agents[0])
    return ctx.world.camera.x, ctx.world.camera.y


def _create_update(ctx: VerbContext, st: dict) -> bool:
    proto = ctx.args.prototype
    if proto is None:
        return True
    x, y = _spawn_location(ctx)
    rec = ctx.world.prototypes.get(proto)
    width = rec.root["width"] if rec else 40.0
    for i in range(max(1, ctx.args.prototype_count)):
        ctx.world.spawn(proto, (x + i * width, y))
    return True


def _destroy_update(ctx: VerbContext, st: dict) -> bool:
    targets = ctx.args.dobj or ctx.args.agents
    for eid in _alive(ctx.world, targets):
        ctx.world.delete(eid)
    return True


def _transform_update(ctx: VerbContext, st: dict) -> bool:
    proto = ctx.world.prototypes.get(ctx.args.prototype or "")
    if proto is None:
        return True
    rec = proto.root
    for eid in _alive(ctx.world, ctx.args.agents):
        ent = ctx.world.get(eid)
        ent.kind = rec["kind"]
        ent.noun_labels = list(rec["noun_labels"])
        ent.adjective_labels = list(rec["adjective_labels"])
        ent.width, ent.height = rec["width"], rec["height"]
        ent.visible = rec["visible"]
        ent.numeric_value = rec["numeric_value"]
        ent.text_value = rec["text_value"]
        ent.stroke_payload = rec["stroke_payload"]
        ctx.world.mark_appeared(eid)          # the new form appears
    return True


def apply_label_args(world: World, args: VerbArgs) -> None:
    """Apply a labeling payload (nouns, adjectives) to the agents."""
    for eid in _alive(world, args.agents):
        ent = world.get(eid)
        for lemma, embedded in args.label_nouns:
            ent.add_noun(lemma)
            for adj, negated, chain in embedded:
                apply_adjective(world, eid, adj, negated, chain)
        for adj, negated, chain in args.label_adjectives:
            apply_adjective(world, eid, adj, negated, chain)


def _label_update(ctx: VerbContext, st: dict) -> bool:
    apply_label_args(ctx.world, ctx.args)
    return True


def _appear_update(ctx: VerbContext, st: dict) -> bool:
    if not st.get("applied"):
        for eid in _alive(ctx.world, ctx.args.agents):
            ent = ctx.world.get(eid)
            if not ent.visible:
                ent.visible = True
                ctx.world.mark_appeared(eid)
        st["applied"] = True
    return ctx.script.timer_left is None      # with a timer, act as delay


def _disappear_update(ctx: VerbContext, st: dict) -> bool:
    if not st.get("applied"):
        for eid in _alive(ctx.world, ctx.args.agents):
            ctx.world.get(eid).visible = False
        st["applied"] = True
    return ctx.script.timer_left is None


def _attach_update(ctx: VerbContext, st: dict) -> bool:
    world = ctx.world
    targets = _alive(world, ctx.args.preps.get("to", []))
    movers = _alive(world, ctx.args.dobj) or _alive(world, ctx.args.agents)
    if not targets and ctx.args.dobj and ctx.args.agents:
        targets = _alive(world, ctx.args.agents)   # "X attaches the Y" form
        movers = _alive(world, ctx.args.dobj)
    if targets:
        for m in movers:
            if m != targets[0]:
                world.attach(m, targets[0])
    return True


def _detach_update(ctx: VerbContext, st: dict) -> bool:
    for eid in _alive(ctx.world, ctx.args.dobj or ctx.args.agents):
        ctx.world.detach(eid)
    return True


def _reflect_update(ctx: VerbContext, st: dict) -> bool:
    world = ctx.world
    reflectors = _alive(world, ctx.args.agents)
    for ball_id in _alive(world, ctx.args.dobj):
        if not reflectors:
            break
        overlapping = [r for r in reflectors if _overlap(world, ball_id, r)]
        reflector = overlapping[0] if overlapping else _nearest(
            world, ball_id, reflectors)
        ball = world.get(ball_id)
        bx0, by0, bx1, by1 = world.bounds(ball_id)
        rx0, ry0, rx1, ry1 = world.bounds(reflector)
        pen_x = min(bx1, rx1) - max(bx0, rx0)
        pen_y = min(by1, ry1) - max(by0, ry0)
        bx, by = world.world_position(ball_id)
        rx, ry = world.world_position(reflector)
        if pen_x < pen_y:
            if ball.vx * (bx - rx) < 0:
                ball.vx = -ball.vx
        elif pen_y < pen_x:
            if ball.vy * (by - ry) < 0:
                ball.vy = -ball.vy
        else:
            if ball.vx * (bx - rx) < 0:
                ball.vx = -ball.vx
            if ball.vy * (by - ry) < 0:
                ball.vy = -ball.vy
    return True


def _teleport_update(ctx: VerbContext, st: dict) -> bool:
    targets = _alive(ctx.world, ctx.args.targets("to", "onto", "on"))
    if not targets:
        return True
    tx, ty = ctx.world.world_position(targets[0])
    for eid in _alive(ctx.world, ctx.args.agents):
        ctx.world.set_world_position(eid, tx, ty)
    return True


def _make_step(sign: float):
    def update(ctx: VerbContext, st: dict) -> bool:
        targets = ctx.args.dobj or ctx.args.agents
        step = ctx.lex.constant("increase_step")
        for eid in _alive(ctx.world, targets):
            ent = ctx.world.get(eid)
            ent.numeric_value += sign * step * ctx.magnitude(eid)
        return True
    return update


def _pack_update(ctx: VerbContext, st: dict) -> bool:
    regions = _alive(ctx.world, ctx.args.dobj)
    proto = ctx.args.prototype
    if regions and proto:
        ctx.world.pack_region(regions[0], proto)
    return True


def _stop_update(ctx: VerbContext, st: dict) -> bool:
    ctx.vm.stop(ctx.args.agents, ctx.args.stop_verb)
    return True


def _event_stub(name: str) -> VerbModule:
    def update(ctx: VerbContext, st: dict) -> bool:
        return True
    return VerbModule(name=name, update=update, event_only=True)


def _instant(name: str, update, required: tuple[str, ...] = ()) -> VerbModule:
    return VerbModule(name=name, update=update, required=required)


def build_registry() -> dict[str, VerbModule]:
    jump_start, jump_update = _make_jump(1.0)
    hop_start, hop_update = _make_jump(0.6)
    mods = [
        VerbModule("move", _move_update, cleanup=_motion_cleanup),
        VerbModule("follow", _follow_update, cleanup=_view_follow_cleanup,
                   required=("target",)),
        VerbModule("flee", _flee_update, cleanup=_motion_cleanup,
                   required=("target",)),
        VerbModule("jump", jump_update, start=jump_start),
        VerbModule("hop", hop_update, start=hop_start),
        VerbModule("rotate", _rotate_update, cleanup=_rotate_cleanup),
        VerbModule("climb", _climb_update, start=_climb_start,
                   cleanup=_motion_cleanup, required=("target",)),
        VerbModule("throw", _throw_update, start=_throw_start,
                   required=("dobj", "target")),
        VerbModule("give", _give_update, start=_give_start,
                   cleanup=_give_cleanup, required=("dobj", "recipient")),
        _instant("create", _create_update, required=("prototype",)),
        _instant("destroy", _destroy_update),
        _instant("transform", _transform_update, required=("prototype",)),
        VerbModule("become", _label_update),
        VerbModule("be", _label_update),
        VerbModule("appear", _appear_update),
        VerbModule("disappear", _disappear_update),
        _instant("attach", _attach_update, required=("target",)),
        _instant("detach", _detach_update),
        _instant("reflect", _reflect_update, required=("dobj",)),
        _instant("teleport", _teleport_update, required=("target",)),
        _instant("increase", _make_step(1.0)),
        _instant("decrease", _make_step(-1.0)),
        _instant("pack", _pack_update, required=("dobj", "prototype")),
        _instant("stop", _stop_update),
    ]
    registry = {m.name: m for m in mods}
    for name in ("press", "collide", "equal", "exceed"):
        registry[name] = _event_stub(name)
    return registry
