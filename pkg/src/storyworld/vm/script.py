"""Tick-driven script virtual machine.

Commands compile to small instruction lists (CALL/WAIT/loop headers/
delays). CALL spawns a child verb script into the caller's wait queue;
WAIT blocks the parent until every queued child is DONE or CANCELLED.
Loop bodies run at most one iteration per tick so zero-duration bodies
cannot wedge a frame. Cancellation closes over the whole subtree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from ..grammar.lexicon import Lexicon
from ..world.world import World
from .verbs import VerbArgs, VerbContext, VerbModule

RUNNING = "RUNNING"
DONE = "DONE"
CANCELLED = "CANCELLED"

FOREVER = float("inf")


@dataclass
class Call:
    invocation: "VerbInvocation"


@dataclass
class Wait:
    pass


@dataclass
class LoopStart:
    count: float          # iteration count; FOREVER for endless loops


@dataclass
class LoopEnd:
    pass


@dataclass
class Delay:
    ticks: int


@dataclass
class VerbInvocation:
    """A compiled verb call; slots resolve to entities at call time."""

    verb: str
    module: VerbModule | None
    resolve: Callable[[World, object], VerbArgs]
    timer_ticks: int | None = None
    expand: Callable[..., list] | None = None     # user-defined verb body
    depth: int = 0


@dataclass
class ScriptInstance:
    id: int
    label: str
    instructions: list = field(default_factory=list)
    ip: int = 0
    wait_queue: list[int] = field(default_factory=list)
    status: str = RUNNING
    parent: int | None = None
    # verb-script fields
    module: VerbModule | None = None
    args: VerbArgs | None = None
    verb_state: dict | None = None
    timer_left: int | None = None
    invocation: VerbInvocation | None = None
    loop_stack: list[list] = field(default_factory=list)   # [start_ip, left]
    delay_left: int = 0
    started: bool = False

    @property
    def is_verb(self) -> bool:
        return self.module is not None or self.invocation is not None


class VM:
    def __init__(self, world: World, lexicon: Lexicon, rng):
        self.world = world
        self.lex = lexicon
        self.rng = rng
        self.scripts: dict[int, ScriptInstance] = {}
        self._next_id = 1
        self._pending: list[ScriptInstance] = []
        self.started_events: list[tuple[int, str, list[int]]] = []
        self.finished_events: list[tuple[int, str]] = []

    # -- lifecycle ---------------------------------------------------------

    def launch(self, instructions: list, label: str) -> int:
        """Queue a command script; it starts at the next tick boundary."""
        script = ScriptInstance(id=self._alloc_id(), label=label,
                                instructions=instructions)
        self._pending.append(script)
        return script.id

    def _alloc_id(self) -> int:
        i = self._next_id
        self._next_id += 1
        return i

    def activate_pending(self) -> None:
        for script in self._pending:
            script.started = True
            self.scripts[script.id] = script
        self._pending.clear()

    def running(self) -> list[ScriptInstance]:
        return [s for s in self.scripts.values() if s.status == RUNNING]

    # -- per-tick advance -----------------------------------------------------

    def tick(self, dt: float) -> None:
        self.activate_pending()
        # scripts spawned mid-tick get larger ids and still advance this
        # tick, so a rule response acts within one tick of its trigger
        done_upto = 0
        while True:
            pending = sorted(sid for sid in self.scripts if sid > done_upto)
            if not pending:
                break
            for sid in pending:
                done_upto = max(done_upto, sid)
                script = self.scripts.get(sid)
                if script is None or script.status != RUNNING:
                    continue
                if script.is_verb:
                    self._advance_verb(script, dt)
                else:
                    self._advance_command(script, dt)
        self._sweep()

    def _sweep(self) -> None:
        # keep finished scripts one tick for inspection, then drop
        dead = [sid for sid, s in self.scripts.items()
                if s.status != RUNNING and s.started]
        for sid in dead:
            parent_running = any(
                other.status == RUNNING and sid in other.wait_queue
                for other in self.scripts.values())
            if not parent_running:
                del self.scripts[sid]

    def _advance_command(self, script: ScriptInstance, dt: float) -> None:
        while script.status == RUNNING:
            if script.delay_left > 0:
                script.delay_left -= 1
                return
            if script.ip >= len(script.instructions):
                self._finish(script, DONE)
                return
            instr = script.instructions[script.ip]
            if isinstance(instr, Call):
                child = self._spawn_call(instr.invocation, script)
                script.wait_queue.append(child.id)
                script.ip += 1
                continue
            if isinstance(instr, Wait):
                if any(self.scripts.get(cid) is not None
                       and self.scripts[cid].status == RUNNING
                       for cid in script.wait_queue):
                    return
                script.wait_queue.clear()
                script.ip += 1
                continue
            if isinstance(instr, LoopStart):
                script.loop_stack.append([script.ip, instr.count])
                script.ip += 1
                continue
            if isinstance(instr, LoopEnd):
                frame = script.loop_stack[-1]
                frame[1] -= 1
                if frame[1] > 0:
                    script.ip = frame[0] + 1
                    return                    # one loop iteration per tick
                script.loop_stack.pop()
                script.ip += 1
                continue
            if isinstance(instr, Delay):
                script.delay_left = instr.ticks
                script.ip += 1
                return
            raise AssertionError(f"unknown instruction {instr!r}")

    def _spawn_call(self, inv: VerbInvocation, parent: ScriptInstance
                    ) -> ScriptInstance:
        args = inv.resolve(self.world, self.rng)
        child = ScriptInstance(
            id=self._alloc_id(), label=inv.verb, parent=parent.id,
            module=inv.module, args=args, invocation=inv,
            timer_left=inv.timer_ticks, started=True)
        self.scripts[child.id] = child
        self.started_events.append((child.id, inv.verb, list(args.agents)))
        return child

    def _advance_verb(self, script: ScriptInstance, dt: float) -> None:
        inv = script.invocation
        if script.module is None and inv is not None and inv.expand is not None:
            # user-defined verb: expand once into a child command script
            if not script.wait_queue:
                from ..errors import EngineError
                try:
                    body = inv.expand(script.args, inv.depth + 1)
                except EngineError:
                    self._finish(script, CANCELLED)    # e.g. recursion cap
                    return
                child = ScriptInstance(id=self._alloc_id(),
                                       label=f"{inv.verb} (defined)",
                                       instructions=body, parent=script.id,
                                       started=True)
                self.scripts[child.id] = child
                script.wait_queue.append(child.id)
                return
            if any(self.scripts.get(cid) is not None
                   and self.scripts[cid].status == RUNNING
                   for cid in script.wait_queue):
                return
            self._finish(script, DONE)
            return

        ctx = VerbContext(world=self.world, vm=self, lex=self.lex,
                          rng=self.rng, dt=dt, args=script.args, script=script)
        if script.verb_state is None:
            script.verb_state = (script.module.start(ctx)
                                 if script.module.start else {})
        done = script.module.update(ctx, script.verb_state)
        if script.timer_left is not None:
            script.timer_left -= 1
            if script.timer_left <= 0:
                done = True
        if done:
            self._finish(script, DONE)

    def _finish(self, script: ScriptInstance, status: str) -> None:
        if script.status != RUNNING:
            return
        script.status = status
        if script.is_verb and script.module is not None \
                and script.module.cleanup is not None:
            ctx = VerbContext(world=self.world, vm=self, lex=self.lex,
                              rng=self.rng, dt=0.0, args=script.args,
                              script=script)
            state = script.verb_state if script.verb_state is not None else {}
            script.module.cleanup(ctx, state)
        self.finished_events.append((script.id, status))
        if status == CANCELLED:
            for child in list(self.scripts.values()):
                if child.parent == script.id and child.status == RUNNING:
                    self._finish(child, CANCELLED)

    # -- external control -------------------------------------------------------

    def cancel(self, script_id: int) -> None:
        script = self.scripts.get(script_id)
        if script is None:
            return
        self._finish(script, CANCELLED)

    def cancel_root(self, script_id: int) -> None:
        """Cancel the whole command owning this script."""
        script = self.scripts.get(script_id)
        if script is None:
            return
        while script.parent is not None and script.parent in self.scripts:
            script = self.scripts[script.parent]
        self._finish(script, CANCELLED)

    def stop(self, agent_ids: list[int], verb: str | None) -> int:
        """Cancel commands whose running verb matches the agents.

        ``verb`` None means any verb. The entire owning command is
        cancelled so loops do not respawn the action.
        """
        agents = set(agent_ids)
        count = 0
        for script in list(self.scripts.values()):
            if script.status != RUNNING or not script.is_verb:
                continue
            if script.args is None:
                continue
            if verb is not None and script.label != verb:
                continue
            if script.label == "stop":
                continue
            if agents and not (agents & set(script.args.agents)):
                continue
            self.cancel_root(script.id)
            count += 1
        return count

    def scripts_for_entity(self, entity_id: int) -> list[ScriptInstance]:
        out = []
        for sid in sorted(self.scripts):
            s = self.scripts[sid]
            if s.status != RUNNING or not s.is_verb or s.args is None:
                continue
            touched = set(s.args.agents) | set(s.args.dobj) | set(s.args.iobj)
            for ids in s.args.preps.values():
                touched |= set(ids)
            if entity_id in touched:
                out.append(s)
        return out

    def drain_events(self) -> tuple[list, list]:
        started, finished = self.started_events, self.finished_events
        self.started_events, self.finished_events = [], []
        return started, finished
