"""Simulation host: owns the world, VM, and rules; drives the tick loop.

Pipeline per tick: scripts advance, velocities integrate, collisions
are detected, rules evaluate against the tick's events, the camera
follows, and one JSON trace line is emitted. All external mutations
(protocol messages, confirms) happen between ticks, so a fixed seed and
message schedule replay to byte-identical traces.
"""

from __future__ import annotations

import json
import random

from ..grammar.lexicon import Lexicon, default_lexicon
from ..rules.engine import RulesEngine
from ..vm.compiler import Compiler
from ..vm.script import VM
from ..vm.verbs import build_registry
from ..world.world import World

TRACE_SCHEMA_VERSION = 1


class SimulationHost:
    def __init__(self, seed: int = 0, dt: float = 1.0 / 60.0,
                 lexicon: Lexicon | None = None, record_trace: bool = True):
        self.lex = lexicon or default_lexicon()
        self.world = World(dt)
        self.rng = random.Random(seed)
        self.seed = seed
        self.vm = VM(self.world, self.lex, self.rng)
        self.compiler = Compiler(
            self.lex, build_registry(), dt,
            defined_lookup=lambda lemma: self.rules.defined_lookup(lemma))
        self.rules = RulesEngine(self.world, self.vm, self.compiler)
        self.paused = False
        self.record_trace = record_trace
        self.trace: list[str] = []
        self._pending_presses: list[int] = []

    @property
    def dt(self) -> float:
        return self.world.clock.dt

    def press(self, entity_id: int) -> None:
        self._pending_presses.append(entity_id)

    def tick(self) -> None:
        if self.paused:
            return
        dt = self.dt
        self.vm.tick(dt)
        self.world.integrate(dt)
        events = self.world.collision_events()
        appeared = self.world.drain_appeared()
        presses = self._pending_presses
        self._pending_presses = []
        self.rules.evaluate(events, presses, appeared)
        self.world.camera_tick()
        started, finished = self.vm.drain_events()
        if self.record_trace:
            self.trace.append(self._trace_line(events, presses, appeared,
                                               started, finished))
        self.world.clock.tick_index += 1

    def run(self, ticks: int) -> None:
        for _ in range(ticks):
            self.tick()

    def _trace_line(self, events, presses, appeared, started, finished) -> str:
        entities = []
        for eid in sorted(self.world.entities):
            ent = self.world.entities[eid]
            x, y, angle = self.world.world_transform(eid)
            entities.append([
                eid, round(x, 6), round(y, 6), round(ent.vx, 6),
                round(ent.vy, 6), round(angle, 6),
                round(ent.angular_velocity, 6), int(ent.visible),
                round(ent.numeric_value, 6),
            ])
        event_list = [[phase, a, b] for phase, a, b in events]
        event_list += [["PRESS", e] for e in presses]
        event_list += [["APPEAR", e] for e in appeared]
        line = {
            "tick": self.world.clock.tick_index,
            "entities": entities,
            "events": event_list,
            "started": [[sid, verb, agents] for sid, verb, agents in started],
            "finished": [[sid, status] for sid, status in finished],
        }
        return json.dumps(line, separators=(",", ":"))
