"""WebSocket service: JSON message frames over one socket per client.

Sessions are keyed by the ``session`` URL query parameter (default
"default") and keep ticking whether or not a client is connected, so
connection loss pauses nothing. Reconnecting with the same key resumes
the same world. Outbound frames are the session's reply frames plus a
world delta every tick.
"""

from __future__ import annotations

import asyncio
import json
import logging
from dataclasses import dataclass, field
from urllib.parse import parse_qs, urlparse

from .host import SimulationHost
from .protocol import apply_message, world_delta
from .session import Session

log = logging.getLogger("storyworld.server")


@dataclass
class _LiveSession:
    host: SimulationHost
    session: Session
    clients: set = field(default_factory=set)
    ticker: asyncio.Task | None = None


class EngineServer:
    def __init__(self, seed: int = 0, dt: float = 1.0 / 60.0):
        self.seed = seed
        self.dt = dt
        self.sessions: dict[str, _LiveSession] = {}

    def _session(self, key: str) -> _LiveSession:
        live = self.sessions.get(key)
        if live is None:
            host = SimulationHost(seed=self.seed, dt=self.dt,
                                  record_trace=False)
            live = _LiveSession(host=host, session=Session(host))
            live.ticker = asyncio.get_running_loop().create_task(
                self._tick_forever(live))
            self.sessions[key] = live
        return live

    async def _tick_forever(self, live: _LiveSession) -> None:
        while True:
            live.host.tick()
            if live.clients:
                frame = json.dumps(world_delta(live.session))
                for queue in list(live.clients):
                    self._offer(queue, frame)
            await asyncio.sleep(self.dt)

    @staticmethod
    def _offer(queue: asyncio.Queue, frame: str) -> None:
        try:
            queue.put_nowait(frame)
        except asyncio.QueueFull:
            try:
                queue.get_nowait()             # drop the oldest delta
            except asyncio.QueueEmpty:
                pass
            queue.put_nowait(frame)

    async def handle(self, websocket) -> None:
        path = getattr(getattr(websocket, "request", None), "path", "/")
        params = parse_qs(urlparse(path).query)
        key = params.get("session", ["default"])[0]
        live = self._session(key)
        outbox: asyncio.Queue = asyncio.Queue(maxsize=256)
        live.clients.add(outbox)

        async def sender():
            while True:
                await websocket.send(await outbox.get())

        send_task = asyncio.create_task(sender())
        try:
            async for raw in websocket:
                try:
                    msg = json.loads(raw)
                except json.JSONDecodeError:
                    self._offer(outbox, json.dumps(
                        {"type": "error", "reason": "invalid JSON"}))
                    continue
                for reply in apply_message(live.session, msg):
                    self._offer(outbox, json.dumps(reply))
        finally:
            send_task.cancel()
            live.clients.discard(outbox)


async def serve_async(port: int, seed: int = 0, dt: float = 1.0 / 60.0,
                      host_addr: str = "127.0.0.1") -> None:
    import websockets

    server = EngineServer(seed=seed, dt=dt)

    async with websockets.serve(server.handle, host_addr, port):
        log.info("engine listening on ws://%s:%d", host_addr, port)
        await asyncio.Future()


def serve(port: int, seed: int = 0, dt: float = 1.0 / 60.0,
          host_addr: str = "127.0.0.1") -> None:
    asyncio.run(serve_async(port, seed, dt, host_addr))
