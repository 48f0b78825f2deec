"""The simulated 2D world: entity store, hierarchy, collision, camera.

Coordinates are world pixels with y up. The attachment graph is a
forest; attached children keep parent-relative transforms. Collision is
axis-aligned box overlap over world-space bounds; static (screen-fixed)
entities do not collide. Invisible entities still collide, which lets
invisible proximity colliders drive rules.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from ..errors import CycleError, UnknownEntity, UnknownPrototype
from .entity import NUMBER, SKETCH, Entity, Prototype

BEGIN = "BEGIN"
CONTINUE = "CONTINUE"
END = "END"


@dataclass
class Camera:
    x: float = 0.0
    y: float = 0.0
    zoom: float = 1.0
    follow_target: int | None = None


@dataclass
class WorldClock:
    tick_index: int = 0
    dt: float = 1.0 / 60.0

    @property
    def seconds(self) -> float:
        return self.tick_index * self.dt

    def ticks_for(self, seconds: float) -> int:
        return max(1, math.ceil(seconds / self.dt - 1e-9))


class World:
    def __init__(self, dt: float = 1.0 / 60.0):
        self.entities: dict[int, Entity] = {}
        self.prototypes: dict[str, Prototype] = {}
        self.camera = Camera()
        self.clock = WorldClock(dt=dt)
        self._next_id = 1
        self.appeared: list[int] = []      # ids that appeared this tick
        self._overlaps: set[tuple[int, int]] = set()

    # -- entity management --------------------------------------------------

    def new_id(self) -> int:
        i = self._next_id
        self._next_id += 1
        return i

    def add_entity(self, entity_id: int | None = None, **kwargs) -> Entity:
        if entity_id is None:
            entity_id = self.new_id()
        else:
            self._next_id = max(self._next_id, entity_id + 1)
        ent = Entity(id=entity_id, **kwargs)
        self.entities[ent.id] = ent
        self.appeared.append(ent.id)
        return ent

    def get(self, entity_id: int) -> Entity | None:
        return self.entities.get(entity_id)

    def require(self, entity_id: int) -> Entity:
        ent = self.entities.get(entity_id)
        if ent is None:
            raise UnknownEntity(f"no entity {entity_id}")
        return ent

    def alive(self, entity_id: int) -> bool:
        return entity_id in self.entities

    def delete(self, entity_id: int) -> list[int]:
        """Delete an entity and its attached subtree; returns deleted ids."""
        root = self.require(entity_id)
        if root.parent is not None:
            parent = self.entities.get(root.parent)
            if parent is not None and entity_id in parent.children:
                parent.children.remove(entity_id)
            root.parent = None
        deleted: list[int] = []
        stack = [entity_id]
        while stack:
            eid = stack.pop()
            ent = self.entities.pop(eid, None)
            if ent is None:
                continue
            deleted.append(eid)
            stack.extend(ent.children)
        return deleted

    # -- hierarchy ------------------------------------------------------------

    def attach(self, child_id: int, parent_id: int) -> None:
        child = self.require(child_id)
        parent = self.require(parent_id)
        if child_id == parent_id or self._is_ancestor(child_id, parent_id):
            raise CycleError(f"attaching {child_id} under {parent_id}")
        wx, wy, wang = self.world_transform(child_id)
        pwx, pwy, pwang = self.world_transform(parent_id)
        if child.parent is not None:
            self.detach(child_id)
        # express the child's world pose relative to the parent
        dx, dy = wx - pwx, wy - pwy
        rad = math.radians(-pwang)
        child.x = dx * math.cos(rad) - dy * math.sin(rad)
        child.y = dx * math.sin(rad) + dy * math.cos(rad)
        child.angle = wang - pwang
        child.parent = parent_id
        parent.children.append(child_id)

    def detach(self, child_id: int) -> None:
        child = self.require(child_id)
        if child.parent is None:
            return
        wx, wy, wang = self.world_transform(child_id)
        parent = self.entities.get(child.parent)
        if parent is not None and child_id in parent.children:
            parent.children.remove(child_id)
        child.parent = None
        child.x, child.y, child.angle = wx, wy, wang

    def _is_ancestor(self, maybe_ancestor: int, of: int) -> bool:
        cur = self.entities.get(of)
        while cur is not None and cur.parent is not None:
            if cur.parent == maybe_ancestor:
                return True
            cur = self.entities.get(cur.parent)
        return False

    def ancestors(self, entity_id: int):
        cur = self.entities.get(entity_id)
        while cur is not None and cur.parent is not None:
            cur = self.entities.get(cur.parent)
            if cur is not None:
                yield cur

    def world_transform(self, entity_id: int) -> tuple[float, float, float]:
        ent = self.require(entity_id)
        x, y, angle = ent.x, ent.y, ent.angle
        cur = ent
        while cur.parent is not None:
            parent = self.entities.get(cur.parent)
            if parent is None:
                break
            rad = math.radians(parent.angle)
            x, y = (parent.x + x * math.cos(rad) - y * math.sin(rad),
                    parent.y + x * math.sin(rad) + y * math.cos(rad))
            angle += parent.angle
            cur = parent
        return x, y, angle

    def world_position(self, entity_id: int) -> tuple[float, float]:
        x, y, _ = self.world_transform(entity_id)
        return x, y

    def set_world_position(self, entity_id: int, x: float, y: float) -> None:
        ent = self.require(entity_id)
        if ent.parent is None:
            ent.x, ent.y = x, y
            return
        pwx, pwy, pwang = self.world_transform(ent.parent)
        dx, dy = x - pwx, y - pwy
        rad = math.radians(-pwang)
        ent.x = dx * math.cos(rad) - dy * math.sin(rad)
        ent.y = dx * math.sin(rad) + dy * math.cos(rad)

    def bounds(self, entity_id: int) -> tuple[float, float, float, float]:
        """World-space box (min_x, min_y, max_x, max_y); rotation ignored."""
        ent = self.require(entity_id)
        x, y = self.world_position(entity_id)
        return (x - ent.width / 2, y - ent.height / 2,
                x + ent.width / 2, y + ent.height / 2)

    # -- prototypes ---------------------------------------------------------

    def save_prototype(self, name: str, root_id: int) -> Prototype:
        proto = Prototype(name=name, root=self._record(self.require(root_id)))
        self.prototypes[name] = proto            # latest save wins
        return proto

    def _record(self, ent: Entity) -> dict:
        return {
            "kind": ent.kind,
            "noun_labels": list(ent.noun_labels),
            "adjective_labels": list(ent.adjective_labels),
            "x": ent.x, "y": ent.y, "angle": ent.angle,
            "width": ent.width, "height": ent.height,
            "visible": ent.visible, "static": ent.static_flag,
            "numeric_value": ent.numeric_value, "text_value": ent.text_value,
            "stroke_payload": ent.stroke_payload,
            "children": [self._record(self.entities[c]) for c in ent.children
                         if c in self.entities],
        }

    def spawn(self, proto_name: str, at: tuple[float, float]) -> int:
        proto = self.prototypes.get(proto_name)
        if proto is None:
            raise UnknownPrototype(proto_name)
        return self._instantiate(proto.root, at, parent=None)

    def _instantiate(self, rec: dict, at: tuple[float, float] | None,
                     parent: int | None) -> int:
        ent = self.add_entity(
            kind=rec["kind"], noun_labels=list(rec["noun_labels"]),
            adjective_labels=list(rec["adjective_labels"]),
            x=at[0] if at else rec["x"], y=at[1] if at else rec["y"],
            angle=rec["angle"], width=rec["width"], height=rec["height"],
            visible=rec["visible"], static_flag=rec["static"],
            numeric_value=rec["numeric_value"], text_value=rec["text_value"],
            stroke_payload=rec["stroke_payload"],
        )
        ent.parent = parent
        if parent is not None:
            self.entities[parent].children.append(ent.id)
        for child_rec in rec["children"]:
            self._instantiate(child_rec, None, ent.id)
        return ent.id

    def pack_region(self, region_id: int, proto_name: str) -> list[int]:
        region = self.require(region_id)
        proto = self.prototypes.get(proto_name)
        if proto is None:
            raise UnknownPrototype(proto_name)
        pw, ph = proto.root["width"], proto.root["height"]
        cols = int(region.width // pw) if pw > 0 else 0
        rows = int(region.height // ph) if ph > 0 else 0
        rx, ry = self.world_position(region_id)
        left = rx - region.width / 2
        top = ry + region.height / 2
        created: list[int] = []
        for row in range(rows):
            for col in range(cols):
                cx = left + pw / 2 + col * pw
                cy = top - ph / 2 - row * ph
                created.append(self.spawn(proto_name, (cx, cy)))
        self.delete(region_id)
        return created

    # -- queries -----------------------------------------------------------

    def query(self, noun: str | None, adjectives: tuple[str, ...] = (),
              within: str | None = None,
              numeric: float | None = None) -> list[int]:
        out = []
        for eid in sorted(self.entities):
            ent = self.entities[eid]
            if noun == "number":
                if ent.kind != NUMBER and "number" not in ent.noun_labels:
                    continue
            elif noun not in (None, "thing") and noun not in ent.noun_labels:
                continue
            if not all(ent.has_adjective(a) for a in adjectives):
                continue
            if within is not None and not any(
                    within in anc.noun_labels for anc in self.ancestors(eid)):
                continue
            if numeric is not None and not (
                    ent.kind == NUMBER and ent.numeric_value == numeric):
                continue
            out.append(eid)
        return out

    # -- simulation steps ---------------------------------------------------

    def integrate(self, dt: float) -> None:
        for ent in self.entities.values():
            if ent.vx or ent.vy:
                if ent.parent is None:
                    ent.x += ent.vx * dt
                    ent.y += ent.vy * dt
                else:
                    wx, wy = self.world_position(ent.id)
                    self.set_world_position(ent.id, wx + ent.vx * dt,
                                            wy + ent.vy * dt)
            if ent.angular_velocity:
                ent.angle += ent.angular_velocity * dt

    def collidable_ids(self) -> list[int]:
        return [eid for eid in sorted(self.entities)
                if not self.entities[eid].static_flag]

    def collision_events(self) -> list[tuple[str, int, int]]:
        """Overlap events for this tick: (phase, id_a, id_b), a < b."""
        ids = self.collidable_ids()
        boxes = {eid: self.bounds(eid) for eid in ids}
        current: set[tuple[int, int]] = set()
        for i, a in enumerate(ids):
            ax0, ay0, ax1, ay1 = boxes[a]
            for b in ids[i + 1:]:
                bx0, by0, bx1, by1 = boxes[b]
                if ax0 < bx1 and bx0 < ax1 and ay0 < by1 and by0 < ay1:
                    current.add((a, b))
        events: list[tuple[str, int, int]] = []
        for pair in sorted(current):
            phase = CONTINUE if pair in self._overlaps else BEGIN
            events.append((phase, pair[0], pair[1]))
        for pair in sorted(self._overlaps - current):
            events.append((END, pair[0], pair[1]))
        self._overlaps = current
        return events

    def camera_tick(self) -> None:
        target = self.camera.follow_target
        if target is not None and self.alive(target):
            self.camera.x, self.camera.y = self.world_position(target)

    def drain_appeared(self) -> list[int]:
        out = [e for e in self.appeared if self.alive(e)]
        self.appeared = []
        return out

    def mark_appeared(self, entity_id: int) -> None:
        self.appeared.append(entity_id)
