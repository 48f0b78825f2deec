import { describe, expect, it } from "vitest";

import { ClientScene } from "../src/scene.js";
import { strokeBounds } from "../src/protocol.js";
import type { EntitySnapshot, WorldDelta } from "../src/protocol.js";

const view = { width: 800, height: 600 };

function snapshot(partial: Partial<EntitySnapshot>): EntitySnapshot {
  return {
    id: 1, kind: "SKETCH", x: 0, y: 0, angle: 0, width: 40, height: 40,
    labels: [], adjectives: [], visible: true, static: false, value: 0,
    text: "", stroke: null, ...partial,
  };
}

function delta(entities: EntitySnapshot[], tick = 0): WorldDelta {
  return { type: "world_delta", tick, entities,
           camera: { x: 0, y: 0, zoom: 1 } };
}

describe("ClientScene", () => {
  it("mirrors world deltas with no extrapolation", () => {
    const scene = new ClientScene();
    scene.apply(delta([snapshot({ id: 1, x: 10 })], 5));
    expect(scene.tick).toBe(5);
    expect(scene.entity(1)?.x).toBe(10);
    scene.apply(delta([snapshot({ id: 1, x: 12 })], 6));
    expect(scene.entity(1)?.x).toBe(12);
    scene.apply(delta([], 7));
    expect(scene.entity(1)).toBeUndefined();
  });

  it("drops the held entity when it dies", () => {
    const scene = new ClientScene();
    scene.apply(delta([snapshot({ id: 3 })]));
    scene.heldEntity = 3;
    scene.apply(delta([]));
    expect(scene.heldEntity).toBeNull();
  });

  it("maps world to screen with y flipped", () => {
    const scene = new ClientScene();
    expect(scene.worldToScreen(0, 0, view)).toEqual([400, 300]);
    expect(scene.worldToScreen(100, 50, view)).toEqual([500, 250]);
    const [wx, wy] = scene.screenToWorld(500, 250, view);
    expect([wx, wy]).toEqual([100, 50]);
  });

  it("keeps static entities in screen space under camera pan", () => {
    const scene = new ClientScene();
    const fixed = snapshot({ id: 9, static: true, x: 50, y: 40 });
    scene.apply({ ...delta([fixed]), camera: { x: 500, y: -300, zoom: 1 } });
    expect(scene.screenPosition(fixed, view)).toEqual([450, 260]);
  });

  it("hit-tests topmost entity in screen coordinates", () => {
    const scene = new ClientScene();
    scene.apply(delta([
      snapshot({ id: 1, x: 0, y: 0, width: 40, height: 40 }),
      snapshot({ id: 2, x: 5, y: 0, width: 40, height: 40 }),
    ]));
    expect(scene.hitTest(405, 300, view)).toBe(2);
    expect(scene.hitTest(700, 100, view)).toBeNull();
  });

  it("collects transcript, diagram, rules, and error frames", () => {
    const scene = new ClientScene();
    scene.apply({ type: "transcript_state",
                  words: [{ id: 1, text: "the", selected: true }] });
    scene.apply({ type: "rule_list",
                  rules: [{ id: 1, enabled: true, text: "WHEN ..." }] });
    scene.apply({ type: "error", reason: "nope" });
    expect(scene.words).toHaveLength(1);
    expect(scene.rules[0].enabled).toBe(true);
    expect(scene.errors).toContain("nope");
  });
});

describe("strokeBounds", () => {
  it("computes the centered box of a polyline", () => {
    const b = strokeBounds([[0, 0], [10, 20], [-10, 4]]);
    expect(b).toEqual({ x: 0, y: 10, width: 20, height: 20 });
  });

  it("degenerate strokes keep a minimum size", () => {
    expect(strokeBounds([[5, 5]])).toEqual({ x: 5, y: 5, width: 1, height: 1 });
  });
});
