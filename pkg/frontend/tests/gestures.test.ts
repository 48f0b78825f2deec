import { beforeEach, describe, expect, it } from "vitest";

import { EngineConnection } from "../src/connection.js";
import { GestureController, LanguageActionButton } from "../src/gestures.js";
import { ClientScene } from "../src/scene.js";
import type { EntitySnapshot, WorldDelta } from "../src/protocol.js";

const view = { width: 800, height: 600 };

function snapshot(partial: Partial<EntitySnapshot>): EntitySnapshot {
  return {
    id: 1, kind: "SKETCH", x: 0, y: 0, angle: 0, width: 40, height: 40,
    labels: [], adjectives: [], visible: true, static: false, value: 0,
    text: "", stroke: null, ...partial,
  };
}

function sceneWith(entities: EntitySnapshot[]): ClientScene {
  const scene = new ClientScene();
  const frame: WorldDelta = { type: "world_delta", tick: 0, entities,
                              camera: { x: 0, y: 0, zoom: 1 } };
  scene.apply(frame);
  return scene;
}

// connection with a socket that goes nowhere; `sent` records messages
function fakeConnection(): EngineConnection {
  const conn = new EngineConnection(() => ({
    send() {}, close() {}, addEventListener() {},
  }));
  conn.connect("ws://nowhere");
  return conn;
}

describe("GestureController", () => {
  let scene: ClientScene;
  let conn: EngineConnection;
  let g: GestureController;

  beforeEach(() => {
    scene = sceneWith([snapshot({ id: 7, x: 0, y: 0 })]);
    conn = fakeConnection();
    g = new GestureController(scene, conn, view);
  });

  it("drawing on empty canvas emits one stroke_add with bounds", () => {
    g.pointerDown(100, 100);
    g.pointerMove(140, 100);
    g.pointerMove(140, 160);
    g.pointerUp();
    const stroke = conn.sent.find((m) => m.type === "stroke_add")!;
    expect(stroke).toBeTruthy();
    expect(stroke.width).toBe(40);
    expect(stroke.height).toBe(60);
    expect((stroke.payload as number[][]).length).toBe(3);
  });

  it("dragging an entity emits pointer_down/move/up with world coords", () => {
    g.pointerDown(400, 300);           // entity 7 sits at screen center
    g.pointerMove(450, 300);
    g.pointerUp();
    const types = conn.sent.map((m) => m.type);
    expect(types).toEqual(["pointer_down", "pointer_move", "pointer_up"]);
    const move = conn.sent[1];
    expect(move.entity).toBe(7);
    expect(move.x).toBe(50);
    expect(move.y).toBeCloseTo(0);
  });

  it("holding an entity and tapping a word links the label", () => {
    g.pointerDown(400, 300);
    g.pointerUp();
    g.wordTapped(12);
    const link = conn.sent.find((m) => m.type === "label_link")!;
    expect(link.entities).toEqual([7]);
    expect(link.word_id).toBe(12);
  });

  it("word taps without a held entity do nothing", () => {
    g.wordTapped(12);
    expect(conn.sent).toHaveLength(0);
  });

  it("alt-click erases", () => {
    g.pointerDown(400, 300, true);
    expect(conn.sent).toEqual([{ type: "delete", entity: 7 }]);
  });

  it("double click presses", () => {
    g.doubleClick(400, 300);
    expect(conn.sent).toEqual([{ type: "press", entity: 7 }]);
  });

  it("selecting a diagram noun then an entity relinks", () => {
    g.diagramNounTapped(4242);
    g.pointerDown(400, 300);
    expect(conn.sent).toEqual([
      { type: "relink", node_id: 4242, entity: 7 },
    ]);
    expect(scene.selectedDiagramNode).toBeNull();
  });

  it("alt-tapping a diagram proxy unlinks", () => {
    g.diagramProxyAltTapped(4242, 7);
    expect(conn.sent).toEqual([
      { type: "unlink", node_id: 4242, entity: 7 },
    ]);
  });

  it("word range selection emits select_words", () => {
    g.selectWordRange(2, 5, false);
    expect(conn.sent).toEqual([
      { type: "select_words", start: 2, end: 5, on: false },
    ]);
  });
});

describe("LanguageActionButton", () => {
  it("stages first, confirms when something is staged", () => {
    const scene = new ClientScene();
    const conn = fakeConnection();
    const button = new LanguageActionButton(conn, scene);
    button.tap();
    scene.apply({ type: "diagram_state", staged: "STAGED",
                  diagram: { blocks: [], errors: [] } });
    button.tap();
    button.discard();
    expect(conn.sent.map((m) => m.type)).toEqual(
      ["stage", "confirm", "discard"]);
  });
});
