// Pointer gestures mapped onto protocol messages.
//
// The tablet pen+touch chords are emulated with a mouse and keyboard:
// dragging on empty canvas draws a stroke; dragging an entity moves it
// live; clicking an entity holds it, and clicking a transcript word
// while holding sends a label link; Alt+click erases; double-click
// presses (for button-like sketches).

import { EngineConnection } from "./connection.js";
import { ClientScene } from "./scene.js";
import { strokeAdd } from "./protocol.js";

export interface View {
  width: number;
  height: number;
}

type DragState =
  | { kind: "idle" }
  | { kind: "draw"; points: number[][] }
  | { kind: "drag"; entity: number };

export class GestureController {
  private state: DragState = { kind: "idle" };

  constructor(private scene: ClientScene,
              private connection: EngineConnection,
              private view: View) {}

  pointerDown(sx: number, sy: number, alt = false): void {
    const hit = this.scene.hitTest(sx, sy, this.view);
    if (hit !== null && alt) {                      // eraser chord
      this.connection.send({ type: "delete", entity: hit });
      return;
    }
    if (hit !== null) {
      if (this.scene.selectedDiagramNode !== null) { // diagram relink target
        this.connection.send({
          type: "relink",
          node_id: this.scene.selectedDiagramNode,
          entity: hit,
        });
        this.scene.selectedDiagramNode = null;
        return;
      }
      this.scene.heldEntity = hit;
      this.state = { kind: "drag", entity: hit };
      this.connection.send({ type: "pointer_down", entities: [hit] });
      return;
    }
    const [wx, wy] = this.scene.screenToWorld(sx, sy, this.view);
    this.state = { kind: "draw", points: [[wx, wy]] };
  }

  pointerMove(sx: number, sy: number): void {
    if (this.state.kind === "draw") {
      const [wx, wy] = this.scene.screenToWorld(sx, sy, this.view);
      this.state.points.push([wx, wy]);
      this.scene.pendingStroke = this.state.points;
    } else if (this.state.kind === "drag") {
      const [wx, wy] = this.scene.screenToWorld(sx, sy, this.view);
      this.connection.send({
        type: "pointer_move", entity: this.state.entity, x: wx, y: wy,
      });
    }
  }

  pointerUp(): void {
    if (this.state.kind === "draw") {
      if (this.state.points.length > 1) {
        this.connection.send(strokeAdd(this.state.points));
      }
      this.scene.pendingStroke = null;
    } else if (this.state.kind === "drag") {
      this.connection.send({
        type: "pointer_up", entities: [this.state.entity],
      });
      // the hold survives the release so a word tap can still link it
    }
    this.state = { kind: "idle" };
  }

  doubleClick(sx: number, sy: number): void {
    const hit = this.scene.hitTest(sx, sy, this.view);
    if (hit !== null) {
      this.connection.send({ type: "press", entity: hit });
    }
  }

  // transcript interactions ------------------------------------------------

  wordTapped(wordId: number): void {
    if (this.scene.heldEntity !== null) {
      this.connection.send({
        type: "label_link",
        entities: [this.scene.heldEntity],
        word_id: wordId,
      });
    }
  }

  selectWordRange(start: number, end: number, on: boolean): void {
    this.connection.send({ type: "select_words", start, end, on });
  }

  // panels ------------------------------------------------------------------

  diagramNounTapped(nodeId: number): void {
    this.scene.selectedDiagramNode =
      this.scene.selectedDiagramNode === nodeId ? null : nodeId;
  }

  diagramProxyAltTapped(nodeId: number, entityId: number): void {
    this.connection.send({ type: "unlink", node_id: nodeId, entity: entityId });
  }
}

// two-phase button: the first tap stages, the second confirms
export class LanguageActionButton {
  constructor(private connection: EngineConnection,
              private scene: ClientScene) {}

  tap(): void {
    const staged = this.scene.diagram?.staged === "STAGED";
    this.connection.send({ type: staged ? "confirm" : "stage" });
  }

  discard(): void {
    this.connection.send({ type: "discard" });
  }
}
