// ClientScene: a mirror of engine state derived solely from frames.
// There is no client-side simulation; the scene only stores the last
// snapshot of each channel plus local in-progress strokes.

import type {
  DiagramState, EngineFrame, EntitySnapshot, RuleEntry, TranscriptWord,
} from "./protocol.js";

export interface Camera {
  x: number;
  y: number;
  zoom: number;
}

export class ClientScene {
  tick = 0;
  entities = new Map<number, EntitySnapshot>();
  camera: Camera = { x: 0, y: 0, zoom: 1 };
  words: TranscriptWord[] = [];
  diagram: DiagramState | null = null;
  rules: RuleEntry[] = [];
  findEntries: { id: number; labels: string[]; x: number; y: number }[] = [];
  errors: string[] = [];
  heldEntity: number | null = null;
  selectedDiagramNode: number | null = null;
  pendingStroke: number[][] | null = null;

  apply(frame: EngineFrame): void {
    switch (frame.type) {
      case "world_delta": {
        this.tick = frame.tick;
        this.entities = new Map(frame.entities.map((e) => [e.id, e]));
        this.camera = frame.camera;
        if (this.heldEntity !== null && !this.entities.has(this.heldEntity)) {
          this.heldEntity = null;
        }
        break;
      }
      case "transcript_state":
        this.words = frame.words;
        break;
      case "diagram_state":
        this.diagram = frame;
        break;
      case "rule_list":
        this.rules = frame.rules;
        break;
      case "find_results":
        this.findEntries = frame.entries;
        break;
      case "error":
        this.errors.push(frame.reason);
        break;
      default:
        break;
    }
  }

  entity(id: number): EntitySnapshot | undefined {
    return this.entities.get(id);
  }

  // world coordinates are y-up; the canvas is y-down
  worldToScreen(x: number, y: number, view: { width: number; height: number }):
      [number, number] {
    const z = this.camera.zoom;
    return [
      (x - this.camera.x) * z + view.width / 2,
      view.height / 2 - (y - this.camera.y) * z,
    ];
  }

  screenToWorld(sx: number, sy: number, view: { width: number; height: number }):
      [number, number] {
    const z = this.camera.zoom;
    return [
      (sx - view.width / 2) / z + this.camera.x,
      this.camera.y - (sy - view.height / 2) / z,
    ];
  }

  // static entities live in screen space and ignore the camera
  screenPosition(e: EntitySnapshot, view: { width: number; height: number }):
      [number, number] {
    if (e.static) {
      return [e.x + view.width / 2, view.height / 2 - e.y];
    }
    return this.worldToScreen(e.x, e.y, view);
  }

  hitTest(sx: number, sy: number, view: { width: number; height: number }):
      number | null {
    let best: number | null = null;
    for (const e of this.entities.values()) {
      if (!e.visible) continue;
      const [cx, cy] = this.screenPosition(e, view);
      const hw = (e.width / 2) * (e.static ? 1 : this.camera.zoom);
      const hh = (e.height / 2) * (e.static ? 1 : this.camera.zoom);
      if (sx >= cx - hw && sx <= cx + hw && sy >= cy - hh && sy <= cy + hh) {
        best = e.id;                 // later entities draw on top
      }
    }
    return best;
  }
}
