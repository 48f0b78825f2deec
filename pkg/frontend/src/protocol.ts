// Wire protocol frames exchanged with the engine. Mirrors the engine's
// JSON message schema; the client owns no authoritative state.

export interface EntitySnapshot {
  id: number;
  kind: "SKETCH" | "NUMBER" | "TEXT";
  x: number;
  y: number;
  angle: number;
  width: number;
  height: number;
  labels: string[];
  adjectives: string[];
  visible: boolean;
  static: boolean;
  value: number;
  text: string;
  stroke: number[][] | null;
}

export interface WorldDelta {
  type: "world_delta";
  tick: number;
  entities: EntitySnapshot[];
  camera: { x: number; y: number; zoom: number };
}

export interface TranscriptWord {
  id: number;
  text: string;
  selected: boolean;
}

export interface TranscriptState {
  type: "transcript_state";
  words: TranscriptWord[];
}

export interface DiagramBlock {
  word_id: number | null;
  text: string;
  kind: "noun" | "verb" | "preposition" | "marker";
  node_id: number | null;
  entities: number[];
  error: string | null;
  suggestions: string[];
}

export interface DiagramState {
  type: "diagram_state";
  staged: "STAGED" | "CONFIRMED" | "DISCARDED" | null;
  diagram: { blocks: DiagramBlock[]; errors: string[] } | null;
}

export interface RuleEntry {
  id: number;
  enabled: boolean;
  text: string;
}

export interface RuleList {
  type: "rule_list";
  rules: RuleEntry[];
}

export interface FindResults {
  type: "find_results";
  entries: { id: number; labels: string[]; adjectives: string[]; x: number; y: number }[];
}

export interface ActionList {
  type: "action_list";
  actions: { id: number; verb: string }[];
}

export interface ErrorFrame {
  type: "error";
  reason: string;
}

export interface AckFrame {
  type: "ack";
  entity?: number;
  enabled?: boolean;
}

export interface ConfirmedFrame {
  type: "confirmed";
  scripts: number[];
  rules: number[];
}

export type EngineFrame =
  | WorldDelta
  | TranscriptState
  | DiagramState
  | RuleList
  | FindResults
  | ActionList
  | ErrorFrame
  | AckFrame
  | ConfirmedFrame;

// client -> engine messages are plain objects with a type tag
export type ClientMessage = { type: string } & Record<string, unknown>;

export function strokeAdd(points: number[][], kind = "sketch"): ClientMessage {
  const bounds = strokeBounds(points);
  return {
    type: "stroke_add",
    x: bounds.x,
    y: bounds.y,
    width: bounds.width,
    height: bounds.height,
    kind,
    payload: points,
  };
}

export function strokeBounds(points: number[][]): {
  x: number; y: number; width: number; height: number;
} {
  if (points.length === 0) return { x: 0, y: 0, width: 1, height: 1 };
  let minX = points[0][0], maxX = points[0][0];
  let minY = points[0][1], maxY = points[0][1];
  for (const [px, py] of points) {
    minX = Math.min(minX, px);
    maxX = Math.max(maxX, px);
    minY = Math.min(minY, py);
    maxY = Math.max(maxY, py);
  }
  return {
    x: (minX + maxX) / 2,
    y: (minY + maxY) / 2,
    width: Math.max(1, maxX - minX),
    height: Math.max(1, maxY - minY),
  };
}
