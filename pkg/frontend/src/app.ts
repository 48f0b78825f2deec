// Canvas application: rendering plus panel wiring. All state shown
// here derives from engine frames held in the ClientScene.

import { EngineConnection } from "./connection.js";
import { GestureController, LanguageActionButton } from "./gestures.js";
import { ClientScene } from "./scene.js";
import type { EntitySnapshot } from "./protocol.js";

export class App {
  private scene = new ClientScene();
  private gestures: GestureController;
  private actionButton: LanguageActionButton;
  private ctx: CanvasRenderingContext2D;
  private wordDragStart: number | null = null;

  constructor(private connection: EngineConnection,
              private canvas: HTMLCanvasElement,
              private panels: {
                transcript: HTMLElement;
                diagram: HTMLElement;
                rules: HTMLElement;
                find: HTMLElement;
                errors: HTMLElement;
                speech: HTMLInputElement;
                findInput: HTMLInputElement;
                actionButton: HTMLButtonElement;
                discardButton: HTMLButtonElement;
              }) {
    this.ctx = canvas.getContext("2d")!;
    const view = { width: canvas.width, height: canvas.height };
    this.gestures = new GestureController(this.scene, connection, view);
    this.actionButton = new LanguageActionButton(connection, this.scene);
    connection.onFrame((frame) => {
      this.scene.apply(frame);
      if (frame.type !== "world_delta") this.renderPanels();
    });
    this.bindEvents();
    const draw = () => {
      this.renderCanvas();
      requestAnimationFrame(draw);
    };
    requestAnimationFrame(draw);
  }

  private bindEvents(): void {
    const pos = (ev: MouseEvent): [number, number] => {
      const rect = this.canvas.getBoundingClientRect();
      return [ev.clientX - rect.left, ev.clientY - rect.top];
    };
    this.canvas.addEventListener("mousedown", (ev) => {
      const [x, y] = pos(ev);
      this.gestures.pointerDown(x, y, ev.altKey);
    });
    this.canvas.addEventListener("mousemove", (ev) => {
      if (ev.buttons) {
        const [x, y] = pos(ev);
        this.gestures.pointerMove(x, y);
      }
    });
    this.canvas.addEventListener("mouseup", () => this.gestures.pointerUp());
    this.canvas.addEventListener("dblclick", (ev) => {
      const [x, y] = pos(ev);
      this.gestures.doubleClick(x, y);
    });
    this.panels.actionButton.addEventListener("click", () =>
      this.actionButton.tap());
    this.panels.discardButton.addEventListener("click", () =>
      this.actionButton.discard());
    this.panels.speech.addEventListener("keydown", (ev) => {
      if (ev.key === "Enter" && this.panels.speech.value.trim()) {
        this.connection.send({
          type: "speech_text", text: this.panels.speech.value.trim(),
        });
        this.panels.speech.value = "";
      }
    });
    this.panels.findInput.addEventListener("keydown", (ev) => {
      if (ev.key === "Enter") {
        const term = this.panels.findInput.value.trim();
        if (term === "rules") {
          this.connection.send({ type: "list_rules" });
        } else if (term) {
          this.connection.send({ type: "find", noun: term });
        }
      }
    });
    const speechApi = (window as any).webkitSpeechRecognition
      ?? (window as any).SpeechRecognition;
    if (speechApi) {
      const recognizer = new speechApi();
      recognizer.continuous = true;
      recognizer.onresult = (ev: any) => {
        const result = ev.results[ev.results.length - 1];
        if (result.isFinal) {
          this.connection.send({
            type: "speech_text", text: result[0].transcript.trim(),
          });
        }
      };
      this.panels.speech.addEventListener("focus", () => recognizer.start());
    }
  }

  // -- canvas ---------------------------------------------------------------

  private renderCanvas(): void {
    const { ctx, canvas, scene } = this;
    const view = { width: canvas.width, height: canvas.height };
    ctx.clearRect(0, 0, canvas.width, canvas.height);
    ctx.fillStyle = "#fafaf7";
    ctx.fillRect(0, 0, canvas.width, canvas.height);
    for (const e of scene.entities.values()) {
      if (!e.visible) continue;
      this.renderEntity(e, view);
    }
    if (scene.pendingStroke) {
      ctx.strokeStyle = "#333";
      ctx.beginPath();
      scene.pendingStroke.forEach(([wx, wy], i) => {
        const [sx, sy] = scene.worldToScreen(wx, wy, view);
        if (i === 0) ctx.moveTo(sx, sy);
        else ctx.lineTo(sx, sy);
      });
      ctx.stroke();
    }
  }

  private renderEntity(e: EntitySnapshot,
                       view: { width: number; height: number }): void {
    const { ctx, scene } = this;
    const [cx, cy] = scene.screenPosition(e, view);
    const z = e.static ? 1 : scene.camera.zoom;
    const w = e.width * z;
    const h = e.height * z;
    ctx.save();
    ctx.translate(cx, cy);
    ctx.rotate((-e.angle * Math.PI) / 180);
    if (e.id === scene.heldEntity) {
      ctx.strokeStyle = "#d97706";
      ctx.lineWidth = 3;
      ctx.strokeRect(-w / 2 - 4, -h / 2 - 4, w + 8, h + 8);
      ctx.lineWidth = 1;
    }
    if (Array.isArray(e.stroke) && e.stroke.length > 1) {
      ctx.strokeStyle = "#1f2937";
      ctx.beginPath();
      e.stroke.forEach(([wx, wy], i) => {
        const px = (wx - e.x) * z;
        const py = -(wy - e.y) * z;
        if (i === 0) ctx.moveTo(px, py);
        else ctx.lineTo(px, py);
      });
      ctx.stroke();
    } else if (e.kind === "NUMBER") {
      ctx.fillStyle = "#1d4ed8";
      ctx.font = "16px sans-serif";
      ctx.textAlign = "center";
      ctx.fillText(e.value.toFixed(2), 0, 5);
      ctx.strokeStyle = "#94a3b8";
      ctx.strokeRect(-w / 2, -h / 2, w, h);
    } else if (e.kind === "TEXT") {
      ctx.fillStyle = "#374151";
      ctx.font = "14px sans-serif";
      ctx.textAlign = "center";
      ctx.fillText(e.text, 0, 5);
    } else {
      ctx.strokeStyle = "#1f2937";
      ctx.strokeRect(-w / 2, -h / 2, w, h);
    }
    ctx.restore();
    ctx.fillStyle = "#6b7280";
    ctx.font = "11px sans-serif";
    ctx.textAlign = "center";
    const tag = [...e.labels, ...e.adjectives].join(" ");
    if (tag) ctx.fillText(tag, cx, cy + h / 2 + 12);
  }

  // -- panels --------------------------------------------------------------------

  private renderPanels(): void {
    this.renderTranscript();
    this.renderDiagram();
    this.renderRules();
    this.renderFind();
    const errs = this.scene.errors.slice(-3);
    this.panels.errors.textContent = errs.join(" | ");
  }

  private renderTranscript(): void {
    const panel = this.panels.transcript;
    panel.textContent = "";
    this.scene.words.forEach((word, index) => {
      const span = document.createElement("span");
      span.textContent = word.text + " ";
      span.className = word.selected ? "word selected" : "word";
      span.addEventListener("mousedown", () => {
        this.wordDragStart = index;
      });
      span.addEventListener("mouseup", () => {
        if (this.wordDragStart === null) return;
        const [a, b] = [Math.min(this.wordDragStart, index),
                        Math.max(this.wordDragStart, index)];
        if (a === b && this.scene.heldEntity !== null) {
          this.gestures.wordTapped(word.id);
        } else {
          this.gestures.selectWordRange(a, b + 1, !word.selected);
        }
        this.wordDragStart = null;
      });
      panel.appendChild(span);
    });
  }

  private renderDiagram(): void {
    const panel = this.panels.diagram;
    panel.textContent = "";
    const diagram = this.scene.diagram?.diagram;
    if (!diagram) return;
    for (const block of diagram.blocks) {
      const div = document.createElement("div");
      div.className = `block ${block.kind}` +
        (block.error ? " error" : "") +
        (block.node_id === this.scene.selectedDiagramNode ? " picked" : "");
      div.textContent = block.text;
      if (block.kind === "noun" && block.node_id !== null) {
        const nodeId = block.node_id;
        div.addEventListener("click", () =>
          this.gestures.diagramNounTapped(nodeId));
        for (const eid of block.entities) {
          const proxy = document.createElement("span");
          proxy.className = "proxy";
          proxy.textContent = `#${eid}`;
          proxy.addEventListener("click", (ev) => {
            ev.stopPropagation();
            if (ev.altKey) {
              this.gestures.diagramProxyAltTapped(nodeId, eid);
            } else {
              const ent = this.scene.entity(eid);
              if (ent) this.connection.send({ type: "warp_to", entity: eid });
            }
          });
          div.appendChild(proxy);
        }
      }
      if (block.suggestions.length) {
        for (const alt of block.suggestions) {
          const pick = document.createElement("button");
          pick.textContent = alt;
          pick.addEventListener("click", () => {
            this.connection.send({
              type: "substitute_verb", unknown: block.text, replacement: alt,
            });
          });
          div.appendChild(pick);
        }
      }
      panel.appendChild(div);
    }
    if (diagram.errors.length) {
      const div = document.createElement("div");
      div.className = "diagram-errors";
      div.textContent = diagram.errors.join("; ");
      panel.appendChild(div);
    }
  }

  private renderRules(): void {
    const panel = this.panels.rules;
    panel.textContent = "";
    for (const rule of this.scene.rules) {
      const div = document.createElement("div");
      div.className = rule.enabled ? "rule" : "rule off";
      div.textContent = rule.text;
      div.addEventListener("click", () =>
        this.connection.send({ type: "toggle_rule", rule: rule.id }));
      panel.appendChild(div);
    }
  }

  private renderFind(): void {
    const panel = this.panels.find;
    panel.textContent = "";
    for (const entry of this.scene.findEntries) {
      const div = document.createElement("div");
      div.className = "find-entry";
      div.textContent = `#${entry.id} ${entry.labels.join(" ")}`;
      div.addEventListener("click", (ev) => {
        if (ev.altKey) {
          this.connection.send({ type: "delete", entity: entry.id });
        } else {
          this.connection.send({ type: "warp_to", entity: entry.id });
        }
      });
      const copy = document.createElement("button");
      copy.textContent = "copy";
      copy.addEventListener("click", (ev) => {
        ev.stopPropagation();
        this.connection.send({ type: "copy", entity: entry.id });
      });
      div.appendChild(copy);
      panel.appendChild(div);
    }
  }
}
