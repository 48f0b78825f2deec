// Engine connection: a thin typed wrapper over a WebSocket carrying
// JSON frames. The socket implementation is injected so the same code
// runs in the browser and under node tests.

import type { ClientMessage, EngineFrame } from "./protocol.js";

export interface SocketLike {
  send(data: string): void;
  close(): void;
  addEventListener(type: "open" | "message" | "close" | "error",
                   handler: (event: any) => void): void;
}

export type SocketFactory = (url: string) => SocketLike;

export class EngineConnection {
  private socket: SocketLike | null = null;
  private listeners: ((frame: EngineFrame) => void)[] = [];
  private openListeners: (() => void)[] = [];
  sent: ClientMessage[] = [];
  connected = false;

  constructor(private makeSocket: SocketFactory) {}

  connect(url: string): void {
    const socket = this.makeSocket(url);
    this.socket = socket;
    socket.addEventListener("open", () => {
      this.connected = true;
      for (const fn of this.openListeners) fn();
    });
    socket.addEventListener("message", (event) => {
      let frame: EngineFrame;
      try {
        frame = JSON.parse(
          typeof event.data === "string" ? event.data : String(event.data));
      } catch {
        return;
      }
      for (const fn of this.listeners) fn(frame);
    });
    socket.addEventListener("close", () => {
      this.connected = false;
    });
  }

  onOpen(fn: () => void): void {
    this.openListeners.push(fn);
    if (this.connected) fn();
  }

  onFrame(fn: (frame: EngineFrame) => void): void {
    this.listeners.push(fn);
  }

  send(message: ClientMessage): void {
    this.sent.push(message);
    this.socket?.send(JSON.stringify(message));
  }

  close(): void {
    this.socket?.close();
  }
}

export function urlFromConfig(params: URLSearchParams): string {
  const host = params.get("host") ?? "127.0.0.1";
  const port = params.get("port") ?? "8765";
  return `ws://${host}:${port}/`;
}
