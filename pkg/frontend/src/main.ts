import { App } from "./app.js";
import { EngineConnection, urlFromConfig } from "./connection.js";

const params = new URLSearchParams(window.location.search);
const connection = new EngineConnection((url) => new WebSocket(url));
connection.connect(urlFromConfig(params));

const byId = <T extends HTMLElement>(id: string): T =>
  document.getElementById(id) as T;

new App(connection, byId<HTMLCanvasElement>("canvas"), {
  transcript: byId("transcript"),
  diagram: byId("diagram"),
  rules: byId("rules"),
  find: byId("find"),
  errors: byId("errors"),
  speech: byId<HTMLInputElement>("speech"),
  findInput: byId<HTMLInputElement>("find-input"),
  actionButton: byId<HTMLButtonElement>("language-action"),
  discardButton: byId<HTMLButtonElement>("discard"),
});
