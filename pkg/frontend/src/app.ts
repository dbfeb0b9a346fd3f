/** DOM wiring: every panel re-renders from the latest API responses. */

import {
  ApiClient,
  ApiError,
  type BackendSpec,
  type NeighborhoodDoc,
  type ReachDoc,
  type SessionState,
} from "./api.js";
import {
  blockedView,
  layoutNeighborhood,
  renderView,
  type BlockedView,
  type ViewState,
} from "./viewmodel.js";

const client = new ApiClient("");

interface AppState {
  session: SessionState | null;
  window: string | null;
  neighborhood: NeighborhoodDoc | null;
  reach: ReachDoc | null;
  blocked: BlockedView | null;
  notice: string | null;
  exportText: string | null;
}

const state: AppState = {
  session: null,
  window: null,
  neighborhood: null,
  reach: null,
  blocked: null,
  notice: null,
  exportText: null,
};

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

const SVG_NS = "http://www.w3.org/2000/svg";

function svgChild(parent: Element, tag: string, attrs: Record<string, string>): Element {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  parent.appendChild(node);
  return node;
}

function arrowMarker(svg: Element, id: string): void {
  const defs = svgChild(svg, "defs", {});
  const marker = svgChild(defs, "marker", {
    id,
    viewBox: "0 0 10 10",
    refX: "9",
    refY: "5",
    markerWidth: "7",
    markerHeight: "7",
    orient: "auto-start-reverse",
  });
  svgChild(marker, "path", { d: "M 0 0 L 10 5 L 0 10 z", fill: "#444" });
}

function shortLabel(literal: string): string {
  return literal.length > 14 ? `${literal.slice(0, 13)}…` : literal;
}

function renderQuiver(view: ViewState): void {
  const svg = el<HTMLElement>("quiver");
  svg.replaceChildren();
  arrowMarker(svg, "quiver-arrow");
  const n = view.scene.elements.length;
  const radius = 95;
  const points = view.scene.elements.map((_, i) => {
    const angle = (2 * Math.PI * i) / n - Math.PI / 2;
    return { x: radius * Math.cos(angle), y: radius * Math.sin(angle) };
  });
  // count parallel arrows so doubled edges render as distinct curves
  const seen = new Map<string, number>();
  for (const arrow of view.scene.arrows) {
    const pairKey = `${arrow.from}->${arrow.to}`;
    const k = seen.get(pairKey) ?? 0;
    seen.set(pairKey, k + 1);
    const a = points[arrow.from];
    const b = points[arrow.to];
    const mx = (a.x + b.x) / 2;
    const my = (a.y + b.y) / 2;
    const dx = b.x - a.x;
    const dy = b.y - a.y;
    const len = Math.hypot(dx, dy) || 1;
    const bend = k === 0 ? 0 : (k % 2 === 1 ? 1 : -1) * Math.ceil(k / 2) * 18;
    const cx = mx - (dy / len) * bend;
    const cy = my + (dx / len) * bend;
    // shorten toward the target so the arrowhead clears the node circle
    const tx = b.x - (dx / len) * 14;
    const ty = b.y - (dy / len) * 14;
    svgChild(svg, "path", {
      d: `M ${a.x} ${a.y} Q ${cx} ${cy} ${tx} ${ty}`,
      fill: "none",
      stroke: "#444",
      "stroke-width": "1.4",
      "marker-end": "url(#quiver-arrow)",
    });
  }
  points.forEach((p, i) => {
    svgChild(svg, "circle", { cx: String(p.x), cy: String(p.y), r: "11", fill: "#e8eef8", stroke: "#557" });
    const text = svgChild(svg, "text", {
      x: String(p.x),
      y: String(p.y + 3),
      "text-anchor": "middle",
    });
    text.textContent = String(i);
    const label = svgChild(svg, "text", {
      x: String(p.x * 1.24),
      y: String(p.y * 1.24 + 3),
      "text-anchor": "middle",
      fill: "#667",
    });
    label.textContent = shortLabel(view.scene.elements[i]);
  });
}

function renderNeighborhood(): void {
  const panel = el<HTMLElement>("neighborhood-svg");
  const list = el<HTMLUListElement>("neighborhood-list");
  panel.replaceChildren();
  list.replaceChildren();
  const doc = state.neighborhood;
  if (!doc) return;
  const laid = layoutNeighborhood(doc.nodes, doc.center, doc.frontier, 110);
  const position = new Map(laid.map((p) => [p.key, p]));
  for (const edge of doc.edges) {
    const a = position.get(edge.a);
    const b = position.get(edge.b);
    if (!a || !b) continue;
    svgChild(panel, "line", {
      x1: String(a.x),
      y1: String(a.y),
      x2: String(b.x),
      y2: String(b.y),
      stroke: "#aab",
      "stroke-width": "1",
    });
  }
  for (const node of laid) {
    svgChild(panel, "circle", {
      cx: String(node.x),
      cy: String(node.y),
      r: node.isCenter ? "8" : "5",
      fill: node.isCenter ? "#2b6cb0" : node.isFrontier ? "#fff" : "#9bb8d8",
      stroke: "#456",
    });
  }
  for (const node of doc.nodes) {
    const item = document.createElement("li");
    const mark = node.key === doc.center ? "* " : "  ";
    item.textContent = `${mark}${node.key}`;
    list.appendChild(item);
  }
}

function renderReach(): void {
  const table = el<HTMLTableElement>("reach-table");
  table.replaceChildren();
  const doc = state.reach;
  if (!doc) return;
  for (const link of doc.links) {
    const row = table.insertRow();
    row.insertCell().textContent = link.a;
    row.insertCell().textContent = link.b;
    row.insertCell().textContent = `ext1 = ${link.ext1[0]}, ${link.ext1[1]}`;
  }
}

function render(): void {
  const banner = el<HTMLElement>("error-banner");
  const widenButton = el<HTMLButtonElement>("widen-button");
  if (state.blocked || state.notice) {
    banner.hidden = false;
    el<HTMLElement>("error-message").textContent =
      state.blocked ? state.blocked.message : state.notice ?? "";
    widenButton.hidden = !state.blocked;
    if (state.blocked) {
      widenButton.textContent = `widen to ${state.blocked.retryWindow} and retry`;
    }
  } else {
    banner.hidden = true;
  }

  const session = state.session;
  for (const id of ["session-panel", "quiver-panel", "neighborhood-panel", "reach-panel", "export-panel"]) {
    el<HTMLElement>(id).hidden = session === null;
  }
  if (!session) return;

  const view = renderView(session);
  el<HTMLElement>("session-key").textContent = view.scene.key;
  el<HTMLElement>("history-length").textContent = `${view.historyLength} steps`;
  el<HTMLElement>("last-move").textContent = view.lastMove ?? "no moves yet";

  const holder = el<HTMLDivElement>("elements");
  holder.replaceChildren();
  const justAdded = session.history[session.history.length - 1]?.into;
  view.scene.elements.forEach((literal, index) => {
    const button = document.createElement("button");
    button.textContent = literal;
    if (literal === justAdded) button.classList.add("just-added");
    button.addEventListener("click", () => void clickSummand(index));
    holder.appendChild(button);
  });

  renderQuiver(view);
  renderNeighborhood();
  renderReach();
  el<HTMLPreElement>("export-output").textContent = state.exportText ?? "";
}

function showError(err: unknown): void {
  state.blocked = null;
  if (err instanceof ApiError && err.detail.error === "complement_not_in_window") {
    state.blocked = blockedView(err.detail);
  } else if (err instanceof ApiError) {
    state.notice = `${err.detail.error}: ${String(err.detail.detail ?? "")}`;
  } else {
    state.notice = String(err);
  }
  render();
}

async function createSession(): Promise<void> {
  const kind = el<HTMLSelectElement>("backend-kind").value as BackendSpec["kind"];
  const arg = el<HTMLInputElement>("backend-arg").value.trim();
  const backend: BackendSpec =
    kind === "coh" ? { kind, weights: arg } : { kind, quiver: arg };
  try {
    state.session = await client.createSession(backend, state.window ?? undefined);
    state.neighborhood = null;
    state.reach = null;
    state.blocked = null;
    state.notice = null;
    state.exportText = null;
    render();
  } catch (err) {
    showError(err);
  }
}

async function clickSummand(index: number): Promise<void> {
  if (!state.session) return;
  try {
    state.session = await client.mutate(state.session.id, index);
    state.blocked = null;
    state.notice = null;
    state.neighborhood = null;
    render();
  } catch (err) {
    showError(err);
  }
}

async function widenAndRetry(): Promise<void> {
  const blocked = state.blocked;
  const session = state.session;
  if (!blocked || !session) return;
  try {
    // new session over the wider window, replaying the walk so far
    let fresh = await client.createSession(session.backend, blocked.retryWindow);
    for (const step of session.history) {
      fresh = await client.mutate(fresh.id, step.index);
    }
    state.session = fresh;
    state.window = blocked.retryWindow;
    if (blocked.index !== null) {
      state.session = await client.mutate(fresh.id, blocked.index);
    }
    state.blocked = null;
    state.neighborhood = null;
    render();
  } catch (err) {
    showError(err);
  }
}

async function expandNeighborhood(): Promise<void> {
  if (!state.session) return;
  const depth = Number(el<HTMLInputElement>("depth-input").value) || 1;
  try {
    state.neighborhood = await client.neighborhood(state.session.id, depth);
    render();
  } catch (err) {
    showError(err);
  }
}

async function runReach(): Promise<void> {
  if (!state.session) return;
  const m = el<HTMLInputElement>("reach-m").value.trim();
  const n = el<HTMLInputElement>("reach-n").value.trim();
  try {
    state.reach = await client.reach(state.session.id, m, n);
    render();
  } catch (err) {
    showError(err);
  }
}

async function undo(): Promise<void> {
  if (!state.session) return;
  try {
    state.session = await client.undo(state.session.id);
    state.neighborhood = null;
    render();
  } catch (err) {
    showError(err);
  }
}

async function exportView(): Promise<void> {
  if (!state.session) return;
  const format = el<HTMLSelectElement>("export-format").value as "json" | "dot";
  try {
    state.exportText = await client.exportView(state.session.id, format);
    render();
  } catch (err) {
    showError(err);
  }
}

function main(): void {
  el<HTMLFormElement>("create-form").addEventListener("submit", (event) => {
    event.preventDefault();
    void createSession();
  });
  el<HTMLSelectElement>("backend-kind").addEventListener("change", () => {
    const input = el<HTMLInputElement>("backend-arg");
    input.value = el<HTMLSelectElement>("backend-kind").value === "coh" ? "(2,3)" : "A3";
  });
  el<HTMLButtonElement>("undo-button").addEventListener("click", () => void undo());
  el<HTMLButtonElement>("widen-button").addEventListener("click", () => void widenAndRetry());
  el<HTMLButtonElement>("dismiss-button").addEventListener("click", () => {
    state.blocked = null;
    state.notice = null;
    render();
  });
  el<HTMLButtonElement>("expand-button").addEventListener("click", () => void expandNeighborhood());
  el<HTMLButtonElement>("reach-button").addEventListener("click", () => void runReach());
  el<HTMLButtonElement>("export-button").addEventListener("click", () => void exportView());
}

main();
