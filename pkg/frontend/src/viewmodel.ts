/** Pure view-model functions: server JSON in, renderable state out.
 *
 * Nothing here computes algebra; every value is a reformatting of an API
 * response, so the view stays a pure function of the last server answers.
 */

import type { ErrorDetail, SessionState } from "./api.js";

export interface Arrow {
  from: number;
  to: number;
}

/** One arrow per unit of each positive off-diagonal matrix entry. */
export function arrowsFromMatrix(matrix: number[][]): Arrow[] {
  const arrows: Arrow[] = [];
  for (let i = 0; i < matrix.length; i++) {
    for (let j = 0; j < matrix.length; j++) {
      if (i === j) continue;
      for (let k = 0; k < matrix[i][j]; k++) arrows.push({ from: i, to: j });
    }
  }
  return arrows;
}

/** The mathematical content of the screen: tilting set plus its quiver. */
export interface Scene {
  key: string;
  elements: string[];
  arrows: Arrow[];
}

export interface ViewState {
  id: string;
  backend: string;
  scene: Scene;
  historyLength: number;
  lastMove: string | null;
}

export function formatStep(step: { index: number; out: string; into: string }): string {
  return `[${step.index}] ${step.out} -> ${step.into}`;
}

export function renderView(state: SessionState): ViewState {
  const last = state.history[state.history.length - 1];
  return {
    id: state.id,
    backend: Object.values(state.backend).join(" "),
    scene: {
      key: state.key,
      elements: [...state.elements],
      arrows: arrowsFromMatrix(state.matrix),
    },
    historyLength: state.history.length,
    lastMove: last ? formatStep(last) : null,
  };
}

export function sceneEquals(a: Scene, b: Scene): boolean {
  return (
    a.key === b.key &&
    a.elements.length === b.elements.length &&
    a.elements.every((e, i) => e === b.elements[i]) &&
    a.arrows.length === b.arrows.length &&
    a.arrows.every((r, i) => r.from === b.arrows[i].from && r.to === b.arrows[i].to)
  );
}

/** Blocked-exchange banner: the message plus what the widen control would try. */
export interface BlockedView {
  message: string;
  index: number | null;
  window: string | null;
  retryWindow: string;
}

export function widenedWindow(window: string | null): string {
  const fallback = "-16:17";
  if (!window) return fallback;
  const match = window.match(/^(-?\d+):(-?\d+)$/);
  if (!match) return fallback;
  return `${2 * Number(match[1])}:${2 * Number(match[2])}`;
}

export function blockedView(detail: ErrorDetail): BlockedView {
  const window = typeof detail.window === "string" ? detail.window : null;
  return {
    message: "complement outside window — widen?",
    index: typeof detail.index === "number" ? detail.index : null,
    window,
    retryWindow: widenedWindow(window),
  };
}

/** Next click for a non-backtracking walk: avoid the summand just added. */
export function nextWalkIndex(elements: string[], lastInto: string | null): number {
  if (lastInto === null) return 0;
  for (let i = 0; i < elements.length; i++) {
    if (elements[i] !== lastInto) return i;
  }
  return 0;
}

/** Deterministic circular layout for the neighborhood graph. */
export interface LaidOutNode {
  key: string;
  x: number;
  y: number;
  isCenter: boolean;
  isFrontier: boolean;
}

export function layoutNeighborhood(
  nodes: { key: string }[],
  center: string,
  frontier: string[],
  radius = 1,
): LaidOutNode[] {
  const keys = nodes.map((n) => n.key).sort();
  const frontierSet = new Set(frontier);
  return keys.map((key, i) => {
    const angle = (2 * Math.PI * i) / keys.length - Math.PI / 2;
    return {
      key,
      x: radius * Math.cos(angle),
      y: radius * Math.sin(angle),
      isCenter: key === center,
      isFrontier: frontierSet.has(key),
    };
  });
}
