// View state: the latest server payload plus UI bookkeeping. The view
// is always rebuilt from the server's answer, never computed locally.

import type { GraphJson, SeedJson, SessionState } from "./types.js";

export interface ViewState {
  state: SessionState | null;
  graph: GraphJson | null;
  pending: boolean;
  error: string | null;
}

export const initialView: ViewState = {
  state: null,
  graph: null,
  pending: false,
  error: null,
};

export function withPending(view: ViewState): ViewState {
  return { ...view, pending: true, error: null };
}

export function withServerState(
  view: ViewState,
  state: SessionState,
): ViewState {
  // a new seed state invalidates the previously fetched neighborhood
  const graph = view.state && view.state.digest === state.digest ? view.graph : null;
  return { state, graph, pending: false, error: null };
}

export function withGraph(view: ViewState, graph: GraphJson): ViewState {
  return { ...view, graph, pending: false, error: null };
}

export function withError(view: ViewState, message: string): ViewState {
  return { ...view, pending: false, error: message };
}

export function isClickable(state: SessionState, name: string): boolean {
  return state.exchangeable.includes(name);
}

/** Canonical export of the current seed; re-importing yields the same
 * session state (the server's seed JSON is key-order insensitive). */
export function exportSeed(state: SessionState): string {
  const seed: SeedJson = state.seed;
  const ordered: SeedJson = {
    exchangeable: seed.exchangeable,
    frozen: seed.frozen,
    matrix: seed.matrix,
  };
  if (seed.values) {
    ordered.values = seed.values;
  }
  return JSON.stringify(ordered, null, 2) + "\n";
}

export function breadcrumb(state: SessionState): string[] {
  return state.history.map((step) => step.variable);
}
