// Pure view builders: session state in, plain data / SVG markup out.
// Keeping these DOM-free makes them directly testable.

import type { Layout, Point } from "./layout.js";
import type { GraphJson, SessionState } from "./types.js";

export interface VertexView {
  name: string;
  x: number;
  y: number;
  frozen: boolean;
  clickable: boolean;
}

export interface EdgeView {
  from: Point;
  to: Point;
  label: string | null;
  lanes: number; // parallel strands for frozen multiplicities
}

export interface VariableRow {
  name: string;
  value: string;
  frozen: boolean;
}

export function vertexViews(state: SessionState, layout: Layout): VertexView[] {
  const out: VertexView[] = [];
  for (const name of state.exchangeable) {
    const p = layout.positions[name];
    out.push({ name, x: p.x, y: p.y, frozen: false, clickable: true });
  }
  for (const name of state.frozen) {
    const p = layout.positions[name];
    out.push({ name, x: p.x, y: p.y, frozen: true, clickable: false });
  }
  return out;
}

export function edgeViews(state: SessionState, layout: Layout): EdgeView[] {
  const out: EdgeView[] = [];
  for (const a of state.arrows.valued) {
    out.push({
      from: layout.positions[a.source],
      to: layout.positions[a.target],
      label: a.v[0] === 1 && a.v[1] === 1 ? null : `${a.v[0]},${a.v[1]}`,
      lanes: 1,
    });
  }
  for (const a of state.arrows.frozen) {
    out.push({
      from: layout.positions[a.source],
      to: layout.positions[a.target],
      label: null,
      lanes: a.mult,
    });
  }
  return out;
}

export function variableRows(state: SessionState): VariableRow[] {
  const rows: VariableRow[] = [];
  for (const name of state.exchangeable) {
    rows.push({ name, value: state.variables[name], frozen: false });
  }
  for (const name of state.frozen) {
    rows.push({ name, value: state.variables[name], frozen: true });
  }
  return rows;
}

function esc(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;").replace(/"/g, "&quot;");
}

function arrowLines(edge: EdgeView): string {
  const { from, to } = edge;
  const dx = to.x - from.x;
  const dy = to.y - from.y;
  const d = Math.max(1, Math.hypot(dx, dy));
  // normal offset for parallel strands
  const nx = -dy / d;
  const ny = dx / d;
  // stop short of the vertex glyphs
  const sx = from.x + (dx / d) * 18;
  const sy = from.y + (dy / d) * 18;
  const tx = to.x - (dx / d) * 22;
  const ty = to.y - (dy / d) * 22;
  const parts: string[] = [];
  for (let lane = 0; lane < edge.lanes; lane++) {
    const off = (lane - (edge.lanes - 1) / 2) * 6;
    parts.push(
      `<line x1="${(sx + nx * off).toFixed(1)}" y1="${(sy + ny * off).toFixed(1)}" ` +
        `x2="${(tx + nx * off).toFixed(1)}" y2="${(ty + ny * off).toFixed(1)}" ` +
        `class="arrow" marker-end="url(#arrowhead)" />`,
    );
  }
  if (edge.label) {
    const mx = (sx + tx) / 2 + nx * 12;
    const my = (sy + ty) / 2 + ny * 12;
    parts.push(
      `<text x="${mx.toFixed(1)}" y="${my.toFixed(1)}" class="edge-label">${esc(edge.label)}</text>`,
    );
  }
  return parts.join("\n");
}

export function quiverSvg(state: SessionState, layout: Layout): string {
  const pieces: string[] = [];
  pieces.push(
    `<svg viewBox="0 0 ${layout.width} ${layout.height}" xmlns="http://www.w3.org/2000/svg">`,
  );
  pieces.push(
    `<defs><marker id="arrowhead" markerWidth="8" markerHeight="8" refX="7" refY="4" orient="auto"><path d="M0,0 L8,4 L0,8 z" /></marker></defs>`,
  );
  for (const edge of edgeViews(state, layout)) {
    pieces.push(arrowLines(edge));
  }
  for (const v of vertexViews(state, layout)) {
    const title = v.frozen
      ? `<title>${esc(v.name)} is frozen and cannot be mutated</title>`
      : `<title>mutate at ${esc(v.name)}</title>`;
    if (v.frozen) {
      pieces.push(
        `<g class="vertex frozen" data-var="${esc(v.name)}">` +
          `<rect x="${(v.x - 22).toFixed(1)}" y="${(v.y - 14).toFixed(1)}" width="44" height="28" />` +
          `<text x="${v.x.toFixed(1)}" y="${(v.y + 4).toFixed(1)}">${esc(v.name)}</text>${title}</g>`,
      );
    } else {
      pieces.push(
        `<g class="vertex exchangeable" data-var="${esc(v.name)}">` +
          `<circle cx="${v.x.toFixed(1)}" cy="${v.y.toFixed(1)}" r="18" />` +
          `<text x="${v.x.toFixed(1)}" y="${(v.y + 4).toFixed(1)}">${esc(v.name)}</text>${title}</g>`,
      );
    }
  }
  pieces.push("</svg>");
  return pieces.join("\n");
}

export interface GraphRow {
  digest: string;
  variables: string;
  current: boolean;
}

export function graphRows(graph: GraphJson): GraphRow[] {
  return graph.nodes.map((node) => ({
    digest: node.digest,
    variables: node.variables.join(", "),
    current: Boolean(node.current),
  }));
}

export function graphSummary(graph: GraphJson): string {
  const pairs = new Set(
    graph.edges.map(([a, , b]) => (a < b ? `${a}|${b}` : `${b}|${a}`)),
  );
  const completeness = graph.complete ? "complete" : "partial";
  return `${graph.nodes.length} seeds, ${pairs.size} exchanges (${completeness})`;
}
