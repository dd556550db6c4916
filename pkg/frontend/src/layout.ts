// Deterministic force-directed layout. Frozen vertices are pinned to
// the periphery circle; exchangeable vertices relax inside. Cosmetic
// only — nothing downstream depends on coordinates.

import type { SessionState } from "./types.js";

export interface Point {
  x: number;
  y: number;
}

export interface Layout {
  width: number;
  height: number;
  positions: Record<string, Point>;
}

const ITERATIONS = 150;

export function layoutQuiver(
  state: SessionState,
  width = 640,
  height = 440,
): Layout {
  const cx = width / 2;
  const cy = height / 2;
  const outer = Math.min(width, height) / 2 - 40;
  const inner = outer * 0.55;
  const positions: Record<string, Point> = {};

  state.frozen.forEach((name, i) => {
    const angle = (2 * Math.PI * i) / Math.max(1, state.frozen.length) - Math.PI / 2;
    positions[name] = {
      x: cx + outer * Math.cos(angle),
      y: cy + outer * Math.sin(angle),
    };
  });
  state.exchangeable.forEach((name, i) => {
    const angle =
      (2 * Math.PI * i) / Math.max(1, state.exchangeable.length) + Math.PI / 6;
    positions[name] = {
      x: cx + inner * Math.cos(angle),
      y: cy + inner * Math.sin(angle),
    };
  });

  const edges: [string, string][] = [];
  for (const a of state.arrows.valued) edges.push([a.source, a.target]);
  for (const a of state.arrows.frozen) edges.push([a.source, a.target]);
  const movable = new Set(state.exchangeable);
  const spring = 110;

  for (let step = 0; step < ITERATIONS; step++) {
    const force: Record<string, Point> = {};
    for (const name of movable) force[name] = { x: 0, y: 0 };
    const names = [...movable];
    for (let i = 0; i < names.length; i++) {
      for (let j = i + 1; j < names.length; j++) {
        const p = positions[names[i]];
        const q = positions[names[j]];
        const dx = p.x - q.x;
        const dy = p.y - q.y;
        const d2 = Math.max(25, dx * dx + dy * dy);
        const push = 16000 / d2;
        const d = Math.sqrt(d2);
        force[names[i]].x += (dx / d) * push;
        force[names[i]].y += (dy / d) * push;
        force[names[j]].x -= (dx / d) * push;
        force[names[j]].y -= (dy / d) * push;
      }
    }
    for (const [a, b] of edges) {
      const p = positions[a];
      const q = positions[b];
      const dx = q.x - p.x;
      const dy = q.y - p.y;
      const d = Math.max(5, Math.hypot(dx, dy));
      const pull = 0.02 * (d - spring);
      if (movable.has(a)) {
        force[a].x += (dx / d) * pull * d;
        force[a].y += (dy / d) * pull * d;
      }
      if (movable.has(b)) {
        force[b].x -= (dx / d) * pull * d;
        force[b].y -= (dy / d) * pull * d;
      }
    }
    const cool = 0.08 * (1 - step / ITERATIONS) + 0.01;
    for (const name of movable) {
      const p = positions[name];
      p.x = Math.min(width - 30, Math.max(30, p.x + force[name].x * cool));
      p.y = Math.min(height - 30, Math.max(30, p.y + force[name].y * cool));
    }
  }
  return { width, height, positions };
}
