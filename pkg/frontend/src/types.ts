export interface SeedJson {
  exchangeable: string[];
  frozen: string[];
  matrix: number[][];
  values?: Record<string, string>;
}

export interface ValuedArrow {
  source: string;
  target: string;
  v: [number, number];
}

export interface FrozenArrow {
  source: string;
  target: string;
  mult: number;
}

export interface HistoryStep {
  variable: string;
  digest: string;
}

export interface SessionState {
  session: string;
  seed: SeedJson;
  digest: string;
  quiver_dot: string;
  arrows: { valued: ValuedArrow[]; frozen: FrozenArrow[] };
  exchangeable: string[];
  frozen: string[];
  variables: Record<string, string>;
  history: HistoryStep[];
}

export interface GraphNode {
  digest: string;
  variables: string[];
  current?: boolean;
}

export interface GraphJson {
  nodes: GraphNode[];
  edges: [string, string, string][];
  complete: boolean;
  depth_reached: number;
}
