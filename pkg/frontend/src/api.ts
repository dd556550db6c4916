// Thin client of the clusterkit HTTP API. All mathematics happens on
// the server; this module only moves JSON.

import type { GraphJson, SeedJson, SessionState } from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    readonly detail: string,
  ) {
    super(`${code}: ${detail}`);
    this.name = "ApiError";
  }
}

export type FetchLike = (
  input: string,
  init?: RequestInit,
) => Promise<Response>;

const defaultFetch: FetchLike = (input, init) => fetch(input, init);

export class Client {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = defaultFetch,
  ) {}

  private async request<T>(
    method: string,
    path: string,
    body?: unknown,
  ): Promise<T> {
    const init: RequestInit = { method };
    if (body !== undefined) {
      init.headers = { "Content-Type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, init);
    const payload = await response.json().catch(() => null);
    if (!response.ok) {
      const code =
        payload && typeof payload.error === "string"
          ? payload.error
          : `http_${response.status}`;
      const detail =
        payload && typeof payload.detail === "string"
          ? payload.detail
          : response.statusText;
      throw new ApiError(response.status, code, detail);
    }
    return payload as T;
  }

  createSession(seed: SeedJson): Promise<SessionState> {
    return this.request("POST", "/sessions", seed);
  }

  getSession(id: string): Promise<SessionState> {
    return this.request("GET", `/sessions/${id}`);
  }

  mutate(id: string, variable: string): Promise<SessionState> {
    return this.request("POST", `/sessions/${id}/mutate`, { variable });
  }

  undo(id: string): Promise<SessionState> {
    return this.request("POST", `/sessions/${id}/undo`);
  }

  graph(id: string, budget = 2): Promise<GraphJson> {
    return this.request("GET", `/sessions/${id}/graph?budget=${budget}`);
  }
}
