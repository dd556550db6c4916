// DOM wiring: one in-flight request at a time, every view rebuilt from
// the server's latest answer.

import { ApiError, Client } from "./api.js";
import { layoutQuiver } from "./layout.js";
import {
  breadcrumb,
  exportSeed,
  initialView,
  isClickable,
  withError,
  withGraph,
  withPending,
  withServerState,
  type ViewState,
} from "./state.js";
import { graphRows, graphSummary, quiverSvg, variableRows } from "./render.js";

const EXAMPLE_SEED = `{
  "exchangeable": ["x1", "x2"],
  "frozen": ["x3", "x4"],
  "matrix": [[0, 1], [-1, 0], [0, -1], [0, 0]]
}`;

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

let view: ViewState = initialView;
let client: Client | null = null;

function setView(next: ViewState): void {
  view = next;
  render();
}

function render(): void {
  const status = el<HTMLElement>("status");
  status.textContent = view.pending
    ? "working..."
    : view.error
      ? view.error
      : view.state
        ? `session ${view.state.session}`
        : "paste a seed and load it";
  status.classList.toggle("error", Boolean(view.error));

  const quiver = el<HTMLElement>("quiver");
  const table = el<HTMLTableSectionElement>("variables");
  const crumbs = el<HTMLElement>("breadcrumb");
  const undo = el<HTMLButtonElement>("undo");
  const exportBtn = el<HTMLButtonElement>("export");
  const refresh = el<HTMLButtonElement>("refresh-graph");

  if (!view.state) {
    quiver.innerHTML = "";
    table.innerHTML = "";
    crumbs.textContent = "";
    undo.disabled = exportBtn.disabled = refresh.disabled = true;
    return;
  }
  const state = view.state;
  quiver.innerHTML = quiverSvg(state, layoutQuiver(state));
  table.innerHTML = variableRows(state)
    .map(
      (row) =>
        `<tr class="${row.frozen ? "frozen" : "exchangeable"}">` +
        `<td>${row.name}</td><td><code>${row.value}</code></td>` +
        `<td>${row.frozen ? "frozen" : "exchangeable"}</td></tr>`,
    )
    .join("");
  crumbs.textContent = breadcrumb(state).join(" → ") || "(initial seed)";
  undo.disabled = view.pending || state.history.length === 0;
  exportBtn.disabled = view.pending;
  refresh.disabled = view.pending;

  const graphPanel = el<HTMLElement>("graph");
  if (view.graph) {
    const rows = graphRows(view.graph)
      .map(
        (row) =>
          `<li class="${row.current ? "current" : ""}"><code>${row.digest}</code> ${row.variables}</li>`,
      )
      .join("");
    graphPanel.innerHTML = `<p>${graphSummary(view.graph)}</p><ul>${rows}</ul>`;
  } else {
    graphPanel.innerHTML = "<p>no neighborhood loaded</p>";
  }
}

async function run(task: () => Promise<ViewState>): Promise<void> {
  if (view.pending) return; // one request in flight at a time
  setView(withPending(view));
  try {
    setView(await task());
  } catch (err) {
    const message =
      err instanceof ApiError ? `${err.code}: ${err.detail}` : String(err);
    setView(withError(view, message));
  }
}

function currentClient(): Client {
  const base = el<HTMLInputElement>("api-base").value.replace(/\/$/, "");
  if (!client || base !== (client as unknown as { baseUrl: string }).baseUrl) {
    client = new Client(base);
  }
  return client;
}

function loadSeed(text: string): void {
  void run(async () => {
    const seed = JSON.parse(text);
    const state = await currentClient().createSession(seed);
    return withServerState(initialView, state);
  });
}

function wire(): void {
  el<HTMLTextAreaElement>("seed-input").value = EXAMPLE_SEED;

  el<HTMLButtonElement>("load").addEventListener("click", () => {
    loadSeed(el<HTMLTextAreaElement>("seed-input").value);
  });

  el<HTMLElement>("quiver").addEventListener("click", (event) => {
    const target = (event.target as HTMLElement).closest("[data-var]");
    if (!target || !view.state) return;
    const name = target.getAttribute("data-var");
    if (!name || !isClickable(view.state, name)) return; // frozen: no-op
    const sid = view.state.session;
    void run(async () =>
      withServerState(view, await currentClient().mutate(sid, name)),
    );
  });

  el<HTMLButtonElement>("undo").addEventListener("click", () => {
    if (!view.state) return;
    const sid = view.state.session;
    void run(async () =>
      withServerState(view, await currentClient().undo(sid)),
    );
  });

  el<HTMLButtonElement>("export").addEventListener("click", () => {
    if (!view.state) return;
    const blob = new Blob([exportSeed(view.state)], {
      type: "application/json",
    });
    const anchor = document.createElement("a");
    anchor.href = URL.createObjectURL(blob);
    anchor.download = "seed.json";
    anchor.click();
    URL.revokeObjectURL(anchor.href);
  });

  el<HTMLButtonElement>("export-dot").addEventListener("click", () => {
    if (!view.state) return;
    const blob = new Blob([view.state.quiver_dot], { type: "text/plain" });
    const anchor = document.createElement("a");
    anchor.href = URL.createObjectURL(blob);
    anchor.download = "quiver.dot";
    anchor.click();
    URL.revokeObjectURL(anchor.href);
  });

  el<HTMLInputElement>("import-file").addEventListener("change", (event) => {
    const input = event.target as HTMLInputElement;
    const file = input.files && input.files[0];
    if (!file) return;
    void file.text().then((text) => {
      el<HTMLTextAreaElement>("seed-input").value = text;
      loadSeed(text);
    });
    input.value = "";
  });

  el<HTMLButtonElement>("refresh-graph").addEventListener("click", () => {
    if (!view.state) return;
    const sid = view.state.session;
    const budget = Number(el<HTMLInputElement>("graph-budget").value) || 2;
    void run(async () =>
      withGraph(view, await currentClient().graph(sid, budget)),
    );
  });

  render();
}

document.addEventListener("DOMContentLoaded", wire);
