/** DOM bootstrap: wires the console app to the page. */

import { ConsoleApi } from "./api.js";
import { ConsoleApp, type ConsoleState } from "./app.js";
import { FORM_SCALES } from "./form.js";
import { renderPreview } from "./preview.js";
import {
  designLegend,
  paretoTable,
  runCounterText,
  scoreSparkline,
} from "./progress.js";
import type { CatalogEntry } from "./types.js";

const api = new ConsoleApi("");
const app = new ConsoleApp(api);
let catalog: CatalogEntry[] = [];

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function renderForm(): void {
  const container = el<HTMLDivElement>("rating-form");
  container.innerHTML = "";
  for (const scale of FORM_SCALES) {
    const row = document.createElement("label");
    row.className = "rating-row";
    const title = document.createElement("span");
    title.textContent = `${scale.label} (${scale.min}..${scale.max})`;
    const input = document.createElement("input");
    input.type = "range";
    input.min = String(scale.min);
    input.max = String(scale.max);
    input.step = String(scale.step);
    input.value = String((scale.min + scale.max) / 2);
    input.dataset.key = scale.key;
    const value = document.createElement("output");
    value.textContent = "-";
    input.addEventListener("input", () => {
      const stored = app.form.setValue(scale.key, Number(input.value));
      value.textContent = stored.toFixed(scale.step < 1 ? 1 : 0);
      el<HTMLButtonElement>("submit-rating").disabled = !app.form.isComplete();
    });
    row.append(title, input, value);
    container.append(row);
  }
  el<HTMLButtonElement>("submit-rating").disabled = true;
}

async function renderState(state: ConsoleState): Promise<void> {
  el("status-line").textContent =
    state.phase === "complete"
      ? "session complete - thank you"
      : state.lastError
        ? `error: ${state.lastError} (values kept, retry)`
        : state.phase;
  el("run-counter").textContent =
    state.runIndex !== undefined
      ? runCounterText(state.runIndex, state.totalRuns)
      : "";
  el("preview").innerHTML = state.physical ? renderPreview(state.physical) : "";
  el("legend").innerHTML =
    state.physical && catalog.length ? designLegend(catalog, state.physical) : "";
  el("sparkline").innerHTML = scoreSparkline(state.trace);
  if (state.sessionId && state.phase === "complete") {
    const pareto = await api.pareto(state.sessionId);
    el("pareto").innerHTML = paretoTable(pareto.entries);
  }
}

async function main(): Promise<void> {
  renderForm();
  catalog = await api.catalog();
  el<HTMLButtonElement>("start-session").addEventListener("click", async () => {
    const label = el<HTMLInputElement>("participant-label").value || "anonymous";
    const condition = el<HTMLSelectElement>("condition").value;
    await renderState(await app.start(label, condition));
  });
  el<HTMLButtonElement>("submit-rating").addEventListener("click", async () => {
    const state = await app.submit();
    renderForm();
    await renderState(state);
  });
}

main().catch((error) => {
  document.body.insertAdjacentText("beforeend", `fatal: ${error}`);
});
