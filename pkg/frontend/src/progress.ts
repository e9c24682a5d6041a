/** Session progress widgets: run counter, score sparkline, Pareto table,
 * and the catalog-driven legend of the current design's physical values. */

import type { CatalogEntry, ParetoEntry, PhysicalDesign } from "./types.js";

export function runCounterText(runIndex: number, totalRuns: number): string {
  return `run ${runIndex} of ${totalRuns}`;
}

/** Inline SVG sparkline of the aggregate normalized score per rated run. */
export function scoreSparkline(trace: number[], width = 220, height = 48): string {
  const parts = [
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${width} ${height}" class="score-sparkline">`,
  ];
  const zeroY = height - ((0 + 1) / 2) * height;
  parts.push(
    `<line x1="0" y1="${zeroY}" x2="${width}" y2="${zeroY}" stroke="#46606f" stroke-width="0.5"/>`,
  );
  if (trace.length > 0) {
    const step = trace.length > 1 ? width / (trace.length - 1) : 0;
    const points = trace
      .map((value, i) => {
        const x = trace.length > 1 ? i * step : width / 2;
        const y = height - ((value + 1) / 2) * height;
        return `${x.toFixed(1)},${y.toFixed(1)}`;
      })
      .join(" ");
    parts.push(
      `<polyline fill="none" stroke="#2ec4b6" stroke-width="2" points="${points}"/>`,
    );
  }
  parts.push("</svg>");
  return parts.join("");
}

/** Physical value of each catalog parameter for the proposed design. */
export function designLegend(
  catalog: CatalogEntry[],
  physical: PhysicalDesign,
): string {
  const rows = catalog
    .map((entry) => {
      const value = physical[entry.name as keyof PhysicalDesign];
      let shown: string;
      if (entry.kind === "binary") {
        shown = value ? "visible" : "hidden";
      } else if (entry.unit === "meters") {
        shown = `${Number(value).toFixed(1)} m`;
      } else {
        shown = Number(value).toFixed(2);
      }
      const label = entry.name.replaceAll("_", " ");
      return `<tr><td>${label}</td><td>${shown}</td></tr>`;
    })
    .join("");
  return `<table class="design-legend">${rows}</table>`;
}

/** Plain HTML table of the session's current Pareto-optimal runs. */
export function paretoTable(entries: ParetoEntry[]): string {
  if (entries.length === 0) {
    return `<p class="pareto-empty">no rated designs yet</p>`;
  }
  const header =
    "<tr><th>run</th><th>trust</th><th>underst.</th><th>demand</th>" +
    "<th>safety</th><th>accept.</th><th>aesth.</th></tr>";
  const rows = entries
    .map(
      (entry) =>
        `<tr><td>${entry.run_index}</td>` +
        entry.objectives.map((v) => `<td>${v.toFixed(2)}</td>`).join("") +
        "</tr>",
    )
    .join("");
  return `<table class="pareto-table">${header}${rows}</table>`;
}
