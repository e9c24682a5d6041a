import { describe, expect, it } from "vitest";

import {
  designLegend,
  paretoTable,
  runCounterText,
  scoreSparkline,
} from "../src/progress.js";
import type { CatalogEntry, PhysicalDesign } from "../src/types.js";

describe("progress widgets", () => {
  it("formats the run counter the way participants see it", () => {
    expect(runCounterText(1, 30)).toBe("run 1 of 30");
    expect(runCounterText(17, 30)).toBe("run 17 of 30");
  });

  it("sparkline plots one point per rated run", () => {
    const svg = scoreSparkline([-0.2, 0.1, 0.4, 0.6]);
    const points = svg.match(/points="([^"]+)"/);
    expect(points).not.toBeNull();
    expect(points![1].split(" ")).toHaveLength(4);
    expect(svg).toContain("score-sparkline");
  });

  it("sparkline renders an empty axis before the first rating", () => {
    const svg = scoreSparkline([]);
    expect(svg).toContain("<svg");
    expect(svg).not.toContain("polyline");
  });

  it("sparkline maps the score range onto the viewbox", () => {
    const svg = scoreSparkline([1, -1], 100, 50);
    const points = svg.match(/points="([^"]+)"/)![1].split(" ");
    const ys = points.map((p) => Number(p.split(",")[1]));
    expect(ys[0]).toBeCloseTo(0, 5); // +1 at the top
    expect(ys[1]).toBeCloseTo(50, 5); // -1 at the bottom
  });

  it("pareto table lists one row per front entry", () => {
    const html = paretoTable([
      { run_index: 3, design: [], objectives: [0.5, 0.25, 1, -0.5, 0, 0.75] },
      { run_index: 9, design: [], objectives: [1, 1, 1, 1, 1, 1] },
    ]);
    expect(html.match(/<tr>/g)).toHaveLength(3); // header + 2 entries
    expect(html).toContain("<td>3</td>");
    expect(html).toContain("<td>9</td>");
    expect(html).toContain("<td>0.50</td>");
  });

  it("pareto table degrades gracefully with no entries", () => {
    expect(paretoTable([])).toContain("no rated designs");
  });

  it("design legend shows catalog-labelled physical values", () => {
    const catalog: CatalogEntry[] = [
      {
        index: 0,
        name: "ego_trajectory_length",
        kind: "continuous",
        physical_min: 0,
        physical_max: 1000,
        unit: "meters",
      },
      {
        index: 10,
        name: "boundary_box",
        kind: "binary",
        physical_min: 0,
        physical_max: 1,
        unit: "boolean",
      },
    ];
    const physical = {
      ego_trajectory_length: 512.5,
      boundary_box: false,
    } as unknown as PhysicalDesign;
    const html = designLegend(catalog, physical);
    expect(html).toContain("ego trajectory length");
    expect(html).toContain("512.5 m");
    expect(html).toContain("hidden");
  });
});
