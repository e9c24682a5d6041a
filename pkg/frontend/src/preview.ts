/** Schematic 2-D preview of a proposed design.
 *
 * Every optimized parameter has a visual equivalent: trajectory lengths and
 * chevron geometry scale linearly into pixels, alphas become opacity, and the
 * three booleans toggle whole element groups.  This is a deliberate schematic,
 * not a flight scene: it communicates the configuration, not fidelity.
 */

import type { PhysicalDesign } from "./types.js";

export const SCENE_WIDTH = 640;
export const SCENE_HEIGHT = 400;

/** Pixel equivalents of the physical maxima. */
export const SCALE = {
  egoTrajectoryMaxPx: 240, // 1000 m
  otherTrajectoryMaxPx: 110, // 205 m
  chevronMaxPx: 28, // 12.5 m
  chevronSpacingMaxPx: 60, // 42 m
  mapPathMaxPx: 70, // 260 m
} as const;

const EGO_COLOR = "#2ec4b6"; // turquoise; fixed, not an optimized parameter
const OTHER_COLOR = "#2ec4b6";
const MAX_CHEVRONS = 40;
const OVERLAP_SPACING_PX = 2; // distance 0 renders as overlapping glyphs

function chevronGlyph(
  cx: number,
  cy: number,
  sizePx: number,
  heading: number,
  cls: string,
): string {
  if (sizePx <= 0) return "";
  const half = sizePx / 2;
  const tip = sizePx * 0.45;
  const points = [
    [cx - half, cy + tip],
    [cx, cy - tip],
    [cx + half, cy + tip],
  ]
    .map(([x, y]) => `${x.toFixed(1)},${y.toFixed(1)}`)
    .join(" ");
  return `<polyline class="${cls}" fill="none" stroke-width="3" points="${points}" transform="rotate(${heading} ${cx.toFixed(1)} ${cy.toFixed(1)})"/>`;
}

function chevronPath(
  startX: number,
  startY: number,
  dirX: number,
  dirY: number,
  lengthPx: number,
  sizePx: number,
  spacingPx: number,
  alpha: number,
  cls: string,
): string {
  if (lengthPx <= 0) return "";
  const heading = (Math.atan2(dirX, -dirY) * 180) / Math.PI;
  const spacing = Math.max(spacingPx, OVERLAP_SPACING_PX);
  const count = Math.min(Math.floor(lengthPx / spacing) + 1, MAX_CHEVRONS);
  const glyphs: string[] = [];
  for (let i = 0; i < count; i++) {
    const d = Math.min(i * spacing, lengthPx);
    glyphs.push(
      chevronGlyph(startX + dirX * d, startY + dirY * d, sizePx, heading, cls),
    );
  }
  return `<g class="${cls}-path" stroke="${cls.startsWith("ego") ? EGO_COLOR : OTHER_COLOR}" opacity="${alpha.toFixed(3)}">${glyphs.join("")}</g>`;
}

function otherTaxi(
  x: number,
  y: number,
  design: PhysicalDesign,
  mirror: number,
): string {
  const parts: string[] = [];
  parts.push(
    `<polygon class="other-taxi" points="${x},${y - 10} ${x + 12},${y} ${x},${y + 10} ${x - 12},${y}" fill="#555"/>`,
  );
  if (design.boundary_box) {
    parts.push(
      `<rect class="boundary-box" x="${x - 22}" y="${y - 20}" width="44" height="40" fill="none" stroke="${OTHER_COLOR}" stroke-width="2"/>`,
    );
  }
  const lengthPx =
    (design.other_trajectory_length / 205) * SCALE.otherTrajectoryMaxPx;
  const sizePx = (design.other_chevron_size / 12.5) * SCALE.chevronMaxPx;
  const spacingPx =
    (design.other_chevron_distance / 42) * SCALE.chevronSpacingMaxPx;
  parts.push(
    chevronPath(
      x + mirror * 26,
      y,
      mirror * 0.94,
      -0.34,
      lengthPx,
      sizePx,
      spacingPx,
      design.other_trajectory_alpha,
      "other-chevron",
    ),
  );
  return parts.join("");
}

function mapPanel(design: PhysicalDesign): string {
  if (!design.map_at_display) return "";
  const pathPx = (design.ego_path_length_in_map / 260) * SCALE.mapPathMaxPx;
  const x = 16;
  const y = SCENE_HEIGHT - 108;
  const pathEnd = y + 88 - 6 - pathPx;
  return [
    `<g class="map-panel">`,
    `<rect x="${x}" y="${y}" width="120" height="88" fill="#1d2b36" stroke="#46606f" rx="6"/>`,
    `<circle cx="${x + 60}" cy="${y + 82 - 4}" r="4" fill="${EGO_COLOR}"/>`,
    pathPx > 0
      ? `<polyline class="map-ego-path" fill="none" stroke="${EGO_COLOR}" stroke-width="3" points="${x + 60},${y + 82 - 4} ${x + 60},${Math.max(pathEnd, y + 6)}"/>`
      : "",
    `</g>`,
  ].join("");
}

function infoPanel(design: PhysicalDesign): string {
  if (!design.additional_info_at_display) return "";
  const x = SCENE_WIDTH - 150;
  const y = SCENE_HEIGHT - 108;
  return [
    `<g class="info-panel" font-family="sans-serif" fill="#d7e3ea">`,
    `<rect x="${x}" y="${y}" width="134" height="88" fill="#1d2b36" stroke="#46606f" rx="6"/>`,
    `<text x="${x + 12}" y="${y + 32}" font-size="13">speed 96 km/h</text>`,
    `<text x="${x + 12}" y="${y + 58}" font-size="13">altitude 310 m</text>`,
    `</g>`,
  ].join("");
}

/** Render the design into a self-contained SVG string. */
export function renderPreview(design: PhysicalDesign): string {
  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${SCENE_WIDTH} ${SCENE_HEIGHT}" class="design-preview">`,
  );
  parts.push(
    `<rect width="${SCENE_WIDTH}" height="${SCENE_HEIGHT}" fill="#10181f"/>`,
  );
  // horizon line for orientation
  parts.push(
    `<line x1="0" y1="120" x2="${SCENE_WIDTH}" y2="120" stroke="#26323c" stroke-width="1"/>`,
  );

  const egoLengthPx =
    (design.ego_trajectory_length / 1000) * SCALE.egoTrajectoryMaxPx;
  const egoSizePx = (design.ego_chevron_size / 12.5) * SCALE.chevronMaxPx;
  const egoSpacingPx =
    (design.ego_chevron_distance / 42) * SCALE.chevronSpacingMaxPx;
  parts.push(
    chevronPath(
      SCENE_WIDTH / 2,
      SCENE_HEIGHT - 130,
      0,
      -1,
      egoLengthPx,
      egoSizePx,
      egoSpacingPx,
      design.ego_trajectory_alpha,
      "ego-chevron",
    ),
  );

  parts.push(otherTaxi(150, 90, design, -1));
  parts.push(otherTaxi(SCENE_WIDTH - 150, 70, design, 1));
  parts.push(mapPanel(design));
  parts.push(infoPanel(design));
  parts.push("</svg>");
  return parts.join("");
}

/** Rough element census used by progress indicators and tests. */
export function sceneStats(svg: string): {
  egoChevrons: number;
  otherChevrons: number;
  boundaryBoxes: number;
  mapPanels: number;
  infoPanels: number;
} {
  const count = (pattern: RegExp) => (svg.match(pattern) ?? []).length;
  return {
    egoChevrons: count(/class="ego-chevron"/g),
    otherChevrons: count(/class="other-chevron"/g),
    boundaryBoxes: count(/class="boundary-box"/g),
    mapPanels: count(/class="map-panel"/g),
    infoPanels: count(/class="info-panel"/g),
  };
}
