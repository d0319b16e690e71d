/** SVG helpers shared by the gesture-space views. */

import type { BundleJson, SkeletonJson } from "./types.js";

export const SVG_NS = "http://www.w3.org/2000/svg";

type Attrs = Record<string, string | number>;

export function svgEl<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Attrs = {},
): SVGElementTagNameMap[K] {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, String(value));
  }
  return node;
}

/** Map normalized gesture-space coordinates (y up) onto an SVG viewport. */
export function toPixel(
  x: number,
  y: number,
  size: number,
): [number, number] {
  return [((x + 1) / 2) * size, ((1 - y) / 2) * size];
}

const BONES: [number, number][] = [
  [0, 1],
  [1, 2],
  [2, 3],
  [3, 4],
  [1, 5],
  [5, 6],
  [6, 7],
  [1, 8],
];

export function drawStickFigure(
  parent: SVGElement,
  skeleton: SkeletonJson,
  size: number,
  color = "#333",
  strokeWidth = 1.5,
): void {
  const group = svgEl("g", { class: "stick-figure" });
  for (const [a, b] of BONES) {
    const [xa, ya, ca] = skeleton.points[a];
    const [xb, yb, cb] = skeleton.points[b];
    if (ca <= 0 || cb <= 0) continue;
    const [x1, y1] = toPixel(xa, ya, size);
    const [x2, y2] = toPixel(xb, yb, size);
    group.appendChild(
      svgEl("line", {
        x1, y1, x2, y2,
        stroke: color,
        "stroke-width": strokeWidth,
        "stroke-linecap": "round",
      }),
    );
  }
  const [hx, hy, hc] = skeleton.points[0];
  if (hc > 0) {
    const [cx, cy] = toPixel(hx, hy, size);
    group.appendChild(
      svgEl("circle", {
        cx, cy,
        r: size * 0.045,
        fill: "none",
        stroke: color,
        "stroke-width": strokeWidth,
      }),
    );
  }
  parent.appendChild(group);
}

export function drawGestureSpace(
  parent: SVGElement,
  regions: BundleJson["config"]["regions"],
  size: number,
): void {
  for (const name of ["periphery", "center", "center_center"] as const) {
    const [xMin, xMax, yMin, yMax] = regions[name];
    const [x, y] = toPixel(xMin, yMax, size);
    const [x2, y2] = toPixel(xMax, yMin, size);
    parent.appendChild(
      svgEl("rect", {
        class: `region region-${name}`,
        x, y,
        width: x2 - x,
        height: y2 - y,
        fill: "none",
        stroke: "#4a90d9",
        "stroke-dasharray": "5 4",
        "stroke-width": 1,
      }),
    );
  }
}

export function drawHeatmap(
  parent: SVGElement,
  heatmap: BundleJson["heatmap"],
  size: number,
): void {
  const { resolution, cells } = heatmap;
  const cell = size / resolution;
  let peak = 0;
  for (const row of cells) for (const v of row) peak = Math.max(peak, v);
  if (peak === 0) return;
  const group = svgEl("g", { class: "heatmap" });
  for (let iy = 0; iy < resolution; iy++) {
    for (let ix = 0; ix < resolution; ix++) {
      const count = cells[iy][ix];
      if (count === 0) continue;
      group.appendChild(
        svgEl("rect", {
          x: ix * cell,
          y: (resolution - 1 - iy) * cell,
          width: cell,
          height: cell,
          fill: "#d94801",
          opacity: (0.15 + 0.85 * (count / peak)).toFixed(3),
        }),
      );
    }
  }
  parent.appendChild(group);
}

/** Split a sampled series into gap-free runs for polyline rendering. */
export function gapRuns<T>(
  samples: [number, T | null][],
): [number, T][][] {
  const runs: [number, T][][] = [];
  let current: [number, T][] = [];
  for (const [t, v] of samples) {
    if (v === null) {
      if (current.length) runs.push(current);
      current = [];
    } else {
      current.push([t, v]);
    }
  }
  if (current.length) runs.push(current);
  return runs;
}
