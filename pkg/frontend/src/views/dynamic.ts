/** Dynamic view: animated wrist trajectories of the selected time range,
 * drawn in the gesture space. Right hand purple, left hand orange; the
 * trajectory re-renders live while brushing.
 */

import {
  drawGestureSpace,
  drawStickFigure,
  gapRuns,
  svgEl,
  toPixel,
} from "../draw.js";
import { Store } from "../state.js";
import type { SelectionState } from "../state.js";
import type { BundleJson } from "../types.js";

const SIZE = 240;

type HandPoint = [number, [number, number]]; // (t, (x, y))

export class DynamicView {
  private readonly bundle: BundleJson;
  private readonly svg: SVGSVGElement;
  private readonly playButton: HTMLButtonElement;
  private timer: ReturnType<typeof setInterval> | null = null;
  private playhead = 0;

  constructor(private readonly root: HTMLElement, private readonly store: Store) {
    this.bundle = store.bundle;
    root.classList.add("dynamic-view");
    root.innerHTML = "";
    this.svg = svgEl("svg", {
      class: "trajectory-space",
      width: SIZE,
      height: SIZE,
      viewBox: `0 0 ${SIZE} ${SIZE}`,
    });
    this.playButton = document.createElement("button");
    this.playButton.className = "play-toggle";
    this.playButton.textContent = "play";
    this.playButton.addEventListener("click", () => {
      this.store.dispatch({ type: "set-playing", playing: !this.store.current.playing });
    });
    root.append(this.svg, this.playButton);
    this.render(store.current);
    store.subscribe((state) => this.render(state));
  }

  /** Wrist positions inside the range, joined from the two timelines. */
  private handPoints(
    hand: "right_hand" | "left_hand",
    range: [number, number],
  ): HandPoint[][] {
    const ys = this.bundle.timelines.vertical[hand];
    const xs = this.bundle.timelines.horizontal[hand];
    const samples: [number, [number, number] | null][] = ys.map(([t, y], i) => {
      const x = xs[i]?.[1] ?? null;
      if (t < range[0] || t > range[1] || x === null || y === null) {
        return [t, null];
      }
      return [t, [x, y]];
    });
    return gapRuns(samples);
  }

  private render(state: SelectionState): void {
    this.svg.innerHTML = "";
    drawGestureSpace(this.svg, this.bundle.config.regions, SIZE);
    if (this.bundle.overall_average) {
      drawStickFigure(this.svg, this.bundle.overall_average, SIZE, "#bbb", 1);
    }
    const range = state.brushedRange ?? [0, this.bundle.video.duration];
    const hands: ["right_hand" | "left_hand", string][] = [
      ["right_hand", this.bundle.legend.hands.right],
      ["left_hand", this.bundle.legend.hands.left],
    ];
    for (const [hand, color] of hands) {
      for (const run of this.handPoints(hand, range)) {
        const points = run
          .map(([, [x, y]]) => toPixel(x, y, SIZE).join(","))
          .join(" ");
        this.svg.appendChild(
          svgEl("polyline", {
            class: `trajectory ${hand}`,
            "data-range": `${range[0].toFixed(3)}:${range[1].toFixed(3)}`,
            points,
            fill: "none",
            stroke: color,
            "stroke-width": 1.6,
            opacity: 0.85,
          }),
        );
        for (const [, [x, y]] of run) {
          const [cx, cy] = toPixel(x, y, SIZE);
          this.svg.appendChild(
            svgEl("circle", {
              class: `trajectory-dot ${hand}`,
              cx, cy, r: 1.6, fill: color, opacity: 0.6,
            }),
          );
        }
      }
    }
    this.playButton.textContent = state.playing ? "pause" : "play";
    this.animate(state, range);
  }

  /** Sweep a marker through the range while playing. */
  private animate(state: SelectionState, range: [number, number]): void {
    if (this.timer !== null) {
      clearInterval(this.timer);
      this.timer = null;
    }
    this.svg.querySelectorAll(".playhead-marker").forEach((n) => n.remove());
    if (!state.playing) return;
    this.playhead = range[0];
    const step = Math.max((range[1] - range[0]) / 100, 1e-3);
    this.timer = setInterval(() => {
      this.playhead += step;
      if (this.playhead > range[1]) this.playhead = range[0];
      this.svg.querySelectorAll(".playhead-marker").forEach((n) => n.remove());
      for (const [hand, color] of [
        ["right_hand", this.bundle.legend.hands.right],
        ["left_hand", this.bundle.legend.hands.left],
      ] as ["right_hand" | "left_hand", string][]) {
        const runs = this.handPoints(hand, [range[0], this.playhead]);
        const last = runs.at(-1)?.at(-1);
        if (!last) continue;
        const [cx, cy] = toPixel(last[1][0], last[1][1], SIZE);
        this.svg.appendChild(
          svgEl("circle", {
            class: `playhead-marker ${hand}`,
            cx, cy, r: 4, fill: color, stroke: "#000", "stroke-width": 0.8,
          }),
        );
      }
    }, 40);
  }
}
