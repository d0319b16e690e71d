/** Exploration view: heatmap over the gesture space, two perpendicular
 * timelines, and the annotated transcript with threshold controls and
 * keyword search. Brushing a timeline highlights the transcript (and vice
 * versa); a black cursor line tracks the playhead on both timelines.
 */

import {
  drawGestureSpace,
  drawHeatmap,
  drawStickFigure,
  gapRuns,
  svgEl,
  toPixel,
} from "../draw.js";
import { searchKeyword, Store } from "../state.js";
import type { SelectionState } from "../state.js";
import type { BundleJson, TimelineJson } from "../types.js";

const SPACE = 240; // gesture-space viewport in px
const TIME_EXTENT = 420; // timeline length in px

export class ExplorationView {
  private readonly bundle: BundleJson;
  private readonly searchBox: HTMLInputElement;
  private readonly variationSlider: HTMLInputElement;
  private readonly changeSlider: HTMLInputElement;
  private readonly spaceSvg: SVGSVGElement;
  private readonly horizontalSvg: SVGSVGElement;
  private readonly verticalSvg: SVGSVGElement;
  private readonly transcriptEl: HTMLDivElement;
  private readonly sentencesEl: HTMLDivElement;
  private brushStart: number | null = null;
  private wordBrushStart: number | null = null;

  constructor(private readonly root: HTMLElement, private readonly store: Store) {
    this.bundle = store.bundle;
    root.classList.add("exploration-view");
    root.innerHTML = "";

    const controls = document.createElement("div");
    controls.className = "controls";
    this.searchBox = document.createElement("input");
    this.searchBox.type = "search";
    this.searchBox.placeholder = "search keyword";
    this.searchBox.className = "keyword-search";
    this.searchBox.addEventListener("input", () => {
      const query = this.searchBox.value;
      this.store.dispatch({
        type: "set-search",
        query,
        matches: searchKeyword(this.bundle.words, query),
      });
    });
    this.variationSlider = this.slider("variation");
    this.changeSlider = this.slider("change");
    const multiLine = document.createElement("button");
    multiLine.className = "multi-line-toggle";
    multiLine.textContent = "sentences";
    multiLine.addEventListener("click", () =>
      this.store.dispatch({ type: "toggle-multi-line" }),
    );
    controls.append(
      this.searchBox,
      this.labeled("variation", this.variationSlider),
      this.labeled("change", this.changeSlider),
      multiLine,
    );

    this.spaceSvg = svgEl("svg", {
      class: "gesture-space",
      width: SPACE,
      height: SPACE,
      viewBox: `0 0 ${SPACE} ${SPACE}`,
    });
    this.horizontalSvg = svgEl("svg", {
      class: "timeline horizontal-timeline",
      width: TIME_EXTENT,
      height: SPACE,
      viewBox: `0 0 ${TIME_EXTENT} ${SPACE}`,
    });
    this.verticalSvg = svgEl("svg", {
      class: "timeline vertical-timeline",
      width: SPACE,
      height: TIME_EXTENT,
      viewBox: `0 0 ${SPACE} ${TIME_EXTENT}`,
    });
    this.transcriptEl = document.createElement("div");
    this.transcriptEl.className = "transcript";
    this.sentencesEl = document.createElement("div");
    this.sentencesEl.className = "sentence-list";

    const grid = document.createElement("div");
    grid.className = "exploration-grid";
    grid.append(this.spaceSvg, this.horizontalSvg, this.verticalSvg, this.transcriptEl);
    root.append(controls, grid, this.sentencesEl);

    this.attachBrush(this.horizontalSvg, (px) => this.timeAtX(px));
    this.attachBrush(this.verticalSvg, (px) => this.timeAtX(px), true);
    this.render(store.current);
    store.subscribe((state) => this.render(state));
  }

  private labeled(text: string, input: HTMLElement): HTMLElement {
    const label = document.createElement("label");
    label.append(text, input);
    return label;
  }

  private slider(name: string): HTMLInputElement {
    const input = document.createElement("input");
    input.type = "range";
    input.min = "0";
    input.max = "1";
    input.step = "0.05";
    input.className = `${name}-threshold`;
    input.addEventListener("input", () => {
      this.store.dispatch({
        type: "set-thresholds",
        variation: Number(this.variationSlider.value),
        change: Number(this.changeSlider.value),
      });
    });
    return input;
  }

  private get duration(): number {
    return this.bundle.video.duration;
  }

  private timeAtX(px: number): number {
    return Math.max(0, Math.min(this.duration, (px / TIME_EXTENT) * this.duration));
  }

  private xAtTime(t: number): number {
    return (t / this.duration) * TIME_EXTENT;
  }

  private attachBrush(
    svg: SVGSVGElement,
    toTime: (px: number) => number,
    alongY = false,
  ): void {
    const coord = (event: MouseEvent) => {
      const rect = svg.getBoundingClientRect();
      return alongY ? event.clientY - rect.top : event.clientX - rect.left;
    };
    svg.addEventListener("mousedown", (event) => {
      this.brushStart = coord(event as MouseEvent);
    });
    svg.addEventListener("mouseup", (event) => {
      if (this.brushStart === null) return;
      const a = toTime(this.brushStart);
      const b = toTime(coord(event as MouseEvent));
      this.brushStart = null;
      if (Math.abs(a - b) < this.duration / 200) {
        this.store.dispatch({ type: "seek", time: Math.min(a, b) });
      } else {
        this.store.dispatch({
          type: "brush-timeline",
          range: [Math.min(a, b), Math.max(a, b)],
        });
      }
    });
  }

  private render(state: SelectionState): void {
    this.renderSpace();
    this.renderTimeline(
      this.horizontalSvg, this.bundle.timelines.vertical, state, false,
    );
    this.renderTimeline(
      this.verticalSvg, this.bundle.timelines.horizontal, state, true,
    );
    this.renderTranscript(state);
    this.renderSentences(state);
    this.variationSlider.value = String(state.variationThreshold);
    this.changeSlider.value = String(state.changeThreshold);
  }

  private renderSpace(): void {
    this.spaceSvg.innerHTML = "";
    drawHeatmap(this.spaceSvg, this.bundle.heatmap, SPACE);
    drawGestureSpace(this.spaceSvg, this.bundle.config.regions, SPACE);
    if (this.bundle.overall_average) {
      drawStickFigure(this.spaceSvg, this.bundle.overall_average, SPACE, "#222");
    }
  }

  /** One timeline: hand-position lines, centerline, brush band, cursor. */
  private renderTimeline(
    svg: SVGSVGElement,
    series: TimelineJson,
    state: SelectionState,
    alongY: boolean,
  ): void {
    svg.innerHTML = "";
    const breadth = SPACE;
    const place = (t: number, v: number): [number, number] => {
      const timePx = this.xAtTime(t);
      const [vx, vy] = toPixel(v, v, breadth);
      return alongY ? [vx, timePx] : [timePx, vy];
    };

    // dashed centerline at gesture-space value 0
    const mid = breadth / 2;
    svg.appendChild(
      svgEl("line", {
        class: "centerline",
        x1: alongY ? mid : 0,
        y1: alongY ? 0 : mid,
        x2: alongY ? mid : TIME_EXTENT,
        y2: alongY ? TIME_EXTENT : mid,
        stroke: "#999",
        "stroke-dasharray": "4 4",
      }),
    );

    if (state.brushedRange) {
      const [lo, hi] = state.brushedRange;
      const a = this.xAtTime(lo);
      const b = this.xAtTime(hi);
      svg.appendChild(
        svgEl("rect", {
          class: "brush-band",
          x: alongY ? 0 : a,
          y: alongY ? a : 0,
          width: alongY ? breadth : Math.max(b - a, 1),
          height: alongY ? Math.max(b - a, 1) : breadth,
          fill: "#888",
          opacity: 0.25,
        }),
      );
    }

    const hands: ["right_hand" | "left_hand", string][] = [
      ["right_hand", this.bundle.legend.hands.right],
      ["left_hand", this.bundle.legend.hands.left],
    ];
    for (const [hand, color] of hands) {
      for (const run of gapRuns(series[hand])) {
        const points = run
          .map(([t, v]) => place(t, v).join(","))
          .join(" ");
        svg.appendChild(
          svgEl("polyline", {
            class: `hand-line ${hand}`,
            points,
            fill: "none",
            stroke: color,
            "stroke-width": 1.2,
          }),
        );
      }
    }

    const cursor = this.xAtTime(state.timeCursor);
    svg.appendChild(
      svgEl("line", {
        class: "time-cursor",
        x1: alongY ? 0 : cursor,
        y1: alongY ? cursor : 0,
        x2: alongY ? breadth : cursor,
        y2: alongY ? cursor : breadth,
        stroke: "#000",
        "stroke-width": 1,
      }),
    );
  }

  private renderTranscript(state: SelectionState): void {
    this.transcriptEl.innerHTML = "";
    const selected = new Set(state.selectedWords);
    const matches = new Set(state.searchMatches);
    for (const word of this.bundle.words) {
      const metric = this.bundle.word_metrics[word.index];
      const wrap = document.createElement("span");
      wrap.className = "word";
      wrap.dataset.index = String(word.index);
      if (selected.has(word.index)) wrap.classList.add("highlight");
      if (matches.has(word.index)) wrap.classList.add("search-match");

      if (metric?.mini_skeleton) {
        const mini = svgEl("svg", {
          class: "mini-skeleton",
          width: 22,
          height: 22,
          viewBox: "0 0 22 22",
        });
        drawStickFigure(mini, metric.mini_skeleton, 22, "#555", 1);
        wrap.appendChild(mini);
      }
      if (metric && metric.temporal_change > state.changeThreshold) {
        const triangle = document.createElement("span");
        triangle.className = "change-marker";
        triangle.textContent = "▲";
        wrap.appendChild(triangle);
      }
      const text = document.createElement("span");
      text.className = "word-text";
      if (metric && metric.spatial_variation > state.variationThreshold) {
        text.classList.add("variation-stroke");
      }
      text.textContent = word.text;
      wrap.appendChild(text);

      wrap.addEventListener("mousedown", () => {
        this.wordBrushStart = word.index;
      });
      wrap.addEventListener("mouseup", () => {
        const start = this.wordBrushStart;
        this.wordBrushStart = null;
        if (start === null || start === word.index) {
          this.store.dispatch({ type: "click-word", wordIndex: word.index });
        } else {
          const [lo, hi] = [Math.min(start, word.index), Math.max(start, word.index)];
          const indices = [];
          for (let i = lo; i <= hi; i++) indices.push(i);
          this.store.dispatch({ type: "brush-transcript", wordIndices: indices });
        }
      });
      this.transcriptEl.appendChild(wrap);
    }
  }

  /** Multi-line mode: every occurrence of the selected word, in sentence
   * context, to compare gestures used for the same word. */
  private renderSentences(state: SelectionState): void {
    this.sentencesEl.innerHTML = "";
    this.sentencesEl.style.display = state.multiLineMode ? "block" : "none";
    if (!state.multiLineMode || state.selectedWords.length !== 1) return;
    const target = this.bundle.words[state.selectedWords[0]];
    const matches = searchKeyword(this.bundle.words, target.text);
    for (const index of matches) {
      const line = document.createElement("div");
      line.className = "sentence-line";
      const lo = Math.max(0, index - 5);
      const hi = Math.min(this.bundle.words.length - 1, index + 5);
      line.textContent = this.bundle.words
        .slice(lo, hi + 1)
        .map((w) => w.text)
        .join(" ");
      line.addEventListener("click", () =>
        this.store.dispatch({ type: "click-word", wordIndex: index }),
      );
      this.sentencesEl.appendChild(line);
    }
  }
}
