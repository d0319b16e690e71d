/** Relation view: phrases and gesture glyphs projected onto two stacked 2D
 * planes, linked by word overlap. Legend chips toggle phrase kinds and
 * gesture types; filters narrow phrases by time range and occurrence count.
 * Clicking a node selects it, highlights its counterparts, links them with
 * lines, and seeks the video to the node's start.
 */

import type { ApiClient } from "../api.js";
import { drawStickFigure, svgEl } from "../draw.js";
import { Store } from "../state.js";
import type { GestureType, PhraseKind, SelectionState } from "../state.js";
import type { BundleJson } from "../types.js";

const WIDTH = 460;
const PLANE = 200; // height of each projection plane
const GAP = 60; // vertical gap crossed by the link lines
const GLYPH_R = 13;

const KIND_COLORS: Record<PhraseKind, string> = {
  NP: "#1f77b4",
  VP: "#2ca02c",
  PP: "#e377c2",
  SVO: "#17becf",
};

export class RelationView {
  private readonly bundle: BundleJson;
  private readonly svg: SVGSVGElement;
  private readonly legendEl: HTMLDivElement;
  private readonly trayEl: HTMLDivElement;
  private readonly bookmarksEl: HTMLUListElement;
  private readonly timeLo: HTMLInputElement;
  private readonly timeHi: HTMLInputElement;
  private readonly occurrenceInput: HTMLInputElement;

  constructor(
    private readonly root: HTMLElement,
    private readonly store: Store,
    private readonly api?: ApiClient,
  ) {
    this.bundle = store.bundle;
    root.classList.add("relation-view");
    root.innerHTML = "";

    const filters = document.createElement("div");
    filters.className = "filters";
    this.timeLo = this.numberInput("time-lo", 0);
    this.timeHi = this.numberInput("time-hi", this.bundle.video.duration);
    this.occurrenceInput = this.numberInput("min-occurrence", 1);
    const apply = document.createElement("button");
    apply.className = "apply-filters";
    apply.textContent = "filter";
    apply.addEventListener("click", () => {
      this.store.dispatch({
        type: "set-phrase-filters",
        timeRange: [Number(this.timeLo.value), Number(this.timeHi.value)],
        minOccurrence: Number(this.occurrenceInput.value),
      });
    });
    const bookmark = document.createElement("button");
    bookmark.className = "bookmark-button";
    bookmark.textContent = "bookmark";
    bookmark.addEventListener("click", () => void this.bookmarkSelection());
    filters.append(
      this.labeled("from", this.timeLo),
      this.labeled("to", this.timeHi),
      this.labeled("min#", this.occurrenceInput),
      apply,
      bookmark,
    );

    this.legendEl = document.createElement("div");
    this.legendEl.className = "legend";
    this.svg = svgEl("svg", {
      class: "relation-planes",
      width: WIDTH,
      height: PLANE * 2 + GAP,
      viewBox: `0 0 ${WIDTH} ${PLANE * 2 + GAP}`,
    });
    this.trayEl = document.createElement("div");
    this.trayEl.className = "unprojected-tray";
    this.bookmarksEl = document.createElement("ul");
    this.bookmarksEl.className = "bookmark-list";

    root.append(filters, this.legendEl, this.svg, this.trayEl, this.bookmarksEl);
    this.render(store.current);
    store.subscribe((state) => this.render(state));
    void this.refreshBookmarks();
  }

  private labeled(text: string, input: HTMLElement): HTMLElement {
    const label = document.createElement("label");
    label.append(text, input);
    return label;
  }

  private numberInput(cls: string, value: number): HTMLInputElement {
    const input = document.createElement("input");
    input.type = "number";
    input.className = cls;
    input.value = String(value);
    return input;
  }

  private async bookmarkSelection(): Promise<void> {
    if (!this.api) return;
    const state = this.store.current;
    try {
      if (state.selectedSegments.length) {
        await this.api.createBookmark(state.videoId, "gesture_segment", {
          segment_id: state.selectedSegments[0],
        });
      } else if (state.selectedPhrases.length) {
        await this.api.createBookmark(state.videoId, "phrase", {
          phrase_id: state.selectedPhrases[0],
        });
      } else if (state.brushedRange) {
        await this.api.createBookmark(state.videoId, "time_range", {
          range: state.brushedRange,
        });
      }
      await this.refreshBookmarks();
    } catch (error) {
      console.error("bookmark failed", error);
    }
  }

  private async refreshBookmarks(): Promise<void> {
    if (!this.api) return;
    try {
      const records = await this.api.listBookmarks(this.store.current.videoId);
      this.bookmarksEl.innerHTML = "";
      for (const record of records) {
        const item = document.createElement("li");
        item.textContent = `${record.kind} ${JSON.stringify(record.payload)}`;
        const remove = document.createElement("button");
        remove.textContent = "x";
        remove.addEventListener("click", async () => {
          await this.api!.deleteBookmark(record.video_id, record.id);
          await this.refreshBookmarks();
        });
        item.appendChild(remove);
        this.bookmarksEl.appendChild(item);
      }
    } catch (error) {
      console.error("bookmark list failed", error);
    }
  }

  private visiblePhrases(state: SelectionState): Set<number> {
    const out = new Set<number>();
    for (const phrase of this.bundle.phrases) {
      if (!(phrase.id in this.bundle.relation.phrase_points)) continue;
      if (!state.activeKinds.includes(phrase.kind)) continue;
      if (phrase.occurrence_count < state.minOccurrence) continue;
      if (state.phraseTimeRange) {
        const [lo, hi] = state.phraseTimeRange;
        if (phrase.start < lo || phrase.start > hi) continue;
      }
      out.add(phrase.id);
    }
    return out;
  }

  private visibleSegments(state: SelectionState): Set<number> {
    const out = new Set<number>();
    for (const segment of this.bundle.segments) {
      if (!(segment.id in this.bundle.relation.gesture_points)) continue;
      if (!state.activeTypes.includes(segment.gesture_type)) continue;
      out.add(segment.id);
    }
    return out;
  }

  private renderLegend(state: SelectionState): void {
    this.legendEl.innerHTML = "";
    for (const kind of ["NP", "VP", "PP", "SVO"] as PhraseKind[]) {
      const chip = document.createElement("button");
      chip.className = `legend-chip kind-${kind}`;
      chip.textContent = kind;
      const active = state.activeKinds.includes(kind);
      chip.classList.toggle("inactive", !active);
      chip.style.background = active ? KIND_COLORS[kind] : "transparent";
      chip.addEventListener("click", () =>
        this.store.dispatch({ type: "toggle-kind", kind }),
      );
      this.legendEl.appendChild(chip);
    }
    for (const gestureType of ["closed", "open", "others"] as GestureType[]) {
      const chip = document.createElement("button");
      chip.className = `legend-chip type-${gestureType}`;
      chip.textContent = gestureType;
      const active = state.activeTypes.includes(gestureType);
      chip.classList.toggle("inactive", !active);
      chip.style.background = active
        ? this.bundle.legend.gesture_types[gestureType]
        : "transparent";
      chip.addEventListener("click", () =>
        this.store.dispatch({ type: "toggle-type", gestureType }),
      );
      this.legendEl.appendChild(chip);
    }
  }

  private planeXY(point: [number, number], plane: "top" | "bottom"): [number, number] {
    const x = ((point[0] + 1) / 2) * (WIDTH - 2 * GLYPH_R) + GLYPH_R;
    const y = ((1 - point[1]) / 2) * (PLANE - 2 * GLYPH_R) + GLYPH_R;
    return [x, plane === "top" ? y : y + PLANE + GAP];
  }

  private render(state: SelectionState): void {
    this.renderLegend(state);
    this.svg.innerHTML = "";
    const phrases = this.visiblePhrases(state);
    const segments = this.visibleSegments(state);
    const selectedPhrases = new Set(state.selectedPhrases);
    const selectedSegments = new Set(state.selectedSegments);

    this.svg.appendChild(
      svgEl("rect", {
        class: "plane phrase-plane",
        x: 0, y: 0, width: WIDTH, height: PLANE,
        fill: "#fafafa", stroke: "#ddd",
      }),
    );
    this.svg.appendChild(
      svgEl("rect", {
        class: "plane gesture-plane",
        x: 0, y: PLANE + GAP, width: WIDTH, height: PLANE,
        fill: "#fafafa", stroke: "#ddd",
      }),
    );

    // link lines between the clicked item and its selected counterparts
    for (const [pid, sid] of this.bundle.relation.links) {
      if (!phrases.has(pid) || !segments.has(sid)) continue;
      if (!selectedPhrases.has(pid) || !selectedSegments.has(sid)) continue;
      const a = this.planeXY(this.bundle.relation.phrase_points[pid], "top");
      const b = this.planeXY(this.bundle.relation.gesture_points[sid], "bottom");
      this.svg.appendChild(
        svgEl("line", {
          class: "link-line",
          x1: a[0], y1: a[1], x2: b[0], y2: b[1],
          stroke: "#e6550d", "stroke-width": 1.2, opacity: 0.8,
        }),
      );
    }

    for (const phrase of this.bundle.phrases) {
      if (!phrases.has(phrase.id)) continue;
      const [x, y] = this.planeXY(
        this.bundle.relation.phrase_points[phrase.id], "top",
      );
      const group = svgEl("g", {
        class: "phrase-node",
        "data-phrase-id": phrase.id,
      });
      if (selectedPhrases.has(phrase.id)) group.classList.add("selected");
      group.appendChild(
        svgEl("circle", {
          cx: x, cy: y,
          r: 3 + Math.min(phrase.occurrence_count, 6),
          fill: KIND_COLORS[phrase.kind],
          opacity: selectedPhrases.has(phrase.id) ? 1 : 0.55,
        }),
      );
      const label = svgEl("text", { x: x + 6, y: y + 3, "font-size": 9 });
      label.textContent = phrase.text;
      group.appendChild(label);
      group.addEventListener("click", () =>
        this.store.dispatch({ type: "click-phrase", phraseId: phrase.id }),
      );
      this.svg.appendChild(group);
    }

    for (const segment of this.bundle.segments) {
      if (!segments.has(segment.id)) continue;
      const [x, y] = this.planeXY(
        this.bundle.relation.gesture_points[segment.id], "bottom",
      );
      this.svg.appendChild(this.glyph(segment.id, x, y, selectedSegments));
    }

    this.renderTray(state);
  }

  /** Gesture glyph: type-colored disc, radial variation ring, stick figure. */
  private glyph(
    segmentId: number,
    x: number,
    y: number,
    selected: Set<number>,
  ): SVGElement {
    const segment = this.bundle.segments.find((s) => s.id === segmentId)!;
    const group = svgEl("g", {
      class: "gesture-glyph",
      "data-segment-id": segmentId,
      transform: `translate(${x - GLYPH_R}, ${y - GLYPH_R})`,
    });
    if (selected.has(segmentId)) group.classList.add("selected");
    group.appendChild(
      svgEl("circle", {
        cx: GLYPH_R, cy: GLYPH_R, r: GLYPH_R,
        fill: this.bundle.legend.gesture_types[segment.gesture_type],
        stroke: selected.has(segmentId) ? "#e6550d" : "#999",
        "stroke-width": selected.has(segmentId) ? 2 : 0.8,
      }),
    );
    const radial = segment.radial_variation;
    if (radial.length) {
      const peak = Math.max(...radial, 1e-9);
      let path = "";
      radial.forEach((value, i) => {
        const angle = (2 * Math.PI * i) / radial.length - Math.PI / 2;
        const r = GLYPH_R * (0.65 + 0.35 * (value / peak));
        const px = GLYPH_R + r * Math.cos(angle);
        const py = GLYPH_R + r * Math.sin(angle);
        path += (i === 0 ? "M" : "L") + px.toFixed(1) + " " + py.toFixed(1);
      });
      group.appendChild(
        svgEl("path", {
          class: "variation-ring",
          d: path + "Z",
          fill: "#2ca02c",
          opacity: 0.35,
        }),
      );
    }
    if (segment.average) {
      const mini = svgEl("g", {
        transform: `translate(${GLYPH_R * 0.25}, ${GLYPH_R * 0.25}) scale(0.75)`,
      });
      drawStickFigure(mini, segment.average, GLYPH_R * 2, "#222", 1);
      group.appendChild(mini);
    }
    group.addEventListener("click", () =>
      this.store.dispatch({ type: "click-segment", segmentId }),
    );
    return group;
  }

  /** Items without a projected position (OOV phrases, degenerate segments). */
  private renderTray(state: SelectionState): void {
    this.trayEl.innerHTML = "";
    const unprojected = this.bundle.phrases.filter(
      (p) => !(p.id in this.bundle.relation.phrase_points),
    );
    if (!unprojected.length) return;
    const title = document.createElement("span");
    title.className = "tray-title";
    title.textContent = "unprojected:";
    this.trayEl.appendChild(title);
    for (const phrase of unprojected) {
      const chip = document.createElement("span");
      chip.className = "tray-item";
      chip.textContent = phrase.text;
      chip.addEventListener("click", () =>
        this.store.dispatch({ type: "click-phrase", phraseId: phrase.id }),
      );
      this.trayEl.appendChild(chip);
    }
  }
}
