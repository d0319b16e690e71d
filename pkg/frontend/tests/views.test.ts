// Coordinated-view behavior driven through the rendered DOM: brushing the
// horizontal timeline must highlight the transcript range, band the other
// timeline, and update the dynamic trajectory; clicking a phrase node must
// seek the video to the phrase start.

import { beforeEach, describe, expect, it } from "vitest";

import { mountViews } from "../src/main.js";
import type { App } from "../src/main.js";
import { makeBundle } from "./fixture.js";

const TIME_EXTENT = 420; // px length of the timeline viewport
const bundle = makeBundle();

function mouse(type: string, x: number, y = 0): MouseEvent {
  return new MouseEvent(type, { clientX: x, clientY: y, bubbles: true });
}

describe("coordinated views", () => {
  let root: HTMLElement;
  let app: App;

  beforeEach(() => {
    document.body.innerHTML = "";
    root = document.createElement("div");
    document.body.appendChild(root);
    app = mountViews(root, bundle);
  });

  it("brushing the horizontal timeline highlights transcript, bands the other timeline, and updates the trajectory", () => {
    const horizontal = root.querySelector(".horizontal-timeline")!;
    const before = root.querySelector(".dynamic-view .trajectory")!;
    const beforeRange = before.getAttribute("data-range");

    // brush pixels 84..168 of 420 -> seconds 1.0..2.0 of the 5 s video
    horizontal.dispatchEvent(mouse("mousedown", 84));
    horizontal.dispatchEvent(mouse("mouseup", 168));

    expect(app.store.current.brushedRange).toEqual([1.0, 2.0]);
    const highlighted = [...root.querySelectorAll(".word.highlight")].map(
      (el) => Number((el as HTMLElement).dataset.index),
    );
    // word 4 starts exactly at the brush end, so it stays outside
    expect(highlighted).toEqual([2, 3]);

    const band = root.querySelector(".vertical-timeline .brush-band");
    expect(band).not.toBeNull();
    const bandY = Number(band!.getAttribute("y"));
    const bandH = Number(band!.getAttribute("height"));
    expect(bandY).toBeCloseTo((1.0 / 5.0) * TIME_EXTENT, 5);
    expect(bandH).toBeCloseTo((1.0 / 5.0) * TIME_EXTENT, 5);

    const after = root.querySelector(".dynamic-view .trajectory")!;
    expect(after.getAttribute("data-range")).toBe("1.000:2.000");
    expect(after.getAttribute("data-range")).not.toBe(beforeRange);
    expect(after.getAttribute("points")!.split(" ").length).toBeLessThan(
      before.getAttribute("points")!.split(" ").length,
    );
  });

  it("brushing the transcript bands both timelines", () => {
    const words = root.querySelectorAll(".word");
    words[5].dispatchEvent(mouse("mousedown", 0));
    words[8].dispatchEvent(mouse("mouseup", 0));
    expect(app.store.current.selectedWords).toEqual([5, 6, 7, 8]);
    expect(root.querySelector(".horizontal-timeline .brush-band")).not.toBeNull();
    expect(root.querySelector(".vertical-timeline .brush-band")).not.toBeNull();
  });

  it("clicking a phrase node seeks the video to the phrase start", () => {
    const node = root.querySelector('.phrase-node[data-phrase-id="1"]')!;
    node.dispatchEvent(new MouseEvent("click", { bubbles: true }));

    const phraseStart = bundle.phrases[1].start;
    expect(app.store.current.timeCursor).toBe(phraseStart);
    // within one frame (1/25 s) of the phrase start on the video element
    expect(Math.abs(app.video.videoEl.currentTime - phraseStart)).toBeLessThanOrEqual(
      1 / 25,
    );
    // its gestures are highlighted and linked with lines
    expect(app.store.current.selectedSegments).toEqual([0, 1]);
    expect(root.querySelectorAll(".relation-view .link-line").length).toBe(2);
  });

  it("clicking a glyph selects its phrases and seeks", () => {
    const glyph = root.querySelector('.gesture-glyph[data-segment-id="0"]')!;
    glyph.dispatchEvent(new MouseEvent("click", { bubbles: true }));
    expect(app.store.current.selectedPhrases).toEqual([0, 1]);
    expect(app.store.current.timeCursor).toBe(bundle.words[0].start);
  });

  it("search underlines every exact match", () => {
    const box = root.querySelector<HTMLInputElement>(".keyword-search")!;
    box.value = "tell";
    box.dispatchEvent(new Event("input", { bubbles: true }));
    const matches = [...root.querySelectorAll(".word.search-match")].map(
      (el) => Number((el as HTMLElement).dataset.index),
    );
    expect(matches).toEqual([6]);
  });

  it("raising the variation threshold to 1.0 removes every red stroke", () => {
    expect(root.querySelectorAll(".variation-stroke").length).toBeGreaterThan(0);
    app.store.dispatch({ type: "set-thresholds", variation: 1.0, change: 1.0 });
    expect(root.querySelectorAll(".variation-stroke").length).toBe(0);
    expect(root.querySelectorAll(".change-marker").length).toBe(0);
  });

  it("legend toggle hides a gesture type", () => {
    expect(root.querySelectorAll(".gesture-glyph").length).toBe(2);
    const chip = root.querySelector<HTMLButtonElement>(".legend-chip.type-open")!;
    chip.click();
    expect(root.querySelectorAll(".gesture-glyph").length).toBe(1);
  });

  it("unprojected phrases render in the muted tray", () => {
    const tray = root.querySelector(".unprojected-tray")!;
    expect(tray.textContent).toContain("stories");
  });

  it("timeline cursor follows the time cursor", () => {
    app.store.dispatch({ type: "seek", time: 2.5 });
    const cursor = root.querySelector(".horizontal-timeline .time-cursor")!;
    expect(Number(cursor.getAttribute("x1"))).toBeCloseTo(
      (2.5 / 5.0) * TIME_EXTENT, 5,
    );
  });

  it("multi-line mode lists one sentence per occurrence of the word", () => {
    const words = root.querySelectorAll(".word");
    words[6].dispatchEvent(mouse("mousedown", 0));
    words[6].dispatchEvent(mouse("mouseup", 0));
    root.querySelector<HTMLButtonElement>(".multi-line-toggle")!.click();
    const lines = root.querySelectorAll(".sentence-line");
    expect(lines.length).toBe(1); // "tell" occurs once
    expect(lines[0].textContent).toContain("tell");
  });
});
