// Screenshot flow: capturing at a timestamp inside a known word produces a
// gallery entry captioned with that time and word.

import { beforeEach, describe, expect, it, vi } from "vitest";

import { ApiClient } from "../src/api.js";
import { mountViews } from "../src/main.js";
import type { App } from "../src/main.js";
import type { ScreenshotJson } from "../src/types.js";
import { makeBundle } from "./fixture.js";

const bundle = makeBundle();

function fakeService() {
  const screenshots: ScreenshotJson[] = [];
  const fetchMock = vi.fn(async (input: RequestInfo | URL, init?: RequestInit) => {
    const url = String(input);
    const method = init?.method ?? "GET";
    if (url.endsWith("/screenshots") && method === "POST") {
      const { timestamp } = JSON.parse(String(init?.body));
      // resolve the word whose interval contains the timestamp, as the
      // service does
      const word =
        bundle.words.find((w) => w.start <= timestamp && timestamp < w.end)
          ?.text ?? "";
      const record: ScreenshotJson = {
        id: `shot${screenshots.length}`,
        video_id: "vid1",
        timestamp,
        word,
        created_at: "2024-01-01T00:00:00Z",
      };
      screenshots.push(record);
      return new Response(JSON.stringify(record), { status: 201 });
    }
    if (url.endsWith("/screenshots")) {
      return new Response(JSON.stringify(screenshots), { status: 200 });
    }
    if (url.endsWith("/bookmarks")) {
      return new Response(JSON.stringify([]), { status: 200 });
    }
    return new Response("{}", { status: 200 });
  });
  vi.stubGlobal("fetch", fetchMock);
  return { screenshots, fetchMock };
}

describe("screenshot flow", () => {
  let root: HTMLElement;
  let app: App;

  beforeEach(() => {
    document.body.innerHTML = "";
    root = document.createElement("div");
    document.body.appendChild(root);
  });

  it("captures at the playhead and captions the gallery entry with time and word", async () => {
    fakeService();
    app = mountViews(root, bundle, new ApiClient("http://svc"));

    // word "story" spans [2.0, 2.4); park the playhead inside it
    app.store.dispatch({ type: "seek", time: 2.2 });
    app.video.videoEl.currentTime = 2.2;

    root.querySelector<HTMLButtonElement>(".screenshot-button")!.click();
    await vi.waitFor(() => {
      expect(root.querySelectorAll(".screenshot-entry").length).toBe(1);
    });

    const caption = root.querySelector(".screenshot-caption")!.textContent!;
    expect(caption).toContain("2.20s");
    expect(caption).toContain("story");
  });

  it("captures in silence with an empty word caption", async () => {
    fakeService();
    app = mountViews(root, bundle, new ApiClient("http://svc"));
    app.store.dispatch({ type: "seek", time: 0.45 }); // between words
    app.video.videoEl.currentTime = 0.45;

    root.querySelector<HTMLButtonElement>(".screenshot-button")!.click();
    await vi.waitFor(() => {
      expect(root.querySelectorAll(".screenshot-entry").length).toBe(1);
    });
    const caption = root.querySelector(".screenshot-caption")!.textContent!;
    expect(caption).toContain("0.45s");
    expect(caption).not.toContain("“");
  });
});
