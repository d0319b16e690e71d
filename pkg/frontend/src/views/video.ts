/** Video view: playback synced to the shared time cursor, screenshot
 * capture, and the screenshot gallery captioned with time and word.
 */

import type { ApiClient } from "../api.js";
import { Store } from "../state.js";
import type { SelectionState } from "../state.js";
import type { ScreenshotJson } from "../types.js";

const SEEK_EPSILON = 0.3; // ignore cursor echoes from our own timeupdate

export class VideoView {
  readonly videoEl: HTMLVideoElement;
  private readonly galleryEl: HTMLUListElement;
  private suppressSeekEcho = false;

  constructor(
    private readonly root: HTMLElement,
    private readonly store: Store,
    private readonly api?: ApiClient,
  ) {
    root.classList.add("video-view");
    root.innerHTML = "";

    this.videoEl = document.createElement("video");
    this.videoEl.controls = true;
    this.videoEl.className = "player";
    if (api) this.videoEl.src = api.mediaUrl(store.current.videoId);
    this.videoEl.addEventListener("timeupdate", () => {
      if (this.suppressSeekEcho) return;
      this.store.dispatch({ type: "seek", time: this.videoEl.currentTime });
    });

    const shoot = document.createElement("button");
    shoot.className = "screenshot-button";
    shoot.textContent = "screenshot";
    shoot.addEventListener("click", () => void this.capture());

    this.galleryEl = document.createElement("ul");
    this.galleryEl.className = "screenshot-gallery";

    root.append(this.videoEl, shoot, this.galleryEl);
    store.subscribe((state) => this.onState(state));
    void this.refreshGallery();
  }

  private onState(state: SelectionState): void {
    if (Math.abs(this.videoEl.currentTime - state.timeCursor) > SEEK_EPSILON) {
      this.suppressSeekEcho = true;
      try {
        this.videoEl.currentTime = state.timeCursor;
      } finally {
        this.suppressSeekEcho = false;
      }
    }
  }

  private async capture(): Promise<void> {
    if (!this.api) return;
    const timestamp = this.videoEl.currentTime ?? this.store.current.timeCursor;
    try {
      await this.api.recordScreenshot(this.store.current.videoId, timestamp);
      await this.refreshGallery();
    } catch (error) {
      console.error("screenshot failed", error);
    }
  }

  async refreshGallery(): Promise<void> {
    if (!this.api) return;
    let records: ScreenshotJson[];
    try {
      records = await this.api.listScreenshots(this.store.current.videoId);
    } catch (error) {
      console.error("screenshot list failed", error);
      return;
    }
    this.galleryEl.innerHTML = "";
    for (const record of records) {
      const item = document.createElement("li");
      item.className = "screenshot-entry";
      const thumb = this.thumbnail();
      const caption = document.createElement("span");
      caption.className = "screenshot-caption";
      caption.textContent = record.word
        ? `${record.timestamp.toFixed(2)}s — “${record.word}”`
        : `${record.timestamp.toFixed(2)}s`;
      item.append(thumb, caption);
      item.addEventListener("click", () =>
        this.store.dispatch({ type: "seek", time: record.timestamp }),
      );
      this.galleryEl.appendChild(item);
    }
  }

  /** Frame grab from the video element; falls back to a plain box where
   * no frame is decoded (headless test DOM reports videoWidth 0). */
  private thumbnail(): HTMLElement {
    if (this.videoEl.videoWidth > 0) {
      try {
        const canvas = document.createElement("canvas");
        canvas.width = 96;
        canvas.height = 54;
        const ctx = canvas.getContext("2d");
        if (ctx) {
          ctx.drawImage(this.videoEl, 0, 0, canvas.width, canvas.height);
          canvas.className = "screenshot-thumb";
          return canvas;
        }
      } catch {
        // fall through to the placeholder
      }
    }
    const box = document.createElement("div");
    box.className = "screenshot-thumb placeholder";
    return box;
  }
}
