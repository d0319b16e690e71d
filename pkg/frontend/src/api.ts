/** Thin typed client over the analysis service. */

import type {
  BookmarkJson,
  BundleJson,
  ScreenshotJson,
  VideoInfo,
} from "./types.js";

export class ApiClient {
  constructor(private readonly base: string = "") {}

  private async json<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await fetch(this.base + path, init);
    if (!response.ok) {
      const body = await response.text();
      throw new Error(`${init?.method ?? "GET"} ${path} -> ${response.status}: ${body}`);
    }
    if (response.status === 204) return undefined as T;
    return (await response.json()) as T;
  }

  listVideos(): Promise<VideoInfo[]> {
    return this.json("/videos");
  }

  getBundle(videoId: string): Promise<BundleJson> {
    return this.json(`/videos/${encodeURIComponent(videoId)}/bundle`);
  }

  mediaUrl(videoId: string): string {
    return `${this.base}/videos/${encodeURIComponent(videoId)}/media`;
  }

  search(videoId: string, q: string): Promise<{ q: string; word_indices: number[] }> {
    const query = new URLSearchParams({ q }).toString();
    return this.json(`/videos/${encodeURIComponent(videoId)}/search?${query}`);
  }

  listBookmarks(videoId: string): Promise<BookmarkJson[]> {
    return this.json(`/videos/${encodeURIComponent(videoId)}/bookmarks`);
  }

  createBookmark(
    videoId: string,
    kind: BookmarkJson["kind"],
    payload: Record<string, unknown>,
    note = "",
  ): Promise<BookmarkJson> {
    return this.json(`/videos/${encodeURIComponent(videoId)}/bookmarks`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ kind, payload, note }),
    });
  }

  deleteBookmark(videoId: string, bookmarkId: string): Promise<void> {
    return this.json(
      `/videos/${encodeURIComponent(videoId)}/bookmarks/${bookmarkId}`,
      { method: "DELETE" },
    );
  }

  listScreenshots(videoId: string): Promise<ScreenshotJson[]> {
    return this.json(`/videos/${encodeURIComponent(videoId)}/screenshots`);
  }

  recordScreenshot(videoId: string, timestamp: number): Promise<ScreenshotJson> {
    return this.json(`/videos/${encodeURIComponent(videoId)}/screenshots`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ timestamp }),
    });
  }

  getConfig(): Promise<Record<string, unknown>> {
    return this.json("/config");
  }

  putConfig(config: Record<string, unknown>): Promise<Record<string, unknown>> {
    return this.json("/config", {
      method: "PUT",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(config),
    });
  }
}
