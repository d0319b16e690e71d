/** App shell: pick a video, load its bundle, wire the four views to one store. */

import { ApiClient } from "./api.js";
import { Store } from "./state.js";
import type { BundleJson } from "./types.js";
import { DynamicView } from "./views/dynamic.js";
import { ExplorationView } from "./views/exploration.js";
import { RelationView } from "./views/relation.js";
import { VideoView } from "./views/video.js";

export interface App {
  store: Store;
  exploration: ExplorationView;
  relation: RelationView;
  video: VideoView;
  dynamic: DynamicView;
}

/** Build the four coordinated views inside `root` for a loaded bundle. */
export function mountViews(
  root: HTMLElement,
  bundle: BundleJson,
  api?: ApiClient,
): App {
  root.innerHTML = "";
  const panel = (cls: string, title: string): HTMLElement => {
    const section = document.createElement("section");
    section.className = `panel ${cls}`;
    const heading = document.createElement("h2");
    heading.textContent = title;
    const body = document.createElement("div");
    body.className = "panel-body";
    section.append(heading, body);
    root.appendChild(section);
    return body;
  };

  const relationEl = panel("panel-relation", "Relation");
  const explorationEl = panel("panel-exploration", "Exploration");
  const videoEl = panel("panel-video", "Video");
  const dynamicEl = panel("panel-dynamic", "Dynamic");

  const store = new Store(bundle);
  return {
    store,
    relation: new RelationView(relationEl, store, api),
    exploration: new ExplorationView(explorationEl, store),
    video: new VideoView(videoEl, store, api),
    dynamic: new DynamicView(dynamicEl, store),
  };
}

export async function boot(root: HTMLElement, base = ""): Promise<App | null> {
  const api = new ApiClient(base);
  const videos = await api.listVideos();
  const analyzed = videos.filter((v) => v.analysis_status === "analyzed");
  if (!analyzed.length) {
    root.textContent = "No analyzed videos in the data root.";
    return null;
  }

  const picker = document.createElement("select");
  picker.className = "video-picker";
  for (const video of analyzed) {
    const option = document.createElement("option");
    option.value = video.video_id;
    option.textContent = video.title;
    picker.appendChild(option);
  }
  document.body.prepend(picker);

  const viewsRoot = document.createElement("div");
  viewsRoot.className = "views-grid";
  root.appendChild(viewsRoot);

  const load = async (videoId: string) => {
    try {
      const bundle = await api.getBundle(videoId);
      mountViews(viewsRoot, bundle, api);
    } catch (error) {
      viewsRoot.innerHTML = "";
      const panel = document.createElement("div");
      panel.className = "error-panel";
      panel.textContent = `Failed to load ${videoId}: ${String(error)}`;
      const retry = document.createElement("button");
      retry.textContent = "retry";
      retry.addEventListener("click", () => void load(videoId));
      panel.appendChild(retry);
      viewsRoot.appendChild(panel);
    }
  };

  picker.addEventListener("change", () => void load(picker.value));
  await load(analyzed[0].video_id);
  return null;
}
