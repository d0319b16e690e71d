/** A small synthetic bundle: 10 words over 5 s, two phrases, two segments. */

import type { BundleJson, SkeletonJson } from "../src/types.js";

export function skeleton(dx = 0, dy = 0): SkeletonJson {
  const rest: [number, number][] = [
    [0, 0], [0, -0.15], [-0.15, -0.15], [-0.18, -0.32], [-0.14, -0.48],
    [0.15, -0.15], [0.18, -0.32], [0.14, -0.48], [0, -0.55],
  ];
  return {
    points: rest.map(([x, y]) => [x + dx, y + dy, 0.9]) as [number, number, number][],
    height: 400,
  };
}

const WORD_TEXTS = [
  "the", "coach", "tells", "a", "story",
  "people", "tell", "good", "stories", "now",
];

export function makeBundle(): BundleJson {
  const words = WORD_TEXTS.map((text, index) => ({
    index,
    text,
    start: index * 0.5,
    end: index * 0.5 + 0.4,
    pos: null,
  }));

  const metrics = words.map((w) => ({
    word_index: w.index,
    mini_skeleton: skeleton(0, w.index * 0.01),
    spatial_variation: w.index / 10,
    temporal_change: w.index / 20,
    raw_spatial: w.index / 10,
    raw_temporal: w.index / 20,
  }));

  // 25 samples over 5 s; the right wrist sweeps upward
  const times = Array.from({ length: 25 }, (_, i) => i * 0.2);
  const vertical = {
    axis: "vertical_position" as const,
    right_hand: times.map((t) => [t, -0.48 + 0.1 * t] as [number, number | null]),
    left_hand: times.map((t) => [t, -0.48] as [number, number | null]),
  };
  const horizontal = {
    axis: "horizontal_position" as const,
    right_hand: times.map((t) => [t, -0.14 + 0.05 * t] as [number, number | null]),
    left_hand: times.map((t) => [t, 0.14] as [number, number | null]),
  };

  const cells = Array.from({ length: 8 }, () => Array(8).fill(0));
  cells[2][3] = 5;
  cells[4][4] = 2;

  return {
    schema_version: 1,
    video: { id: "vid1", frame_count: 125, fps: 25, duration: 5.0 },
    config: {
      variation_threshold: 0.4,
      change_threshold: 0.5,
      regions: {
        center_center: [-0.18, 0.18, -0.25, 0.1],
        center: [-0.4, 0.4, -0.45, 0.22],
        periphery: [-0.75, 0.75, -0.8, 0.45],
      },
    },
    legend: {
      gesture_types: { closed: "#aec7e8", open: "#ffbb78", others: "#cccccc" },
      hands: { right: "#9467bd", left: "#ff7f0e" },
    },
    words,
    word_metrics: metrics,
    heatmap: { resolution: 8, cells, total_samples: 7 },
    timelines: { vertical, horizontal },
    overall_average: skeleton(),
    phrases: [
      {
        id: 0, kind: "NP", word_range: [0, 1], text: "the coach",
        start: 0.0, end: 0.9, occurrence_count: 1, in_vocabulary: true,
      },
      {
        id: 1, kind: "SVO", word_range: [0, 4], text: "the coach tells a story",
        start: 0.0, end: 2.4, occurrence_count: 1, in_vocabulary: true,
      },
      {
        id: 2, kind: "NP", word_range: [8, 8], text: "stories",
        start: 4.0, end: 4.4, occurrence_count: 1, in_vocabulary: false,
      },
    ],
    segments: [
      {
        id: 0, phrase_ref: 0, word_range: [0, 1], frame_range: [0, 23],
        gesture_type: "closed", average: skeleton(),
        variation_profile: [0, 0.1, 0.2],
        radial_variation: Array(24).fill(0.1),
      },
      {
        id: 1, phrase_ref: 1, word_range: [0, 4], frame_range: [0, 60],
        gesture_type: "open", average: skeleton(0.1, 0.1),
        variation_profile: [0.2, 0.3],
        radial_variation: Array(24).fill(0.3),
      },
    ],
    relation: {
      phrase_points: { "0": [-0.5, 0.2], "1": [0.4, -0.3] },
      gesture_points: { "0": [-0.2, 0.6], "1": [0.3, -0.5] },
      links: [
        [0, 0], [0, 1],
        [1, 0], [1, 1],
      ],
    },
    effective_thresholds: { variation_threshold: 0.4, change_threshold: 0.5 },
  };
}
