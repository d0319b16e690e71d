/** Wire types mirroring the analysis bundle JSON and the service API. */

export interface SkeletonJson {
  points: [number, number, number][]; // 9 entries of [x, y, confidence]
  height: number;
}

export interface WordJson {
  index: number;
  text: string;
  start: number;
  end: number;
  pos: string | null;
}

export interface WordMetricJson {
  word_index: number;
  mini_skeleton: SkeletonJson | null;
  spatial_variation: number;
  temporal_change: number;
  raw_spatial: number;
  raw_temporal: number;
  // injected by the service from the current thresholds
  high_variation_flag?: boolean;
  large_change_flag?: boolean;
}

export interface PhraseJson {
  id: number;
  kind: "NP" | "VP" | "PP" | "SVO";
  word_range: [number, number];
  text: string;
  start: number;
  end: number;
  occurrence_count: number;
  in_vocabulary: boolean;
}

export interface SegmentJson {
  id: number;
  phrase_ref: number | null;
  word_range: [number, number];
  frame_range: [number, number];
  gesture_type: "closed" | "open" | "others";
  average: SkeletonJson | null;
  variation_profile: number[];
  radial_variation: number[];
}

export type Sample = [number, number | null];

export interface TimelineJson {
  axis: "vertical_position" | "horizontal_position";
  right_hand: Sample[];
  left_hand: Sample[];
}

export interface BundleJson {
  schema_version: number;
  video: { id: string; frame_count: number; fps: number | null; duration: number };
  config: {
    variation_threshold: number;
    change_threshold: number;
    regions: Record<"center_center" | "center" | "periphery", number[]>;
    [key: string]: unknown;
  };
  legend: {
    gesture_types: Record<string, string>;
    hands: { right: string; left: string };
  };
  words: WordJson[];
  word_metrics: WordMetricJson[];
  heatmap: { resolution: number; cells: number[][]; total_samples: number };
  timelines: { vertical: TimelineJson; horizontal: TimelineJson };
  overall_average: SkeletonJson | null;
  phrases: PhraseJson[];
  segments: SegmentJson[];
  relation: {
    phrase_points: Record<string, [number, number]>;
    gesture_points: Record<string, [number, number]>;
    links: [number, number][];
  };
  effective_thresholds?: {
    variation_threshold: number;
    change_threshold: number;
  };
}

export interface VideoInfo {
  video_id: string;
  title: string;
  duration: number | null;
  analysis_status: "pending" | "analyzed" | "failed";
}

export interface BookmarkJson {
  id: string;
  video_id: string;
  kind: "gesture_segment" | "phrase" | "time_range";
  payload: Record<string, unknown>;
  note: string;
  created_at: string;
}

export interface ScreenshotJson {
  id: string;
  video_id: string;
  timestamp: number;
  word: string;
  created_at: string;
}
