"""Gesture analytics for presentation videos.

Ingests pose-keypoint frames and word-timestamped transcripts, maps
skeletons into a normalized gesture space, segments gestures by word
phrases, measures similarity with confidence-weighted DTW, and builds the
view models behind the exploration UI (heatmap, timelines, transcript
annotations, relation graph, trajectories).
"""

from gesturelab.config import AnalysisConfig, load_config, save_config
from gesturelab.gesture import (
    GestureSegment,
    GestureSpaceConfig,
    NormalizedSkeleton,
    Rect,
    WordMetrics,
    average_skeleton,
    classify_gesture_type,
    classify_region,
    estimate_height,
    normalize_scores,
    normalize_skeleton,
    spatial_variation_raw,
    temporal_change_raw,
)
from gesturelab.ingest import (
    EmbeddingTable,
    Keypoint,
    PoseFrame,
    TranscriptWord,
    align,
    load_embeddings,
    parse_pose_frames,
    parse_transcript,
)
from gesturelab.kernels import BACKEND as KERNEL_BACKEND
from gesturelab.pipeline import AnalysisBundle, analyze, bundle_to_dict, bundle_to_json
from gesturelab.projection import project_2d
from gesturelab.semantics import (
    PhraseSpan,
    extract_phrases,
    filter_phrases,
    phrase_embedding,
)
from gesturelab.similarity import (
    Clustering,
    DistanceMatrix,
    cluster,
    distance_matrix,
    dtw_distance,
    frame_distance,
    frame_distance_sym,
)
from gesturelab.viewmodel import (
    GlyphModel,
    HeatmapGrid,
    RelationGraph,
    TimelineSeries,
    TranscriptAnnotation,
    annotate_transcript,
    build_glyph,
    build_heatmap,
    build_relation_graph,
    build_timelines,
    build_trajectory,
    search_keyword,
)

__version__ = "0.1.0"

__all__ = [
    "AnalysisBundle",
    "AnalysisConfig",
    "Clustering",
    "DistanceMatrix",
    "EmbeddingTable",
    "GestureSegment",
    "GestureSpaceConfig",
    "GlyphModel",
    "HeatmapGrid",
    "KERNEL_BACKEND",
    "Keypoint",
    "NormalizedSkeleton",
    "PhraseSpan",
    "PoseFrame",
    "Rect",
    "RelationGraph",
    "TimelineSeries",
    "TranscriptAnnotation",
    "TranscriptWord",
    "WordMetrics",
    "align",
    "analyze",
    "annotate_transcript",
    "average_skeleton",
    "build_glyph",
    "build_heatmap",
    "build_relation_graph",
    "build_timelines",
    "build_trajectory",
    "bundle_to_dict",
    "bundle_to_json",
    "classify_gesture_type",
    "classify_region",
    "cluster",
    "distance_matrix",
    "dtw_distance",
    "estimate_height",
    "extract_phrases",
    "filter_phrases",
    "frame_distance",
    "frame_distance_sym",
    "load_config",
    "load_embeddings",
    "normalize_scores",
    "normalize_skeleton",
    "parse_pose_frames",
    "parse_transcript",
    "phrase_embedding",
    "project_2d",
    "save_config",
    "search_keyword",
    "spatial_variation_raw",
    "temporal_change_raw",
]
