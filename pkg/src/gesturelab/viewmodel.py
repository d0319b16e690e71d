"""Renderable artifacts for the four views.

Everything here is a pure function of ingested data: a wrist heatmap over
the gesture space, the two perpendicular hand timelines, per-word transcript
annotations, the phrase/gesture relation graph with glyphs, and hand
trajectories. Missing detections become explicit gaps, never interpolation.
"""

from __future__ import annotations

import string
from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np

from gesturelab.errors import ConfigError, GlyphError
from gesturelab.gesture import (
    KP_L_WRIST,
    KP_R_WRIST,
    GestureSegment,
    GestureSpaceConfig,
    GestureType,
    NormalizedSkeleton,
    WordMetrics,
)
from gesturelab.ingest import TranscriptWord
from gesturelab.semantics import PhraseSpan

GLYPH_SAMPLES = 24

# timeline sample: (timestamp, value) with None marking an undetected wrist
Sample = tuple[float, float | None]
# trajectory point: (timestamp, (x, y)) or (timestamp, None) as a gap marker
TrajectoryPoint = tuple[float, tuple[float, float] | None]

FrameSample = tuple[float, NormalizedSkeleton | None]


@dataclass(frozen=True)
class HeatmapGrid:
    """Wrist-position counts over [-1, 1]^2.

    ``cells[iy][ix]``: ix bins x left to right, iy bins y bottom to top.
    """

    resolution: int
    cells: np.ndarray
    total_samples: int


@dataclass(frozen=True)
class TimelineSeries:
    axis: Literal["vertical_position", "horizontal_position"]
    right_hand: tuple[Sample, ...]
    left_hand: tuple[Sample, ...]


@dataclass(frozen=True)
class TranscriptAnnotation:
    word_index: int
    mini_skeleton: NormalizedSkeleton | None
    spatial_variation: float
    temporal_change: float
    high_variation_flag: bool
    large_change_flag: bool
    raw_spatial: float = 0.0
    raw_temporal: float = 0.0


@dataclass(frozen=True)
class GlyphModel:
    segment_id: int
    average: NormalizedSkeleton
    gesture_type: GestureType
    radial_variation: tuple[float, ...]


@dataclass(frozen=True)
class RelationGraph:
    """Projected phrase and gesture nodes plus their word-overlap links.

    Nodes without a projected point (out-of-vocabulary phrases, degenerate
    segments) are kept with ``point=None`` and never linked.
    """

    phrase_nodes: tuple[tuple[int, tuple[float, float] | None], ...]
    gesture_nodes: tuple[
        tuple[int, tuple[float, float] | None, GlyphModel | None], ...
    ]
    links: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class Trajectory:
    right_hand: tuple[TrajectoryPoint, ...]
    left_hand: tuple[TrajectoryPoint, ...]


def build_heatmap(
    skeletons: Sequence[NormalizedSkeleton], config: GestureSpaceConfig
) -> HeatmapGrid:
    """Bin every detected wrist into an R x R grid over [-1, 1]^2."""
    r = config.grid_resolution
    cells = np.zeros((r, r), dtype=np.int64)
    total = 0
    for sk in skeletons:
        for k in (KP_R_WRIST, KP_L_WRIST):
            if sk.data[k, 2] <= 0:
                continue
            x, y = sk.data[k, 0], sk.data[k, 1]
            ix = min(int((x + 1.0) / 2.0 * r), r - 1)
            iy = min(int((y + 1.0) / 2.0 * r), r - 1)
            cells[iy, ix] += 1
            total += 1
    return HeatmapGrid(resolution=r, cells=cells, total_samples=total)


def heatmap_to_pgm(grid: HeatmapGrid) -> bytes:
    """Plain-text PGM for debugging; top row is y = +1."""
    peak = max(int(grid.cells.max()), 1)
    lines = [f"P2", f"{grid.resolution} {grid.resolution}", str(peak)]
    for iy in range(grid.resolution - 1, -1, -1):
        lines.append(" ".join(str(int(v)) for v in grid.cells[iy]))
    return ("\n".join(lines) + "\n").encode("ascii")


def build_timelines(
    samples: Sequence[FrameSample],
) -> tuple[TimelineSeries, TimelineSeries]:
    """Per-frame wrist positions as (vertical, horizontal) series.

    The vertical series carries wrist y over time, the horizontal series
    wrist x. An undetected wrist (or a frame with no usable skeleton)
    yields a gap sample, keeping both series on the same frame grid.
    """
    def value(sk: NormalizedSkeleton | None, k: int, col: int) -> float | None:
        if sk is None or sk.data[k, 2] <= 0:
            return None
        return float(sk.data[k, col])

    vertical = TimelineSeries(
        axis="vertical_position",
        right_hand=tuple((t, value(sk, KP_R_WRIST, 1)) for t, sk in samples),
        left_hand=tuple((t, value(sk, KP_L_WRIST, 1)) for t, sk in samples),
    )
    horizontal = TimelineSeries(
        axis="horizontal_position",
        right_hand=tuple((t, value(sk, KP_R_WRIST, 0)) for t, sk in samples),
        left_hand=tuple((t, value(sk, KP_L_WRIST, 0)) for t, sk in samples),
    )
    return vertical, horizontal


def annotate_transcript(
    metrics: Sequence[WordMetrics],
    change_threshold: float = 0.5,
    variation_threshold: float = 0.4,
) -> list[TranscriptAnnotation]:
    """Per-word flags via strict comparison against the thresholds."""
    for name, v in (("change", change_threshold), ("variation", variation_threshold)):
        if not (0.0 <= v <= 1.0):
            raise ConfigError(f"{name} threshold must be in [0, 1], got {v}")
    return [
        TranscriptAnnotation(
            word_index=m.word_index,
            mini_skeleton=m.average,
            spatial_variation=m.spatial_variation,
            temporal_change=m.temporal_change,
            high_variation_flag=m.spatial_variation > variation_threshold,
            large_change_flag=m.temporal_change > change_threshold,
            raw_spatial=m.raw_spatial,
            raw_temporal=m.raw_temporal,
        )
        for m in metrics
    ]


def build_glyph(segment: GestureSegment, samples: int = GLYPH_SAMPLES) -> GlyphModel:
    """Resample the segment's variation profile onto a fixed radial ring."""
    if not segment.skeletons or not segment.variation_profile:
        raise GlyphError(f"segment {segment.segment_id} is degenerate")
    profile = np.asarray(segment.variation_profile, dtype=np.float64)
    if samples < 1:
        raise ConfigError("glyph needs at least one sample")
    if len(profile) == 1:
        radial = np.full(samples, profile[0])
    else:
        positions = np.linspace(0.0, len(profile) - 1.0, samples)
        radial = np.interp(positions, np.arange(len(profile)), profile)
    return GlyphModel(
        segment_id=segment.segment_id,
        average=segment.average,
        gesture_type=segment.gesture_type,
        radial_variation=tuple(float(v) for v in radial),
    )


def _ranges_intersect(a: tuple[int, int], b: tuple[int, int]) -> bool:
    return a[0] <= b[1] and b[0] <= a[1]


def build_relation_graph(
    phrases: Sequence[PhraseSpan],
    segments: Sequence[GestureSegment],
    phrase_points: dict[int, tuple[float, float]],
    gesture_points: dict[int, tuple[float, float]],
    glyphs: dict[int, GlyphModel] | None = None,
) -> RelationGraph:
    """Link every projected phrase to every projected segment whose word
    ranges intersect. Unprojected nodes are kept but carry no links."""
    glyphs = glyphs or {}
    phrase_nodes = tuple(
        (p.phrase_id, phrase_points.get(p.phrase_id)) for p in phrases
    )
    gesture_nodes = tuple(
        (s.segment_id, gesture_points.get(s.segment_id), glyphs.get(s.segment_id))
        for s in segments
    )
    links = []
    for p in phrases:
        if p.phrase_id not in phrase_points:
            continue
        for s in segments:
            if s.segment_id not in gesture_points:
                continue
            if _ranges_intersect(p.word_range, s.word_range):
                links.append((p.phrase_id, s.segment_id))
    return RelationGraph(
        phrase_nodes=phrase_nodes,
        gesture_nodes=gesture_nodes,
        links=tuple(links),
    )


def build_trajectory(samples: Sequence[FrameSample]) -> Trajectory:
    """Wrist positions in frame order; missing detections become gaps."""
    def point(sk: NormalizedSkeleton | None, k: int) -> tuple[float, float] | None:
        if sk is None or sk.data[k, 2] <= 0:
            return None
        return (float(sk.data[k, 0]), float(sk.data[k, 1]))

    return Trajectory(
        right_hand=tuple((t, point(sk, KP_R_WRIST)) for t, sk in samples),
        left_hand=tuple((t, point(sk, KP_L_WRIST)) for t, sk in samples),
    )


def _normalize_token(text: str) -> str:
    return text.lower().strip(string.punctuation)


def search_keyword(words: Sequence[TranscriptWord], query: str) -> list[int]:
    """Indices of words matching the query, case-insensitive exact token."""
    needle = _normalize_token(query)
    if not needle:
        return []
    return [i for i, w in enumerate(words) if _normalize_token(w.text) == needle]
