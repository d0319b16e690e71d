"""Gesture-space mapping and per-segment descriptors.

Raw pixel keypoints are mapped into a unified space: keypoint 0 becomes the
origin, coordinates are divided by the person's estimated height, and the
y axis is flipped so "up" is positive. Only the nine upper-body keypoints
(indices 0-8 of the 25-point layout) survive the mapping.

The space carries three nested rectangular regions (center-center, center,
periphery) used to describe where hands are placed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np

from gesturelab.errors import (
    EmptySegmentError,
    NormalizationError,
    TypingError,
)
from gesturelab.ingest import PoseFrame

# 25-point layout indices used here
KP_ORIGIN = 0
KP_NECK = 1
KP_R_SHOULDER = 2
KP_R_ELBOW = 3
KP_R_WRIST = 4
KP_L_SHOULDER = 5
KP_L_ELBOW = 6
KP_L_WRIST = 7
KP_MID_HIP = 8
KP_R_ANKLE = 11
KP_L_ANKLE = 14

UPPER_BODY_COUNT = 9

# torso-only height estimate: origin-to-mid-hip span scaled to full stature
TRUNK_TO_HEIGHT = 2.2

Region = Literal["center_center", "center", "periphery", "outside"]
GestureType = Literal["closed", "open", "others"]


@dataclass(frozen=True)
class Rect:
    """Axis-aligned rectangle in normalized units, y up."""

    x_min: float
    x_max: float
    y_min: float
    y_max: float

    def contains(self, x: float, y: float) -> bool:
        return self.x_min <= x <= self.x_max and self.y_min <= y <= self.y_max

    def strictly_inside(self, other: "Rect") -> bool:
        return (
            other.x_min < self.x_min
            and self.x_max < other.x_max
            and other.y_min < self.y_min
            and self.y_max < other.y_max
        )


DEFAULT_CENTER_CENTER = Rect(-0.18, 0.18, -0.25, 0.10)
DEFAULT_CENTER = Rect(-0.40, 0.40, -0.45, 0.22)
DEFAULT_PERIPHERY = Rect(-0.75, 0.75, -0.80, 0.45)


@dataclass(frozen=True)
class GestureSpaceConfig:
    center_center: Rect = DEFAULT_CENTER_CENTER
    center: Rect = DEFAULT_CENTER
    periphery: Rect = DEFAULT_PERIPHERY
    grid_resolution: int = 64

    def __post_init__(self):
        if not self.center_center.strictly_inside(self.center):
            raise ValueError("center_center must nest strictly inside center")
        if not self.center.strictly_inside(self.periphery):
            raise ValueError("center must nest strictly inside periphery")
        if self.grid_resolution < 1:
            raise ValueError("grid_resolution must be positive")


@dataclass(frozen=True)
class NormalizedSkeleton:
    """Nine upper-body keypoints in origin-centered [-1, 1] coordinates.

    ``data`` is a (9, 3) float64 array with columns x, y, confidence.
    ``clamp_count`` records how many coordinates were clipped into range.
    """

    data: np.ndarray
    height_estimate: float
    clamp_count: int = 0

    @property
    def xy(self) -> np.ndarray:
        return self.data[:, 0:2]

    @property
    def confidence(self) -> np.ndarray:
        return self.data[:, 2]

    def detected(self, k: int) -> bool:
        return self.data[k, 2] > 0.0


@dataclass(frozen=True)
class GestureSegment:
    """A phrase-aligned run of skeletons with its derived descriptors."""

    segment_id: int
    word_range: tuple[int, int]  # word indices, inclusive
    frame_range: tuple[int, int]  # frame indices, half-open
    skeletons: tuple[NormalizedSkeleton, ...]
    gesture_type: GestureType
    average: NormalizedSkeleton
    variation_profile: tuple[float, ...]
    phrase_ref: int | None = None


@dataclass(frozen=True)
class WordMetrics:
    word_index: int
    spatial_variation: float
    temporal_change: float
    average: NormalizedSkeleton | None
    raw_spatial: float = 0.0
    raw_temporal: float = 0.0


def estimate_height(frame: PoseFrame) -> float:
    """Estimate the speaker's height in pixels for one frame.

    Prefers the vertical span from keypoint 0 to the mean detected ankle;
    falls back to 2.2x the origin-to-mid-hip span, then to the declared
    frame height. Each rule is skipped when it would yield a non-positive
    span.
    """
    if not frame.detected(KP_ORIGIN):
        raise NormalizationError(
            f"frame {frame.frame_index}: keypoint 0 undetected, cannot normalize"
        )
    y0 = frame.keypoints[KP_ORIGIN, 1]

    ankle_ys = [
        frame.keypoints[k, 1] for k in (KP_R_ANKLE, KP_L_ANKLE) if frame.detected(k)
    ]
    if ankle_ys:
        span = abs(float(np.mean(ankle_ys)) - y0)
        if span > 0:
            return float(span)

    if frame.detected(KP_MID_HIP):
        span = TRUNK_TO_HEIGHT * abs(frame.keypoints[KP_MID_HIP, 1] - y0)
        if span > 0:
            return float(span)

    if frame.frame_size is not None and frame.frame_size[1] > 0:
        return float(frame.frame_size[1])
    raise NormalizationError(
        f"frame {frame.frame_index}: no ankle, mid-hip, or frame height to "
        "estimate the person's height"
    )


def normalize_skeleton(frame: PoseFrame, height: float) -> NormalizedSkeleton:
    """Map the upper-body keypoints into the normalized gesture space.

    Keypoint 0 becomes (0, 0); other coordinates are offsets from it divided
    by ``height`` with the y axis flipped so positive y points up. Values
    are clamped to [-1, 1] (counted, not fatal). Confidences are copied and
    undetected keypoints stay at (0, 0) with confidence 0.
    """
    if height <= 0:
        raise NormalizationError(f"height must be positive, got {height}")
    if not frame.detected(KP_ORIGIN):
        raise NormalizationError(
            f"frame {frame.frame_index}: keypoint 0 undetected, cannot normalize"
        )
    x0, y0 = frame.keypoints[KP_ORIGIN, 0], frame.keypoints[KP_ORIGIN, 1]
    out = np.zeros((UPPER_BODY_COUNT, 3), dtype=np.float64)
    clamped = 0
    for k in range(UPPER_BODY_COUNT):
        x, y, c = frame.keypoints[k]
        if c <= 0.0:
            continue
        nx = (x - x0) / height
        ny = (y0 - y) / height
        cx = min(1.0, max(-1.0, nx))
        cy = min(1.0, max(-1.0, ny))
        clamped += int(cx != nx) + int(cy != ny)
        out[k] = (cx, cy, c)
    return NormalizedSkeleton(data=out, height_estimate=float(height), clamp_count=clamped)


def classify_region(point: tuple[float, float], config: GestureSpaceConfig) -> Region:
    """Innermost region containing the point; boundaries belong inward."""
    x, y = point
    if config.center_center.contains(x, y):
        return "center_center"
    if config.center.contains(x, y):
        return "center"
    if config.periphery.contains(x, y):
        return "periphery"
    return "outside"


def classify_gesture_type(
    skeletons: Sequence[NormalizedSkeleton],
    alpha: float = 0.8,
    beta: float = 1.6,
) -> GestureType:
    """Classify a segment as closed / open / others from its average skeleton.

    With shoulder span s and inter-wrist distance d: closed requires
    d < alpha*s with both wrists inside the torso x-span; open requires
    d > beta*s with each wrist the outermost x-coordinate on its side.
    Everything else, including skeletons with undetected shoulders, is
    others.
    """
    avg = average_skeleton(skeletons)
    if not (avg.detected(KP_R_WRIST) and avg.detected(KP_L_WRIST)):
        raise TypingError("wrists never detected in segment, cannot type gesture")
    if not (avg.detected(KP_R_SHOULDER) and avg.detected(KP_L_SHOULDER)):
        return "others"

    rw, lw = avg.xy[KP_R_WRIST], avg.xy[KP_L_WRIST]
    rs_x, ls_x = avg.data[KP_R_SHOULDER, 0], avg.data[KP_L_SHOULDER, 0]
    span = abs(rs_x - ls_x)
    d = float(np.hypot(rw[0] - lw[0], rw[1] - lw[1]))

    torso_lo, torso_hi = min(rs_x, ls_x), max(rs_x, ls_x)
    if d < alpha * span and torso_lo <= rw[0] <= torso_hi and torso_lo <= lw[0] <= torso_hi:
        return "closed"

    detected_x = avg.data[avg.confidence > 0, 0]
    outer_lo, outer_hi = detected_x.min(), detected_x.max()
    wrist_lo, wrist_hi = min(rw[0], lw[0]), max(rw[0], lw[0])
    if d > beta * span and wrist_lo <= outer_lo and wrist_hi >= outer_hi:
        return "open"
    return "others"


def average_skeleton(skeletons: Sequence[NormalizedSkeleton]) -> NormalizedSkeleton:
    """Confidence-weighted mean skeleton.

    Coordinates are weighted by per-frame confidence; the output confidence
    is the plain mean of input confidences. Keypoints never detected keep
    confidence 0 and the origin position.
    """
    if not skeletons:
        raise EmptySegmentError("cannot average an empty skeleton sequence")
    stack = np.stack([s.data for s in skeletons])  # (T, 9, 3)
    conf = stack[:, :, 2]
    weight = conf.sum(axis=0)  # (9,)
    out = np.zeros((UPPER_BODY_COUNT, 3), dtype=np.float64)
    valid = weight > 0
    out[valid, 0] = (stack[:, valid, 0] * conf[:, valid]).sum(axis=0) / weight[valid]
    out[valid, 1] = (stack[:, valid, 1] * conf[:, valid]).sum(axis=0) / weight[valid]
    out[:, 2] = conf.mean(axis=0)
    height = float(np.mean([s.height_estimate for s in skeletons]))
    return NormalizedSkeleton(data=out, height_estimate=height)


def spatial_variation_raw(skeletons: Sequence[NormalizedSkeleton]) -> float:
    """Mean deviation of a run of skeletons from their average skeleton."""
    from gesturelab.similarity import frame_distance

    avg = average_skeleton(skeletons)
    return float(np.mean([frame_distance(s, avg) for s in skeletons]))


def temporal_change_raw(
    word_a_avg: NormalizedSkeleton, word_b_avg: NormalizedSkeleton
) -> float:
    """Symmetrized distance between two consecutive word averages."""
    from gesturelab.similarity import frame_distance_sym

    return frame_distance_sym(word_a_avg, word_b_avg)


def normalize_scores(raw: Sequence[float]) -> np.ndarray:
    """Min-max normalize to [0, 1]; a constant sequence maps to all zeros."""
    arr = np.asarray(raw, dtype=np.float64)
    if arr.size == 0:
        raise EmptySegmentError("cannot normalize an empty score sequence")
    lo, hi = arr.min(), arr.max()
    if hi == lo:
        return np.zeros_like(arr)
    return (arr - lo) / (hi - lo)


def build_segment(
    segment_id: int,
    word_range: tuple[int, int],
    frame_range: tuple[int, int],
    skeletons: Sequence[NormalizedSkeleton],
    alpha: float = 0.8,
    beta: float = 1.6,
    phrase_ref: int | None = None,
) -> GestureSegment:
    """Assemble a GestureSegment with its average, type, and variation profile.

    Segments whose wrists were never detected fall back to type "others"
    (the caller records the event in diagnostics).
    """
    from gesturelab.errors import DegenerateFrameError
    from gesturelab.similarity import frame_distance

    if not skeletons:
        raise EmptySegmentError(f"segment {segment_id} has no skeletons")
    avg = average_skeleton(skeletons)
    try:
        gtype: GestureType = classify_gesture_type(skeletons, alpha=alpha, beta=beta)
    except TypingError:
        gtype = "others"
    profile = []
    for s in skeletons:
        try:
            profile.append(float(frame_distance(s, avg)))
        except DegenerateFrameError:
            profile.append(0.0)  # frame with nothing detected deviates by nothing
    return GestureSegment(
        segment_id=segment_id,
        word_range=word_range,
        frame_range=frame_range,
        skeletons=tuple(skeletons),
        gesture_type=gtype,
        average=avg,
        variation_profile=tuple(profile),
        phrase_ref=phrase_ref,
    )
