"""End-to-end analysis: inputs in, one immutable AnalysisBundle out.

The bundle holds every precomputed view model for a video. It serializes
to a single canonical JSON document (sorted keys, no whitespace), so the
same inputs, config, and seed always produce byte-identical files.
Annotation flags are deliberately not stored: they are recomputed from the
stored scores against whatever thresholds apply at read time.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, replace

import numpy as np

from gesturelab.config import AnalysisConfig
from gesturelab.errors import ConfigError, NormalizationError
from gesturelab.gesture import (
    GestureSegment,
    NormalizedSkeleton,
    WordMetrics,
    average_skeleton,
    build_segment,
    estimate_height,
    normalize_scores,
    normalize_skeleton,
    spatial_variation_raw,
    temporal_change_raw,
)
from gesturelab.ingest import (
    PoseFrame,
    align,
    load_embeddings,
    parse_pose_frames,
    parse_transcript,
)
from gesturelab.projection import project_2d
from gesturelab.semantics import (
    PhraseSpan,
    embed_phrases,
    extract_phrases,
    rule_tag,
)
from gesturelab.similarity import Clustering, DistanceMatrix, cluster, distance_matrix
from gesturelab.viewmodel import (
    GLYPH_SAMPLES,
    HeatmapGrid,
    RelationGraph,
    TimelineSeries,
    build_glyph,
    build_heatmap,
    build_relation_graph,
    build_timelines,
)

SCHEMA_VERSION = 1

LEGEND = {
    "gesture_types": {"closed": "#aec7e8", "open": "#ffbb78", "others": "#cccccc"},
    "hands": {"right": "#9467bd", "left": "#ff7f0e"},
}


@dataclass(frozen=True)
class AnalysisBundle:
    video: dict
    config: AnalysisConfig
    words: tuple[TranscriptWord, ...]
    word_metrics: tuple[WordMetrics, ...]
    heatmap: HeatmapGrid
    vertical_timeline: TimelineSeries
    horizontal_timeline: TimelineSeries
    overall_average: NormalizedSkeleton | None
    phrases: tuple[PhraseSpan, ...]
    segments: tuple[GestureSegment, ...]
    relation: RelationGraph
    glyphs: dict
    tsne_meta: dict
    matrix: DistanceMatrix | None
    clustering: Clustering | None
    diagnostics: dict


def _normalized_frames(
    frames: list[PoseFrame], diagnostics: dict
) -> list[tuple[float, NormalizedSkeleton | None]]:
    samples: list[tuple[float, NormalizedSkeleton | None]] = []
    clamped = 0
    missing = 0
    for frame in frames:
        try:
            height = estimate_height(frame)
            sk = normalize_skeleton(frame, height)
            clamped += sk.clamp_count
            samples.append((frame.timestamp, sk))
        except NormalizationError:
            missing += 1
            samples.append((frame.timestamp, None))
    diagnostics["clamped_coordinates"] = clamped
    diagnostics["frames_without_skeleton"] = missing
    return samples


def _word_metrics(
    words,
    word_ranges,
    samples,
) -> list[WordMetrics]:
    averages: list[NormalizedSkeleton | None] = []
    raw_spatial: list[float] = []
    for lo, hi in word_ranges:
        sks = [sk for _, sk in samples[lo:hi] if sk is not None]
        if sks:
            averages.append(average_skeleton(sks))
            raw_spatial.append(spatial_variation_raw(sks))
        else:
            averages.append(None)
            raw_spatial.append(0.0)

    raw_change: list[float] = [0.0]  # first word has no predecessor
    for prev, cur in zip(averages, averages[1:]):
        if prev is None or cur is None:
            raw_change.append(0.0)
        else:
            raw_change.append(temporal_change_raw(prev, cur))

    norm_spatial = normalize_scores(raw_spatial)
    norm_change = normalize_scores(raw_change)
    return [
        WordMetrics(
            word_index=i,
            spatial_variation=float(norm_spatial[i]),
            temporal_change=float(norm_change[i]),
            average=averages[i],
            raw_spatial=raw_spatial[i],
            raw_temporal=raw_change[i],
        )
        for i in range(len(words))
    ]


def _build_segments(
    phrases, word_ranges, samples, config, diagnostics
) -> list[GestureSegment]:
    segments = []
    degenerate = []
    for phrase in phrases:
        w_lo, w_hi = phrase.word_range
        f_lo = word_ranges[w_lo][0]
        f_hi = word_ranges[w_hi][1]
        if f_lo >= f_hi:
            degenerate.append([phrase.phrase_id, "no frames in phrase interval"])
            continue
        sks = [sk for _, sk in samples[f_lo:f_hi] if sk is not None]
        if not sks:
            degenerate.append([phrase.phrase_id, "no usable skeletons"])
            continue
        segments.append(
            build_segment(
                segment_id=len(segments),
                word_range=phrase.word_range,
                frame_range=(f_lo, f_hi),
                skeletons=sks,
                alpha=config.typing_alpha,
                beta=config.typing_beta,
                phrase_ref=phrase.phrase_id,
            )
        )
    diagnostics["phrases_without_segment"] = degenerate
    return segments


def _project_or_skip(items, n, seed, perplexity, diagnostics, label):
    if n < 3:
        diagnostics[f"{label}_projection_skipped"] = f"only {n} items"
        return None, None
    effective = min(perplexity, float(n - 1))
    return project_2d(items, seed=seed, perplexity=effective), effective


def _default_cluster_count(n: int) -> int:
    return max(1, min(n, int(round(math.sqrt(n)))))


def analyze(
    pose_source,
    transcript_source,
    embeddings_source=None,
    phrase_annotations: list[dict] | None = None,
    config: AnalysisConfig | None = None,
    fps_hint: float | None = None,
    video_id: str = "video",
    seed: int | None = None,
    workers: int = 1,
) -> AnalysisBundle:
    """Run the full pipeline and assemble the bundle for one video."""
    config = config or AnalysisConfig()
    if seed is not None:
        config = replace(config, tsne_seed=seed)
    diagnostics: dict = {}

    frames = parse_pose_frames(pose_source, fps_hint=fps_hint)
    if not frames:
        raise ConfigError("pose input contains no frames")
    words = parse_transcript(transcript_source)
    if not words:
        raise ConfigError("transcript contains no words")
    table = load_embeddings(embeddings_source) if embeddings_source is not None else None

    samples = _normalized_frames(frames, diagnostics)
    skeletons = [sk for _, sk in samples if sk is not None]
    if not skeletons:
        raise ConfigError("no frame yielded a usable skeleton")

    word_ranges = align(frames, words)
    metrics = _word_metrics(words, word_ranges, samples)

    if phrase_annotations is not None:
        phrases = extract_phrases(words, annotations=phrase_annotations)
        diagnostics["fallback_tagger_used"] = False
    elif all(w.pos_tag is not None for w in words):
        phrases = extract_phrases(words)
        diagnostics["fallback_tagger_used"] = False
    else:
        phrases = extract_phrases(rule_tag(words))
        diagnostics["fallback_tagger_used"] = True

    if table is not None:
        phrases = embed_phrases(phrases, table)
        oov = [p.phrase_id for p in phrases if not p.in_vocabulary]
    else:
        oov = [p.phrase_id for p in phrases]
        diagnostics["embeddings_missing"] = True
    diagnostics["out_of_vocabulary_phrases"] = oov

    segments = _build_segments(phrases, word_ranges, samples, config, diagnostics)

    matrix = distance_matrix(segments, workers=workers) if segments else None
    if matrix is not None:
        diagnostics["segments_excluded_from_matrix"] = [
            list(item) for item in matrix.excluded
        ]

    clustering = None
    if matrix is not None and matrix.n >= 1:
        count = config.cluster_count or _default_cluster_count(matrix.n)
        clustering = cluster(matrix, n_clusters=min(count, matrix.n))

    embedded = [p for p in phrases if p.in_vocabulary]
    phrase_points: dict[int, tuple[float, float]] = {}
    perplexity_phrases = None
    if embedded:
        vectors = np.stack([p.embedding for p in embedded])
        points, perplexity_phrases = _project_or_skip(
            vectors, len(embedded), config.tsne_seed, config.tsne_perplexity,
            diagnostics, "phrase",
        )
        if points is not None:
            phrase_points = {
                p.phrase_id: (float(x), float(y))
                for p, (x, y) in zip(embedded, points)
            }

    gesture_points: dict[int, tuple[float, float]] = {}
    perplexity_gestures = None
    if matrix is not None:
        points, perplexity_gestures = _project_or_skip(
            matrix, matrix.n, config.tsne_seed, config.tsne_perplexity,
            diagnostics, "gesture",
        )
        if points is not None:
            gesture_points = {
                sid: (float(x), float(y))
                for sid, (x, y) in zip(matrix.segment_ids, points)
            }

    glyphs = {
        seg.segment_id: build_glyph(seg, samples=GLYPH_SAMPLES) for seg in segments
    }
    relation = build_relation_graph(
        phrases, segments, phrase_points, gesture_points, glyphs
    )

    heatmap = build_heatmap(skeletons, config.regions)
    vertical, horizontal = build_timelines(samples)
    overall = average_skeleton(skeletons)

    times = [f.timestamp for f in frames]
    if len(times) > 1:
        dt = (times[-1] - times[0]) / (len(times) - 1)
        fps = 1.0 / dt if dt > 0 else None
    else:
        dt, fps = 0.04, None
    duration = max(times[-1] + dt, words[-1].end)

    video = {
        "id": video_id,
        "frame_count": len(frames),
        "fps": fps,
        "duration": duration,
    }
    tsne_meta = {
        "seed": config.tsne_seed,
        "iterations": 1000,
        "perplexity_phrases": perplexity_phrases,
        "perplexity_gestures": perplexity_gestures,
    }
    return AnalysisBundle(
        video=video,
        config=config,
        words=tuple(words),
        word_metrics=tuple(metrics),
        heatmap=heatmap,
        vertical_timeline=vertical,
        horizontal_timeline=horizontal,
        overall_average=overall,
        phrases=tuple(phrases),
        segments=tuple(segments),
        relation=relation,
        glyphs=glyphs,
        tsne_meta=tsne_meta,
        matrix=matrix,
        clustering=clustering,
        diagnostics=diagnostics,
    )


def _skeleton_to_json(sk: NormalizedSkeleton | None):
    if sk is None:
        return None
    return {"points": sk.data.tolist(), "height": sk.height_estimate}


def bundle_to_dict(bundle: AnalysisBundle) -> dict:
    """The stable, versioned JSON form of a bundle."""
    def series(ts: TimelineSeries) -> dict:
        return {
            "axis": ts.axis,
            "right_hand": [[t, v] for t, v in ts.right_hand],
            "left_hand": [[t, v] for t, v in ts.left_hand],
        }

    doc = {
        "schema_version": SCHEMA_VERSION,
        "video": bundle.video,
        "config": bundle.config.to_dict(),
        "legend": LEGEND,
        "words": [
            {"index": i, "text": w.text, "start": w.start, "end": w.end,
             "pos": w.pos_tag}
            for i, w in enumerate(bundle.words)
        ],
        "word_metrics": [
            {
                "word_index": m.word_index,
                "mini_skeleton": _skeleton_to_json(m.average),
                "spatial_variation": m.spatial_variation,
                "temporal_change": m.temporal_change,
                "raw_spatial": m.raw_spatial,
                "raw_temporal": m.raw_temporal,
            }
            for m in bundle.word_metrics
        ],
        "heatmap": {
            "resolution": bundle.heatmap.resolution,
            "cells": bundle.heatmap.cells.tolist(),
            "total_samples": bundle.heatmap.total_samples,
        },
        "timelines": {
            "vertical": series(bundle.vertical_timeline),
            "horizontal": series(bundle.horizontal_timeline),
        },
        "overall_average": _skeleton_to_json(bundle.overall_average),
        "phrases": [
            {
                "id": p.phrase_id,
                "kind": p.kind,
                "word_range": list(p.word_range),
                "text": p.text,
                "start": p.start,
                "end": p.end,
                "occurrence_count": p.occurrence_count,
                "in_vocabulary": p.in_vocabulary,
            }
            for p in bundle.phrases
        ],
        "segments": [
            {
                "id": s.segment_id,
                "phrase_ref": s.phrase_ref,
                "word_range": list(s.word_range),
                "frame_range": list(s.frame_range),
                "gesture_type": s.gesture_type,
                "average": _skeleton_to_json(s.average),
                "variation_profile": list(s.variation_profile),
                "radial_variation": list(
                    bundle.glyphs[s.segment_id].radial_variation
                ),
            }
            for s in bundle.segments
        ],
        "relation": {
            "phrase_points": {
                str(pid): list(pt)
                for pid, pt in bundle.relation.phrase_nodes
                if pt is not None
            },
            "gesture_points": {
                str(sid): list(pt)
                for sid, pt, _ in bundle.relation.gesture_nodes
                if pt is not None
            },
            "links": [list(link) for link in bundle.relation.links],
            "tsne": bundle.tsne_meta,
        },
        "distance_matrix": None
        if bundle.matrix is None
        else {
            "segment_ids": list(bundle.matrix.segment_ids),
            "values": bundle.matrix.values.tolist(),
            "excluded": [list(e) for e in bundle.matrix.excluded],
        },
        "clustering": None
        if bundle.clustering is None
        else {
            "labels": {
                str(sid): label
                for sid, label in zip(
                    bundle.matrix.segment_ids, bundle.clustering.labels
                )
            },
            "linkage": bundle.clustering.linkage,
            "cut": list(bundle.clustering.cut),
        },
        "diagnostics": bundle.diagnostics,
    }
    return doc


def bundle_to_json(bundle: AnalysisBundle) -> bytes:
    """Canonical bytes: sorted keys, compact separators, repr floats."""
    return json.dumps(
        bundle_to_dict(bundle), sort_keys=True, separators=(",", ":")
    ).encode("utf-8")


def content_hash(
    pose_bytes: bytes,
    transcript_bytes: bytes,
    config: AnalysisConfig,
    embeddings_bytes: bytes | None = None,
    phrases_bytes: bytes | None = None,
) -> str:
    """Names the bundle file: a digest of all inputs plus the config."""
    h = hashlib.sha256()
    for part in (pose_bytes, transcript_bytes, embeddings_bytes, phrases_bytes):
        h.update(b"\x00" if part is None else hashlib.sha256(part).digest())
    h.update(
        json.dumps(config.to_dict(), sort_keys=True, separators=(",", ":")).encode()
    )
    return h.hexdigest()[:16]
