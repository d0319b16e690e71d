"""Gesture distances, DTW over segments, pairwise matrices, and clustering.

The frame distance weights keypoint displacement by the first argument's
confidences, so it is directed; DTW and clustering run on the symmetrized
mean of the two directions. DTW uses the step set {(1,0),(0,1),(1,1)} and
reports total path cost divided by warping-path length, with ties in total
cost broken toward the shorter path.
"""

from __future__ import annotations

import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np

from gesturelab import kernels
from gesturelab.errors import ConfigError, DegenerateFrameError, EmptySegmentError
from gesturelab.gesture import GestureSegment, NormalizedSkeleton


def frame_distance(f: NormalizedSkeleton, g: NormalizedSkeleton) -> float:
    """Directed distance: mean keypoint displacement weighted by f's confidences.

    D(F, G) = sum_k F_c_k * ||F_xy_k - G_xy_k|| / sum_k F_c_k
    """
    fd, gd = f.data, g.data
    num = 0.0
    weight = 0.0
    for k in range(fd.shape[0]):
        dx = fd[k, 0] - gd[k, 0]
        dy = fd[k, 1] - gd[k, 1]
        dist = math.sqrt(dx * dx + dy * dy)
        num = num + fd[k, 2] * dist
        weight = weight + fd[k, 2]
    if weight <= 0.0:
        raise DegenerateFrameError(
            "all confidences of the weighting frame are zero"
        )
    return float(num / weight)


def frame_distance_sym(f: NormalizedSkeleton, g: NormalizedSkeleton) -> float:
    """Mean of the defined directed distances D(f, g) and D(g, f)."""
    try:
        d_fg = frame_distance(f, g)
    except DegenerateFrameError:
        return frame_distance(g, f)
    try:
        d_gf = frame_distance(g, f)
    except DegenerateFrameError:
        return d_fg
    return 0.5 * (d_fg + d_gf)


def _stack(skeletons: Sequence[NormalizedSkeleton]) -> np.ndarray:
    return np.ascontiguousarray(
        np.stack([s.data for s in skeletons]), dtype=np.float64
    )


def dtw_distance(
    a: Sequence[NormalizedSkeleton], b: Sequence[NormalizedSkeleton]
) -> float:
    """Path-length-normalized DTW distance between two skeleton sequences."""
    if not len(a) or not len(b):
        raise EmptySegmentError("dtw_distance requires non-empty sequences")
    arr_a, arr_b = _stack(a), _stack(b)
    sums_a = arr_a[:, :, 2].sum(axis=1)
    sums_b = arr_b[:, :, 2].sum(axis=1)
    if (sums_a == 0).any() and (sums_b == 0).any():
        raise DegenerateFrameError(
            "both sequences contain frames with all-zero confidence"
        )
    return float(kernels.dtw_pair(arr_a, arr_b))


@dataclass(frozen=True)
class DistanceMatrix:
    """Symmetric pairwise DTW distances over the included segments.

    ``segment_ids[i]`` is the original id behind row/column i; segments that
    could not be compared are listed in ``excluded`` with a reason and have
    no row.
    """

    values: np.ndarray
    segment_ids: tuple[int, ...]
    excluded: tuple[tuple[int, str], ...] = ()

    @property
    def n(self) -> int:
        return len(self.segment_ids)

    def to_csv(self) -> str:
        buf = io.StringIO()
        header = ["segment"] + [str(s) for s in self.segment_ids]
        buf.write(",".join(header) + "\n")
        for i, sid in enumerate(self.segment_ids):
            row = [str(sid)] + [repr(float(v)) for v in self.values[i]]
            buf.write(",".join(row) + "\n")
        return buf.getvalue()


def distance_matrix(
    segments: Sequence[GestureSegment], workers: int = 1
) -> DistanceMatrix:
    """Pairwise dtw_distance over all comparable segments.

    Degenerate segments (no skeletons, or containing an all-zero-confidence
    frame) are excluded and reported instead of poisoning the matrix. Cells
    are independent, so the upper triangle may be computed in parallel.
    """
    if not segments:
        raise EmptySegmentError("distance_matrix requires at least one segment")

    included: list[GestureSegment] = []
    excluded: list[tuple[int, str]] = []
    for seg in segments:
        if not seg.skeletons:
            excluded.append((seg.segment_id, "no skeletons"))
        elif any(s.confidence.sum() == 0 for s in seg.skeletons):
            excluded.append((seg.segment_id, "all-zero-confidence frame"))
        else:
            included.append(seg)

    n = len(included)
    values = np.zeros((n, n), dtype=np.float64)
    arrays = [_stack(seg.skeletons) for seg in included]
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]

    def cell(pair: tuple[int, int]) -> float:
        i, j = pair
        return float(kernels.dtw_pair(arrays[i], arrays[j]))

    if workers > 1 and pairs:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(cell, pairs))
    else:
        results = [cell(p) for p in pairs]
    for (i, j), v in zip(pairs, results):
        values[i, j] = v
        values[j, i] = v

    return DistanceMatrix(
        values=values,
        segment_ids=tuple(seg.segment_id for seg in included),
        excluded=tuple(excluded),
    )


@dataclass(frozen=True)
class Clustering:
    """Agglomerative grouping of matrix rows; ids contiguous from 0."""

    labels: tuple[int, ...]
    linkage: Literal["average"]
    cut: tuple[str, float]


def cluster(
    matrix: DistanceMatrix,
    n_clusters: int | None = None,
    threshold: float | None = None,
) -> Clustering:
    """Average-linkage agglomerative clustering on a precomputed matrix.

    Exactly one of ``n_clusters`` / ``threshold`` selects the cut. Ties in
    the minimum linkage distance merge the pair with the smallest indices,
    so identical matrices always produce identical labelings.
    """
    if (n_clusters is None) == (threshold is None):
        raise ConfigError("specify exactly one of n_clusters or threshold")
    n = matrix.n
    if n_clusters is not None and not (1 <= n_clusters <= n):
        raise ConfigError(f"n_clusters must be in [1, {n}], got {n_clusters}")
    if threshold is not None and threshold < 0:
        raise ConfigError(f"threshold must be non-negative, got {threshold}")

    # each active cluster is keyed by its smallest member index
    members: dict[int, list[int]] = {i: [i] for i in range(n)}
    dist = matrix.values.astype(np.float64, copy=True)
    target = n_clusters if n_clusters is not None else 1

    while len(members) > target:
        reps = sorted(members)
        sub = dist[np.ix_(reps, reps)].copy()
        sub[np.tril_indices(len(reps))] = np.inf
        flat = int(np.argmin(sub))  # row-major: first hit is the smallest pair
        i, j = divmod(flat, len(reps))
        best = sub[i, j]
        if threshold is not None and best > threshold:
            break
        ra, rb = reps[i], reps[j]
        size_a, size_b = len(members[ra]), len(members[rb])
        merged_row = (size_a * dist[ra] + size_b * dist[rb]) / (size_a + size_b)
        dist[ra] = merged_row
        dist[:, ra] = merged_row
        dist[ra, ra] = 0.0
        members[ra] = members[ra] + members[rb]
        del members[rb]

    labels = [0] * n
    for cluster_id, rep in enumerate(sorted(members)):
        for idx in members[rep]:
            labels[idx] = cluster_id
    cut = ("count", float(n_clusters)) if n_clusters is not None else (
        "threshold",
        float(threshold),
    )
    return Clustering(labels=tuple(labels), linkage="average", cut=cut)
