"""Pure-numpy DTW kernel, the fallback when the compiled extension is absent.

Arithmetic is kept bit-identical to the compiled kernel: keypoint terms are
accumulated in ascending-k order, the symmetrized cost is 0.5 * (d_fg + d_gf),
and the dynamic program minimizes (total cost, path length) lexicographically.
The recurrence is swept along anti-diagonals so the inner loop stays in numpy.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"

_LEN_SENTINEL = np.iinfo(np.int64).max // 2


def local_cost_matrix(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Symmetrized frame distances for every frame pair.

    ``a`` is (n, K, 3), ``b`` is (m, K, 3) with columns x, y, confidence.
    Rows/columns whose confidences all vanish fall back to the defined
    direction; the caller guarantees no pair is degenerate on both sides.
    """
    n, m, K = a.shape[0], b.shape[0], a.shape[1]
    num_fg = np.zeros((n, m))
    num_gf = np.zeros((n, m))
    sum_a = np.zeros(n)
    sum_b = np.zeros(m)
    for k in range(K):  # ascending-k accumulation mirrors the compiled kernel
        dx = a[:, None, k, 0] - b[None, :, k, 0]
        dy = a[:, None, k, 1] - b[None, :, k, 1]
        dist = np.sqrt(dx * dx + dy * dy)
        num_fg = num_fg + a[:, None, k, 2] * dist
        num_gf = num_gf + b[None, :, k, 2] * dist
        sum_a = sum_a + a[:, k, 2]
        sum_b = sum_b + b[:, k, 2]

    with np.errstate(divide="ignore", invalid="ignore"):
        d_fg = num_fg / sum_a[:, None]
        d_gf = num_gf / sum_b[None, :]
    ok_a = sum_a > 0
    ok_b = sum_b > 0
    local = 0.5 * (d_fg + d_gf)
    if not ok_a.all():
        local[~ok_a, :] = d_gf[~ok_a, :]
    if not ok_b.all():
        local[:, ~ok_b] = d_fg[:, ~ok_b]
    return local


def dtw_pair(a: np.ndarray, b: np.ndarray) -> float:
    """Path-length-normalized DTW cost between two skeleton sequences."""
    n, m = a.shape[0], b.shape[0]
    local = local_cost_matrix(a, b)

    # one-cell sentinel border: +inf cost, huge length
    cost = np.full((n + 1, m + 1), np.inf)
    plen = np.full((n + 1, m + 1), _LEN_SENTINEL, dtype=np.int64)
    cost[1, 1] = local[0, 0]
    plen[1, 1] = 1

    for d in range(1, n + m - 1):
        i_lo = max(0, d - (m - 1))
        i_hi = min(n - 1, d)
        ii = np.arange(i_lo, i_hi + 1)
        jj = d - ii

        best_c = cost[ii, jj].copy()  # diagonal predecessor (i-1, j-1)
        best_l = plen[ii, jj].copy()
        up_c, up_l = cost[ii, jj + 1], plen[ii, jj + 1]  # (i-1, j)
        take = (up_c < best_c) | ((up_c == best_c) & (up_l < best_l))
        best_c[take] = up_c[take]
        best_l[take] = up_l[take]
        left_c, left_l = cost[ii + 1, jj], plen[ii + 1, jj]  # (i, j-1)
        take = (left_c < best_c) | ((left_c == best_c) & (left_l < best_l))
        best_c[take] = left_c[take]
        best_l[take] = left_l[take]

        cost[ii + 1, jj + 1] = best_c + local[ii, jj]
        plen[ii + 1, jj + 1] = best_l + 1

    return float(cost[n, m]) / int(plen[n, m])
