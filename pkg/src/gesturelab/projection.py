"""Seeded 2D t-SNE used by the relation view.

Exact (O(n^2)) t-SNE is plenty at the scale of one video's phrases and
segments, and implementing it directly buys two guarantees the view model
needs: bit-identical output for a given seed, and permutation equivariance.
The latter comes from optimizing in a canonical item order (derived from
the items themselves) and un-permuting afterwards, so the random init
attaches to items rather than to input positions.
"""

from __future__ import annotations

import numpy as np

from gesturelab.errors import ConfigError, TooFewItemsError
from gesturelab.similarity import DistanceMatrix

EARLY_EXAGGERATION = 12.0
EXAGGERATION_ITERS = 250
LEARNING_RATE = 200.0
INITIAL_MOMENTUM = 0.5
FINAL_MOMENTUM = 0.8


def _distances(items) -> np.ndarray:
    if isinstance(items, DistanceMatrix):
        return np.asarray(items.values, dtype=np.float64)
    arr = np.asarray(items, dtype=np.float64)
    if arr.ndim != 2:
        raise ConfigError("items must be a vector matrix or a DistanceMatrix")
    diff = arr[:, None, :] - arr[None, :, :]
    return np.sqrt((diff * diff).sum(axis=2))


def _canonical_order(items, dist: np.ndarray) -> np.ndarray:
    """Deterministic, permutation-invariant item order.

    Vectors sort lexicographically by their components; distance rows sort
    by their sorted entries (a signature unchanged by relabeling).
    """
    if isinstance(items, DistanceMatrix):
        keys = np.sort(dist, axis=1)
    else:
        keys = np.asarray(items, dtype=np.float64)
    return np.lexsort(keys.T[::-1])


def _conditional_probabilities(d2: np.ndarray, perplexity: float) -> np.ndarray:
    """Per-row Gaussian affinities calibrated to the target perplexity."""
    n = d2.shape[0]
    target_entropy = np.log(perplexity)
    p = np.zeros((n, n))
    for i in range(n):
        row = np.delete(d2[i], i)
        beta_lo, beta_hi = 0.0, np.inf
        beta = 1.0
        for _ in range(64):
            logits = -row * beta
            logits -= logits.max()
            weights = np.exp(logits)
            total = weights.sum()
            probs = weights / total
            entropy = -(probs * np.log(np.maximum(probs, 1e-300))).sum()
            if abs(entropy - target_entropy) < 1e-7:
                break
            if entropy > target_entropy:
                beta_lo = beta
                beta = beta * 2.0 if beta_hi == np.inf else (beta + beta_hi) / 2.0
            else:
                beta_hi = beta
                beta = beta / 2.0 if beta_lo == 0.0 else (beta + beta_lo) / 2.0
        p[i, np.arange(n) != i] = probs
    return p


def project_2d(
    items,
    seed: int,
    perplexity: float,
    iterations: int = 1000,
) -> np.ndarray:
    """Project items to 2D points centered at the origin inside [-1, 1]^2.

    ``items`` is either an (n, d) embedding matrix (Euclidean distances) or
    a precomputed symmetric DistanceMatrix. Identical inputs and seed give
    bit-identical points.
    """
    dist = _distances(items)
    n = dist.shape[0]
    if n < 3:
        raise TooFewItemsError(f"projection needs at least 3 items, got {n}")
    if perplexity >= n:
        raise ConfigError(f"perplexity {perplexity} must be below item count {n}")
    if perplexity <= 0:
        raise ConfigError(f"perplexity must be positive, got {perplexity}")

    order = _canonical_order(items, dist)
    d2 = (dist * dist)[np.ix_(order, order)]

    cond = _conditional_probabilities(d2, perplexity)
    p = (cond + cond.T) / (2.0 * n)
    p = np.maximum(p, 1e-12)

    rng = np.random.default_rng(seed)
    y = rng.normal(0.0, 1e-4, (n, 2))
    velocity = np.zeros_like(y)
    gains = np.ones_like(y)

    for it in range(iterations):
        p_eff = p * EARLY_EXAGGERATION if it < EXAGGERATION_ITERS else p
        momentum = INITIAL_MOMENTUM if it < EXAGGERATION_ITERS else FINAL_MOMENTUM

        diff = y[:, None, :] - y[None, :, :]
        inv = 1.0 / (1.0 + (diff * diff).sum(axis=2))
        np.fill_diagonal(inv, 0.0)
        q = np.maximum(inv / inv.sum(), 1e-12)

        force = (p_eff - q) * inv
        grad = 4.0 * (force[:, :, None] * diff).sum(axis=1)

        same_sign = np.sign(grad) == np.sign(velocity)
        gains = np.where(same_sign, gains * 0.8, gains + 0.2)
        gains = np.maximum(gains, 0.01)
        velocity = momentum * velocity - LEARNING_RATE * gains * grad
        y = y + velocity
        y = y - y.mean(axis=0)

    y = y - y.mean(axis=0)
    extent = np.abs(y).max()
    if extent > 0:
        y = y / extent

    out = np.empty_like(y)
    out[order] = y
    return out
