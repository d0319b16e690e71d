import numpy as np
import pytest

from gesturelab.errors import ConfigError, TooFewItemsError
from gesturelab.projection import project_2d
from gesturelab.similarity import DistanceMatrix


def contrived_matrix():
    # items 0 and 1 are near-identical, item 2 is far from both
    values = np.array(
        [
            [0.0, 0.05, 8.0],
            [0.05, 0.0, 8.0],
            [8.0, 8.0, 0.0],
        ]
    )
    return DistanceMatrix(values=values, segment_ids=(0, 1, 2))


class TestProject2d:
    def test_deterministic_per_seed(self):
        rng = np.random.default_rng(3)
        vectors = rng.normal(size=(12, 5))
        a = project_2d(vectors, seed=42, perplexity=4.0, iterations=300)
        b = project_2d(vectors, seed=42, perplexity=4.0, iterations=300)
        assert np.array_equal(a, b)
        c = project_2d(vectors, seed=7, perplexity=4.0, iterations=300)
        assert not np.array_equal(a, c)

    def test_output_shape_and_bounds(self):
        rng = np.random.default_rng(4)
        vectors = rng.normal(size=(9, 3))
        points = project_2d(vectors, seed=1, perplexity=3.0, iterations=200)
        assert points.shape == (9, 2)
        assert (np.abs(points) <= 1.0).all()
        assert np.abs(points.mean(axis=0)).max() < 1e-9

    def test_neighborhood_preserved_on_contrived_matrix(self):
        points = project_2d(contrived_matrix(), seed=42, perplexity=1.5)
        d01 = np.linalg.norm(points[0] - points[1])
        d02 = np.linalg.norm(points[0] - points[2])
        d12 = np.linalg.norm(points[1] - points[2])
        assert d01 < d02
        assert d01 < d12

    def test_permutation_equivariant(self):
        rng = np.random.default_rng(5)
        vectors = rng.normal(size=(10, 4))
        points = project_2d(vectors, seed=42, perplexity=3.0, iterations=250)
        perm = rng.permutation(10)
        permuted_points = project_2d(
            vectors[perm], seed=42, perplexity=3.0, iterations=250
        )
        assert np.allclose(permuted_points, points[perm])

    def test_permutation_equivariant_distance_mode(self):
        rng = np.random.default_rng(6)
        vectors = rng.normal(size=(8, 3))
        diff = vectors[:, None] - vectors[None, :]
        dist = np.sqrt((diff**2).sum(axis=2))
        m = DistanceMatrix(values=dist, segment_ids=tuple(range(8)))
        points = project_2d(m, seed=9, perplexity=2.5, iterations=250)
        perm = rng.permutation(8)
        m2 = DistanceMatrix(
            values=dist[np.ix_(perm, perm)], segment_ids=tuple(range(8))
        )
        permuted_points = project_2d(m2, seed=9, perplexity=2.5, iterations=250)
        assert np.allclose(permuted_points, points[perm])

    def test_too_few_items(self):
        with pytest.raises(TooFewItemsError):
            project_2d(np.zeros((2, 3)), seed=1, perplexity=1.0)

    def test_perplexity_at_or_above_n(self):
        with pytest.raises(ConfigError):
            project_2d(np.zeros((5, 3)), seed=1, perplexity=5.0)
