import numpy as np
import pytest

from gesturelab.gesture import NormalizedSkeleton


def make_skeleton(xy, conf=1.0, height=400.0) -> NormalizedSkeleton:
    """Build a NormalizedSkeleton from a (9, 2) coordinate array."""
    xy = np.asarray(xy, dtype=np.float64)
    assert xy.shape == (9, 2)
    data = np.zeros((9, 3), dtype=np.float64)
    data[:, 0:2] = xy
    data[:, 2] = conf
    data[data[:, 2] == 0.0, 0:2] = 0.0
    return NormalizedSkeleton(data=data, height_estimate=height)


def neutral_pose() -> np.ndarray:
    """A plausible at-rest upper body in normalized units (y up)."""
    return np.array(
        [
            [0.00, 0.00],  # origin
            [0.00, -0.15],  # neck
            [-0.15, -0.15],  # r shoulder
            [-0.18, -0.32],  # r elbow
            [-0.14, -0.48],  # r wrist
            [0.15, -0.15],  # l shoulder
            [0.18, -0.32],  # l elbow
            [0.14, -0.48],  # l wrist
            [0.00, -0.55],  # mid hip
        ]
    )


def random_skeleton(rng, min_conf=0.05) -> NormalizedSkeleton:
    xy = rng.uniform(-1.0, 1.0, (9, 2))
    conf = rng.uniform(min_conf, 1.0, 9)
    data = np.column_stack([xy, conf])
    return NormalizedSkeleton(data=data, height_estimate=400.0)


@pytest.fixture
def rng():
    return np.random.default_rng(20240701)


def all_backends():
    """The kernel implementations importable in this environment."""
    from gesturelab import _kernels_py

    impls = [_kernels_py]
    try:
        from gesturelab import _kernels

        impls.append(_kernels)
    except ImportError:
        pass
    return impls


@pytest.fixture(params=[impl.BACKEND for impl in all_backends()])
def kernel_backend(request, monkeypatch):
    """Run a test against each available kernel backend."""
    impl = {i.BACKEND: i for i in all_backends()}[request.param]
    from gesturelab import kernels

    monkeypatch.setattr(kernels, "dtw_pair", impl.dtw_pair)
    monkeypatch.setattr(kernels, "local_cost_matrix", impl.local_cost_matrix)
    monkeypatch.setattr(kernels, "BACKEND", impl.BACKEND)
    return impl.BACKEND
