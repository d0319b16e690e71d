"""Compare the compiled DTW kernel against the numpy fallback.

Usage: python benchmarks/bench_kernels.py [--pairs N] [--frames N]
"""

from __future__ import annotations

import argparse
import time

import numpy as np


def make_sequences(count: int, frames: int, seed: int = 0) -> list[np.ndarray]:
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        n = int(rng.integers(max(frames // 2, 1), frames + 1))
        arr = rng.uniform(-1, 1, (n, 9, 3))
        arr[:, :, 2] = rng.uniform(0.3, 1.0, (n, 9))
        out.append(np.ascontiguousarray(arr))
    return out


def bench(impl, sequences: list[np.ndarray], pairs: list[tuple[int, int]]):
    start = time.perf_counter()
    values = [impl.dtw_pair(sequences[i], sequences[j]) for i, j in pairs]
    return time.perf_counter() - start, values


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--pairs", type=int, default=500)
    parser.add_argument("--frames", type=int, default=75)
    args = parser.parse_args()

    from gesturelab import _kernels_py

    impls = [("python", _kernels_py)]
    try:
        from gesturelab import _kernels

        impls.append(("compiled", _kernels))
    except ImportError:
        print("compiled kernel not built; benchmarking the fallback only")

    count = max(int((2 * args.pairs) ** 0.5) + 1, 3)
    sequences = make_sequences(count, args.frames)
    pairs = [(i, j) for i in range(count) for j in range(i + 1, count)][: args.pairs]
    print(f"{len(pairs)} DTW pairs, sequences of ~{args.frames} frames\n")

    results = {}
    for name, impl in impls:
        elapsed, values = bench(impl, sequences, pairs)
        results[name] = (elapsed, values)
        rate = len(pairs) / elapsed
        print(f"{name:>9}: {elapsed:8.3f} s  ({rate:8.1f} pairs/s)")

    if len(results) == 2:
        py_t, py_v = results["python"]
        c_t, c_v = results["compiled"]
        identical = all(a == b for a, b in zip(py_v, c_v))
        print(f"\nspeedup: {py_t / c_t:.1f}x, results bit-identical: {identical}")


if __name__ == "__main__":
    main()
