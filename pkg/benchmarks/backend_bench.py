"""Compare the compiled kernel against the pure-Python (numpy) fallback.

Usage: python benchmarks/backend_bench.py [--updates N] [--k K ...]
"""

import argparse
import time

import numpy as np

from entrosketch import _backend, hashing


def bench_backend(accumulate, k: int, n_updates: int, seed: int = 1) -> float:
    scaled = np.zeros(k, dtype=np.int64)
    keys = [hashing.item_key(str(i), seed) for i in range(64)]
    t0 = time.perf_counter()
    for i in range(n_updates):
        accumulate(scaled, keys[i % 64], 1.0)
    return n_updates / (time.perf_counter() - t0)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--updates", type=int, default=20_000)
    parser.add_argument("--k", type=int, nargs="+", default=[16, 128, 1024])
    args = parser.parse_args()

    backends = [("python", hashing.accumulate_np)]
    if _backend.BACKEND == "compiled":
        from entrosketch import _kernel

        backends.append(("compiled", _kernel.accumulate))
    else:
        print("compiled kernel not available; benchmarking fallback only")

    print(f"{'k':>6} {'backend':>10} {'updates/s':>12} {'ns/variate':>12}")
    rates = {}
    for k in args.k:
        for name, fn in backends:
            rate = bench_backend(fn, k, args.updates)
            rates[(k, name)] = rate
            print(f"{k:>6} {name:>10} {rate:>12.0f} {1e9 / (rate * k):>12.1f}")
        if len(backends) == 2:
            speedup = rates[(k, "compiled")] / rates[(k, "python")]
            print(f"{k:>6} {'speedup':>10} {speedup:>12.2f}x")


if __name__ == "__main__":
    main()
