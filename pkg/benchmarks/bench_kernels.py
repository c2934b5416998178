"""Benchmark the numba kernels against the pure-numpy fallback.

Runs each hot kernel on a representative workload with both backends,
checks that results agree, and prints timings with speedup factors.

Usage: python3 benchmarks/bench_kernels.py
"""

from __future__ import annotations

import time

import numpy as np

from qmctheta import _kernels_numpy as knp
from qmctheta.graphs import named_graph
from qmctheta.theta import lovasz_theta_complement

try:
    from qmctheta import _kernels_numba as knb
except ImportError:
    knb = None


def best_of(fn, repeats=3):
    times = []
    result = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - t0)
    return min(times), result


def main() -> None:
    if knb is None:
        print("numba unavailable; nothing to compare")
        return

    pet = named_graph("petersen")
    cert = lovasz_theta_complement(pet)
    vectors = cert.vectors
    eu, ev = pet.edge_arrays()

    g16 = named_graph("erdos_renyi", (16, 300), seed=7)
    eu16, ev16 = g16.edge_arrays()
    v16 = knp.normals(3, 0, 1 << 16)

    g20 = named_graph("erdos_renyi", (20, 300), seed=7)
    eu20, ev20 = g20.edge_arrays()

    # trigger JIT compilation outside the timed region
    knb.normals(0, 0, 8)
    knb.matvec_qmc(eu16, ev16, v16)
    knb.maxcut_bruteforce(10, eu, ev)
    knb.rounding_energies(vectors, eu, ev, 3, 0, 0, 16)
    knb.pair_dots(vectors[0], vectors[1], 3, 0, 16)

    cases = [
        (
            "normals 1e6",
            lambda: knb.normals(42, 0, 1_000_000),
            lambda: knp.normals(42, 0, 1_000_000),
            lambda a, b: np.allclose(a, b, atol=1e-12),
        ),
        (
            "matvec_qmc n=16",
            lambda: knb.matvec_qmc(eu16, ev16, v16),
            lambda: knp.matvec_qmc(eu16, ev16, v16),
            lambda a, b: np.allclose(a, b, atol=1e-10),
        ),
        (
            "maxcut n=20",
            lambda: knb.maxcut_bruteforce(20, eu20, ev20),
            lambda: knp.maxcut_bruteforce(20, eu20, ev20),
            lambda a, b: a == b,
        ),
        (
            "rounding 1e4 trials",
            lambda: knb.rounding_energies(vectors, eu, ev, 3, 0, 11, 10_000)[0],
            lambda: knp.rounding_energies(vectors, eu, ev, 3, 0, 11, 10_000)[0],
            lambda a, b: np.allclose(a, b, atol=1e-10),
        ),
        (
            "pair_dots 1e5",
            lambda: knb.pair_dots(vectors[0], vectors[1], 3, 5, 100_000),
            lambda: knp.pair_dots(vectors[0], vectors[1], 3, 5, 100_000),
            lambda a, b: np.allclose(a, b, atol=1e-10),
        ),
    ]

    print(f"{'kernel':<22} {'numba':>10} {'numpy':>10} {'speedup':>9} {'match':>6}")
    for name, fb, fp, close in cases:
        tb, rb = best_of(fb)
        tp, rp = best_of(fp)
        ok = close(rb, rp)
        print(f"{name:<22} {tb*1e3:>8.2f}ms {tp*1e3:>8.2f}ms {tp/tb:>8.1f}x {'ok' if ok else 'DIFF':>6}")


if __name__ == "__main__":
    main()
