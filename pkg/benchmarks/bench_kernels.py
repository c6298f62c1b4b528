"""Timing comparison of the numpy and numba kernel backends.

Times the three hot kernels (coin-walk step, split-step walk step, and the
O(N^2) off-diagonal reduction) per call on each available backend and
prints the speedup.  The step kernels are timed on a legal trajectory: the
walker starts at the origin and steps until just before the light cone
reaches the wall, so the boundary guard never trips.

Usage:
    python3 benchmarks/bench_kernels.py [--half-widths 100,200,400] [--repeats 5]
"""

import argparse
import math
import time

import numpy as np

from dtqw.kernels import NUMBA_KERNELS, NUMPY_KERNELS


def _initial(n: int):
    up = np.zeros(n, dtype=np.complex128)
    dn = np.zeros(n, dtype=np.complex128)
    up[n // 2] = 1 / math.sqrt(2)
    dn[n // 2] = 1j / math.sqrt(2)
    return up, dn


def _dense_state(n: int, seed: int = 99):
    rng = np.random.default_rng(seed)
    up = rng.normal(size=n) + 1j * rng.normal(size=n)
    dn = rng.normal(size=n) + 1j * rng.normal(size=n)
    norm = math.sqrt(float((np.abs(up) ** 2 + np.abs(dn) ** 2).sum()))
    return up / norm, dn / norm


def bench_coin_shift(kernel, half_width: int, repeats: int) -> float:
    n = 2 * half_width + 1
    rng = np.random.default_rng(7)
    theta = rng.uniform(0.0, math.pi, n)
    cos_x, sin_x = np.cos(theta), np.sin(theta)
    steps = half_width - 1
    best = math.inf
    for _ in range(repeats):
        up, dn = _initial(n)
        out_up, out_dn = np.empty_like(up), np.empty_like(dn)
        start = time.perf_counter()
        for _ in range(steps):
            status = kernel(up, dn, cos_x, sin_x, out_up, out_dn)
            up, out_up = out_up, up
            dn, out_dn = out_dn, dn
        elapsed = time.perf_counter() - start
        if status != 0:
            raise RuntimeError("boundary guard tripped during benchmark")
        best = min(best, elapsed / steps)
    return best


def bench_split_step(kernel, half_width: int, repeats: int) -> float:
    n = 2 * half_width + 1
    cos1, sin1 = math.cos(math.pi / 4), math.sin(math.pi / 4)
    theta2 = np.where(np.arange(n) < n // 2, -math.pi / 8, math.pi / 8)
    cos2_x, sin2_x = np.cos(theta2), np.sin(theta2)
    steps = half_width - 2  # split step can move two sites per call
    best = math.inf
    for _ in range(repeats):
        up, dn = _initial(n)
        out_up, out_dn = np.empty_like(up), np.empty_like(dn)
        start = time.perf_counter()
        for _ in range(steps):
            status = kernel(up, dn, cos1, sin1, cos2_x, sin2_x, out_up, out_dn)
            up, out_up = out_up, up
            dn, out_dn = out_dn, dn
        elapsed = time.perf_counter() - start
        if status != 0:
            raise RuntimeError("boundary guard tripped during benchmark")
        best = min(best, elapsed / steps)
    return best


def bench_offdiag(kernel, half_width: int, repeats: int) -> float:
    n = 2 * half_width + 1
    up, dn = _dense_state(n)
    best = math.inf
    for _ in range(repeats):
        start = time.perf_counter()
        kernel(up, dn)
        best = min(best, time.perf_counter() - start)
    return best


BENCHES = (
    ("coin_shift", bench_coin_shift),
    ("split_step", bench_split_step),
    ("offdiag_abs_sum_rank2", bench_offdiag),
)


def _warm(kernels) -> None:
    up, dn = _initial(9)
    out_up, out_dn = np.empty_like(up), np.empty_like(dn)
    ones = np.ones(9)
    kernels["coin_shift"](up, dn, ones * 0.6, ones * 0.8, out_up, out_dn)
    kernels["split_step"](up, dn, 0.6, 0.8, ones * 0.6, ones * 0.8, out_up, out_dn)
    kernels["offdiag_abs_sum_rank2"](up, dn)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--half-widths",
        default="100,200,400",
        help="comma-separated lattice half-widths to benchmark",
    )
    parser.add_argument("--repeats", type=int, default=5, help="timing passes; best is kept")
    args = parser.parse_args()
    half_widths = [int(v) for v in args.half_widths.split(",")]

    backends = [("numpy", NUMPY_KERNELS)]
    if NUMBA_KERNELS is not None:
        backends.append(("numba", NUMBA_KERNELS))
        _warm(NUMBA_KERNELS)
    else:
        print("numba backend unavailable (not installed or disabled); numpy only\n")

    print(f"{'kernel':<24}{'sites':>8}" + "".join(f"{name:>14}" for name, _ in backends)
          + ("{:>10}".format("speedup") if len(backends) == 2 else ""))
    for name, bench in BENCHES:
        for half_width in half_widths:
            times = [bench(kernels[name], half_width, args.repeats) for _, kernels in backends]
            row = f"{name:<24}{2 * half_width + 1:>8}"
            for t in times:
                row += f"{t * 1e6:>12.2f}us"
            if len(times) == 2:
                row += f"{times[0] / times[1]:>9.1f}x"
            print(row)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
