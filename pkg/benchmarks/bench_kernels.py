"""Timing comparison of the compiled frame-grid kernel and the numpy lane.

Run from the repository root after an editable install:

    python benchmarks/bench_kernels.py

Prints per-resolution timings for frame_pair_tables on both lanes plus an
end-to-end timing of the 2x2 form oracle on the active lane.
"""

from __future__ import annotations

import math
import time

import numpy as np

from fracpos import GridSpec, form_minimum_bruteforce_2x2, kernel_backend, make_level
from fracpos import _grid_py

try:
    from fracpos import _gridkern
except ImportError:
    _gridkern = None


def _test_matrix() -> np.ndarray:
    rng = np.random.default_rng(2024)
    g = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    return (g + g.conj().T) / 2.0


def _time(fn, *args, repeats: int = 3) -> float:
    best = math.inf
    for _ in range(repeats):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def main() -> None:
    w = _test_matrix()
    w4 = w.reshape(2, 2, 2, 2)
    print(f"active lane: {kernel_backend()}")
    print()
    print(f"{'res':>5} {'pairs':>8} {'numpy (s)':>12} {'compiled (s)':>13} {'speedup':>8}")
    for res in (8, 16, 24, 32, 48):
        a_grid = np.linspace(0.0, 0.5 * math.pi, res + 1)
        b_grid = 2.0 * math.pi * np.arange(res) / res
        frames = a_grid.size * b_grid.size
        t_py = _time(_grid_py.frame_pair_tables, w4, a_grid, b_grid, res)
        if _gridkern is not None:
            t_c = _time(_gridkern.frame_pair_tables, w4, a_grid, b_grid, res)
            ratio = f"{t_py / t_c:7.1f}x"
            t_c_text = f"{t_c:13.4f}"
        else:
            ratio = "    n/a"
            t_c_text = f"{'n/a':>13}"
        print(f"{res:>5} {frames * frames:>8} {t_py:12.4f} {t_c_text} {ratio}")

    print()
    level = make_level(1.5, 2)
    start = time.perf_counter()
    value = form_minimum_bruteforce_2x2(w, level, GridSpec())
    elapsed = time.perf_counter() - start
    print(f"form oracle at default grid: {value!r} in {elapsed:.2f}s")


if __name__ == "__main__":
    main()
