"""Throughput comparison: compiled scan kernels vs the pure-Python twins.

Synthetic workload sized like the hot path of a coloring run: one anchor's
witness rows scanned against the current color array.  Usage:

    python benchmarks/bench_kernels.py [--rows 4000] [--repeats 200]
"""

import argparse
import random
import time
from array import array

from recolor._kernels import _scan_py

try:
    from recolor._kernels import _scan_c
except ImportError:
    _scan_c = None


def _workload(rng, n_objects, n_rows, width):
    colors = array("i", [0] + [rng.randint(0, 6) for _ in range(n_objects)])
    flat = array("i", [rng.randint(1, n_objects)
                       for _ in range(n_rows * width)])
    return colors, flat


def _time(fn, colors, flat, width, repeats):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn(colors, flat, width)
        best = min(best, time.perf_counter() - start)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--rows", type=int, default=4000)
    ap.add_argument("--repeats", type=int, default=200)
    ap.add_argument("--objects", type=int, default=500)
    args = ap.parse_args()

    rng = random.Random(1)
    print(f"{'kernel':<18}{'width':>6}{'pure us':>12}{'compiled us':>14}"
          f"{'speedup':>9}")
    for name, pure, comp, width in (
        ("first_repetition", _scan_py.first_repetition,
         getattr(_scan_c, "first_repetition", None), 6),
        ("first_repetition", _scan_py.first_repetition,
         getattr(_scan_c, "first_repetition", None), 2),
        ("first_bicolored", _scan_py.first_bicolored,
         getattr(_scan_c, "first_bicolored", None), 4),
        ("first_bicolored", _scan_py.first_bicolored,
         getattr(_scan_c, "first_bicolored", None), 6),
    ):
        colors, flat = _workload(rng, args.objects, args.rows, width)
        t_pure = _time(pure, colors, flat, width, args.repeats)
        if comp is None:
            print(f"{name:<18}{width:>6}{t_pure * 1e6:>12.1f}"
                  f"{'(not built)':>14}{'':>9}")
            continue
        assert pure(colors, flat, width) == comp(colors, flat, width)
        t_comp = _time(comp, colors, flat, width, args.repeats)
        print(f"{name:<18}{width:>6}{t_pure * 1e6:>12.1f}"
              f"{t_comp * 1e6:>14.1f}{t_pure / t_comp:>9.1f}")


if __name__ == "__main__":
    main()
