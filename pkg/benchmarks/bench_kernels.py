"""Time the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 5]
"""
from __future__ import annotations

import argparse
import timeit

import numpy as np

from npcsource import _backend

OFFSETS = np.array([(0, 0), (1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (-1, -1), (1, -1), (-1, 1)], dtype=np.int64)
XS = np.linspace(0.0, 64.0, 1280)
YS = np.linspace(0.0, 54.0, 1080)

CASES = {
    "circle_cell_sum 2048^2": lambda k: k.circle_cell_sum(6.4, 13.46, 2.7, 2, 1, 2048),
    "supersampled_cell_sum 512^2 x16": lambda k: k.supersampled_cell_sum(
        (3.2, 6.73), (3.2, -6.73), 0, 1.0, 0.0, OFFSETS, 1, 0, 512, 4
    ),
    "sign_map 1280x1080": lambda k: k.sign_map((6.4, 0.0), (0.0, 13.46), 0, 2.7, 0.0, OFFSETS, XS, YS),
}


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = {"python": _backend.load("python")}
    try:
        backends["compiled"] = _backend.load("compiled")
    except ImportError:
        print("compiled extension not built; timing the numpy fallback only")
    print(f"{'kernel':34s} " + " ".join(f"{b:>12s}" for b in backends) + "   speedup")
    for name, fn in CASES.items():
        times = {b: min(timeit.repeat(lambda: fn(k), number=1, repeat=args.repeat)) for b, k in backends.items()}
        speed = f"{times['python'] / times['compiled']:8.1f}x" if "compiled" in times else ""
        print(f"{name:34s} " + " ".join(f"{t * 1e3:10.1f}ms" for t in times.values()) + f"  {speed}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
