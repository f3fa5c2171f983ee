"""Compare the compiled kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--depth 14]

Each kernel is run on identical inputs under both backends; outputs are
checked for equality before timings are reported.
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from treelattice import _pykernels
from treelattice.growth import Exponential
from treelattice.star_tree import AdmissibleSequence, build_Tf
from treelattice.grouping import units_mod

try:
    from treelattice import _ckernels
except ImportError:  # extension not built
    _ckernels = None


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def cases(depth: int):
    spec = build_Tf(Exponential(2), 4, n=4)
    indptr, indices, _ = spec.truncate(depth).csr()
    yield "bfs_distances", (indptr, indices, 0, -1)

    csr = spec.truncate(3).graph(AdmissibleSequence.canonical(4))._csr
    yield "expand_cover", (csr["in_ptr"], csr["in_edges"], csr["origin"], csr["index"],
                           csr["reverse"], csr["vpos"]["v0"], 9)

    M = 3 ** 9
    units = np.asarray(units_mod(M), dtype=np.int64)
    yield "tower_injective", (3 ** 8, 1, M, 1, 3, 0)
    yield "tower_equivariance_failures", (units[:2000], 3 ** 8, 1, M, 1, 3, 0)
    yield "tower_action_bijective", (units[:500], M)
    yield "tower_faithful_witnesses", (units, M)


def same(a, b) -> bool:
    if isinstance(a, tuple):
        return all(same(x, y) for x, y in zip(a, b))
    return np.array_equal(np.asarray(a), np.asarray(b))


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--depth", type=int, default=14, help="truncation depth for the BFS case")
    args = ap.parse_args(argv)
    if _ckernels is None:
        print("compiled kernels not built; nothing to compare")
        return
    print(f"{'kernel':32s} {'python s':>10s} {'cython s':>10s} {'speedup':>8s}")
    for name, call_args in cases(args.depth):
        py, cy = getattr(_pykernels, name), getattr(_ckernels, name)
        if not same(py(*call_args), cy(*call_args)):
            raise SystemExit(f"{name}: backends disagree")
        tp = best_of(lambda: py(*call_args), args.repeat)
        tc = best_of(lambda: cy(*call_args), args.repeat)
        print(f"{name:32s} {tp:10.4f} {tc:10.4f} {tp / tc:8.1f}x")


if __name__ == "__main__":
    main()
