"""Compare the two closure-kernel backends on realistic census workloads.

Each workload closes the monodromy generators of every candidate map for one
(group, valence) pair, exactly as the exhaustive search does. Run with:

    python3 benchmarks/closure_benchmark.py [--repeat N]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from cayleymaps import _kernels
from cayleymaps.classify import iter_candidate_maps
from cayleymaps.groups import DicyclicGroup, DihedralGroup, ElemAbelian2Group


def workloads() -> list[tuple[str, list[np.ndarray]]]:
    cases = [
        ("D12 valence 3", DihedralGroup(12), 3),
        ("D11 valence 5", DihedralGroup(11), 5),
        ("Dic6 valence 5", DicyclicGroup(6), 5),
        ("E4 valence 5", ElemAbelian2Group(4), 5),
    ]
    out = []
    for label, group, valence in cases:
        rows = []
        for m in iter_candidate_maps(group, valence):
            rows.append(np.stack([m._rotation_row, m._reversal_row]))
        out.append((f"{label} ({len(rows)} maps)", rows))
    return out


def time_backend(backend: str, rows: list[np.ndarray], repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        for gens in rows:
            n_arcs = gens.shape[1]
            _kernels.closure_table(gens, cutoff=n_arcs, backend=backend)
        best = min(best, time.perf_counter() - start)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3, help="timing repeats")
    args = parser.parse_args()

    backends = ["numpy"]
    if _kernels.NUMBA_AVAILABLE:
        _kernels.warmup()
        backends.insert(0, "numba")
    else:
        print("numba not importable; timing the numpy backend only")

    print(f"{'workload':<28} " + " ".join(f"{b:>12}" for b in backends))
    for label, rows in workloads():
        times = {b: time_backend(b, rows, args.repeat) for b in backends}
        cells = " ".join(f"{times[b]:>11.3f}s" for b in backends)
        line = f"{label:<28} {cells}"
        if len(backends) == 2:
            line += f"   numba is {times['numpy'] / times['numba']:.1f}x faster"
        print(line)


if __name__ == "__main__":
    main()
