"""Benchmark: compiled vs pure-numpy packed GF(2) elimination.

Generates random sparse matrices at a few sizes, packs them, and times
`packed_rank` from both backends (when the compiled one is available).
Ranks are cross-checked.

Run: python benchmarks/bench_gf2.py
"""

from __future__ import annotations

import time

import numpy as np

from diagclass.linalg import SparseMatrix, pack_gf2
from diagclass import _gf2_fallback

try:
    from diagclass import _gf2_native

    HAVE_NATIVE = True
except ImportError:  # pragma: no cover
    _gf2_native = None
    HAVE_NATIVE = False

SIZES = [
    (2_000, 1_000, 0.01),
    (8_000, 4_000, 0.005),
    (20_000, 8_000, 0.002),
]


def random_sparse(rng: np.random.Generator, rows: int, cols: int, density: float) -> SparseMatrix:
    nnz = int(rows * cols * density)
    r = rng.integers(0, rows, size=nnz)
    c = rng.integers(0, cols, size=nnz)
    flat = np.unique(r * cols + c)
    return SparseMatrix.from_arrays(
        rows, cols, flat // cols, flat % cols, np.ones(len(flat), dtype=np.int64)
    )


def bench_one(fn, packed: np.ndarray, cols: int) -> tuple[int, float]:
    work = packed.copy()
    t0 = time.perf_counter()
    rank = fn(work, cols)
    return int(rank), time.perf_counter() - t0


def main() -> None:
    rng = np.random.default_rng(2024)
    print(f"compiled kernel available: {HAVE_NATIVE}")
    print(f"{'rows':>7} {'cols':>7} {'nnz':>9} {'numpy (s)':>10} {'native (s)':>11} {'speedup':>8}")
    for rows, cols, density in SIZES:
        m = random_sparse(rng, rows, cols, density)
        packed = pack_gf2(m)
        rank_np, t_np = bench_one(_gf2_fallback.packed_rank, packed, cols)
        if HAVE_NATIVE:
            rank_nat, t_nat = bench_one(_gf2_native.packed_rank, packed, cols)
            assert rank_nat == rank_np, (rank_nat, rank_np)
            print(
                f"{rows:>7} {cols:>7} {len(m.val):>9} {t_np:>10.3f} {t_nat:>11.3f} "
                f"{t_np / t_nat:>7.1f}x"
            )
        else:
            print(f"{rows:>7} {cols:>7} {len(m.val):>9} {t_np:>10.3f} {'n/a':>11} {'n/a':>8}")


if __name__ == "__main__":
    main()
