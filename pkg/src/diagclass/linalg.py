"""Exact sparse linear algebra: GF(2) rank, rank over Q, Smith normal
form over Z, and exact affine systems.

GF(2) ranks delegate to a bit-packed elimination kernel (compiled when
available, numpy fallback otherwise).  Rational ranks use multi-modular
computation at word-size primes with agreement certification; very
rectangular sparse inputs are first compressed by a random row sketch,
which can only lower the rank, so agreement across independent
sketches/primes certifies the result.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

try:  # compiled kernel, with pure-python fallback selected at import
    from ._gf2_native import packed_rank as _packed_rank

    HAVE_NATIVE_GF2 = True
except ImportError:  # pragma: no cover - depends on build environment
    from ._gf2_fallback import packed_rank as _packed_rank

    HAVE_NATIVE_GF2 = False


class ComputationBudgetError(RuntimeError):
    """A computation would exceed the configured memory/size budget."""


class RankCertificationError(RuntimeError):
    """Modular ranks kept disagreeing beyond the retry budget."""


DEFAULT_MEM_BUDGET = 12 * 1024**3

# Primes in (2^21, 2^22): small enough that blocked float64 GEMM with
# panel width 64 stays exact (64 * p^2 < 2^53), large enough that an
# unlucky prime is rare.
_PRIME_POOL = [
    2097593, 2097211, 2098081, 2097823, 2098481, 2099251,
    2100001, 2100221, 2101009, 2101481, 2102107, 2102681,
]


@dataclass(frozen=True)
class SparseMatrix:
    """Exact sparse matrix in coordinate form (0-based indices)."""

    rows: int
    cols: int
    row: np.ndarray  # int64
    col: np.ndarray  # int64
    val: np.ndarray  # object or int64 array of integers

    @classmethod
    def from_triples(
        cls, rows: int, cols: int, triples: Iterable[tuple[int, int, int]]
    ) -> "SparseMatrix":
        seen: dict[tuple[int, int], int] = {}
        for r, c, v in triples:
            if not (0 <= r < rows and 0 <= c < cols):
                raise ValueError(f"entry ({r},{c}) outside {rows}x{cols}")
            if (r, c) in seen:
                raise ValueError(f"duplicate entry at ({r},{c})")
            if v != 0:
                seen[(r, c)] = int(v)
        rr = np.fromiter((k[0] for k in seen), dtype=np.int64, count=len(seen))
        cc = np.fromiter((k[1] for k in seen), dtype=np.int64, count=len(seen))
        vv = np.fromiter(seen.values(), dtype=np.int64, count=len(seen))
        return cls(rows, cols, rr, cc, vv)

    @classmethod
    def from_arrays(
        cls, rows: int, cols: int, row: np.ndarray, col: np.ndarray, val: np.ndarray
    ) -> "SparseMatrix":
        return cls(
            rows,
            cols,
            np.asarray(row, dtype=np.int64),
            np.asarray(col, dtype=np.int64),
            np.asarray(val, dtype=np.int64),
        )

    @property
    def nnz(self) -> int:
        return len(self.row)

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.cols, self.rows, self.col, self.row, self.val)

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for r, c, v in zip(self.row, self.col, self.val):
            out[int(r)][int(c)] = int(v)
        return out

    def to_coordinate_text(self) -> str:
        lines = [f"{self.rows} {self.cols} {self.nnz}"]
        order = np.lexsort((self.col, self.row))
        for k in order:
            lines.append(f"{int(self.row[k])} {int(self.col[k])} {int(self.val[k])}")
        return "\n".join(lines) + "\n"


# -- GF(2) ------------------------------------------------------------

def pack_gf2(m: SparseMatrix) -> np.ndarray:
    """Bit-pack the matrix rows, 64 columns per uint64 word."""
    nwords = (m.cols + 63) // 64
    packed = np.zeros((m.rows, nwords), dtype=np.uint64)
    odd = (np.asarray(m.val, dtype=np.int64) % 2) == 1
    r = m.row[odd]
    c = m.col[odd]
    words = c // 64
    bits = (np.uint64(1) << (c % 64).astype(np.uint64))
    np.bitwise_or.at(packed, (r, words), bits)
    return packed


def rank_gf2(m: SparseMatrix, mem_budget: int = DEFAULT_MEM_BUDGET) -> int:
    """Exact rank over the 2-element field."""
    nwords = (m.cols + 63) // 64
    need = m.rows * nwords * 8
    if need > mem_budget:
        raise ComputationBudgetError(
            f"packed GF(2) matrix needs {need} bytes, budget {mem_budget}"
        )
    packed = pack_gf2(m)
    return int(_packed_rank(packed, m.cols))


# -- rank mod p -------------------------------------------------------

def _dense_rank_mod_p(M: np.ndarray, p: int, block: int = 64) -> int:
    """Right-looking blocked LU mod p on a float64 matrix; destroys M.

    Modular reduction is deferred: float64 arithmetic is exact below
    2^53, so trailing entries may absorb many unreduced block updates
    (each bounded by block * p^2) before a full remainder pass.  Pivot
    columns and pivot rows are reduced on demand; float remainder is
    slow enough that this deferral dominates the running time at scale.
    """
    m, n = M.shape
    # entries stay < (defer + 1) * block * p^2 < 2^53 between reductions
    defer = max(1, int(2**53 / (block * p * p)) - 1)
    r = 0
    col = 0
    dirty = 0
    while col < n and r < m:
        c1 = min(col + block, n)
        r0 = r
        pivcols: list[int] = []
        for j in range(col, c1):
            M[r:, j] %= p
            nz = np.nonzero(M[r:, j])[0]
            if nz.size == 0:
                continue
            pr = r + int(nz[0])
            if pr != r:
                M[[r, pr]] = M[[pr, r]]
            M[r, j:c1] %= p
            inv = pow(int(M[r, j]), p - 2, p)
            if r + 1 < m:
                f = (M[r + 1 :, j] * inv) % p
                M[r + 1 :, j:c1] -= np.outer(f, M[r, j:c1])
                M[r + 1 :, j] = f  # multipliers, reused by the trailing update
            pivcols.append(j)
            r += 1
        if pivcols and c1 < n:
            # finish the pivot-row block on trailing columns (unit lower solve)
            for i in range(len(pivcols) - 1):
                rowi = r0 + i
                M[rowi, c1:] %= p
                M[rowi + 1 : r, c1:] -= np.outer(
                    M[rowi + 1 : r, pivcols[i]], M[rowi, c1:]
                )
            M[r0:r, c1:] %= p  # U must be reduced before the matmul
            if r < m:
                L = M[r:, pivcols]
                slab = max(1, (64 * 1024**2) // (8 * max(1, m - r)))
                for j0 in range(c1, n, slab):
                    j1 = min(j0 + slab, n)
                    M[r:, j0:j1] -= L @ M[r0:r, j0:j1]
                dirty += 1
                if dirty >= defer:
                    M[r:, c1:] %= p
                    dirty = 0
        col = c1
    return r


def _sketch_mod_p(
    m: SparseMatrix, p: int, rng: np.random.Generator, pad: int = 32
) -> np.ndarray:
    """Random row compression S @ M mod p, shape (cols + pad, cols).

    S is a sparse random projection: each input row is scattered into a
    few output rows with random nonzero coefficients.  rank(S M) <=
    rank(M) always; equality holds with high probability and is
    certified by agreement across independent sketches and primes.  The
    sparse S keeps peak memory at roughly the size of the output.
    """
    from scipy.sparse import csr_matrix

    n = m.cols
    target = min(m.rows, n + pad)
    per_row = 8
    vals = np.asarray(m.val, dtype=np.int64) % p
    A = csr_matrix((vals, (m.row, m.col)), shape=(m.rows, m.cols), dtype=np.int64)
    src = np.repeat(np.arange(m.rows), per_row)
    dst = rng.integers(0, target, size=m.rows * per_row)
    # int64 accumulation stays exact: entries < p^2 * (terms per cell) << 2^63
    coef = rng.integers(1, p, size=m.rows * per_row)
    S = csr_matrix((coef, (dst, src)), shape=(target, m.rows), dtype=np.int64)
    out = (S @ A).toarray()
    out %= p
    return out.astype(np.float64)


def rank_mod_p(
    m: SparseMatrix,
    p: int,
    seed: int = 0,
    mem_budget: int = DEFAULT_MEM_BUDGET,
) -> int:
    """Rank of an integer matrix modulo p (randomised sketch for very
    rectangular sparse inputs)."""
    work = m if m.cols <= m.rows else m.transpose()
    dense_bytes = work.rows * work.cols * 8
    if work.rows > work.cols + 64 and dense_bytes > 512 * 1024**2:
        sketch_bytes = (work.cols + 32) * work.cols * 8
        if sketch_bytes > mem_budget:
            raise ComputationBudgetError(
                f"sketched matrix needs {sketch_bytes} bytes, budget {mem_budget}"
            )
        rng = np.random.default_rng((seed, p, work.rows, work.cols))
        M = _sketch_mod_p(work, p, rng)
    else:
        if dense_bytes > mem_budget:
            raise ComputationBudgetError(
                f"dense matrix needs {dense_bytes} bytes, budget {mem_budget}"
            )
        M = np.zeros((work.rows, work.cols), dtype=np.float64)
        M[work.row, work.col] = np.asarray(work.val, dtype=np.int64) % p
    return _dense_rank_mod_p(M, p)


def _rank_fraction_dense(dense: Sequence[Sequence[int]]) -> int:
    """Deterministic exact rank by fraction Gaussian elimination (small)."""
    M = [[Fraction(x) for x in row] for row in dense]
    rows = len(M)
    cols = len(M[0]) if rows else 0
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][c]
        for i in range(r + 1, rows):
            if M[i][c] != 0:
                f = M[i][c] * inv
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        r += 1
        if r == rows:
            break
    return r


def rank_rational(
    m: SparseMatrix,
    seed: int = 0,
    mem_budget: int = DEFAULT_MEM_BUDGET,
) -> int:
    """Exact rank over Q.

    Small matrices use deterministic fraction elimination; larger ones use
    modular ranks at several word-size primes, certified by agreement.
    """
    if m.rows * m.cols <= 40_000:
        return _rank_fraction_dense(m.to_dense())
    ranks = [rank_mod_p(m, p, seed=seed, mem_budget=mem_budget) for p in _PRIME_POOL[:3]]
    if len(set(ranks)) == 1:
        return ranks[0]
    ranks += [rank_mod_p(m, p, seed=seed + 1, mem_budget=mem_budget) for p in _PRIME_POOL[3:6]]
    best = max(ranks)
    if ranks.count(best) >= 3:
        return best
    raise RankCertificationError(f"modular ranks disagree: {ranks}")


# -- Smith normal form ------------------------------------------------

def smith_normal_form(
    m: SparseMatrix, size_cap: int = 10_000
) -> tuple[int, ...]:
    """Elementary divisors d1 | d2 | ... of an integer matrix.

    Classical elimination with smallest-pivot selection; intended for the
    small integral-homology targets.
    """
    if max(m.rows, m.cols) > size_cap:
        raise ComputationBudgetError(
            f"matrix {m.rows}x{m.cols} exceeds Smith normal form cap {size_cap}"
        )
    # dict-of-dict sparse representation
    rowmap: dict[int, dict[int, int]] = {}
    colmap: dict[int, set[int]] = {}
    for r, c, v in zip(m.row, m.col, m.val):
        r, c, v = int(r), int(c), int(v)
        if v:
            rowmap.setdefault(r, {})[c] = v
            colmap.setdefault(c, set()).add(r)

    divisors: list[int] = []

    def entry(r: int, c: int) -> int:
        return rowmap.get(r, {}).get(c, 0)

    def set_entry(r: int, c: int, v: int) -> None:
        if v:
            rowmap.setdefault(r, {})[c] = v
            colmap.setdefault(c, set()).add(r)
        else:
            if c in rowmap.get(r, {}):
                del rowmap[r][c]
                colmap[c].discard(r)

    def add_row(dst: int, src: int, f: int) -> None:
        if f == 0:
            return
        for c, v in list(rowmap.get(src, {}).items()):
            set_entry(dst, c, entry(dst, c) + f * v)

    def add_col(dst: int, src: int, f: int) -> None:
        if f == 0:
            return
        for r in list(colmap.get(src, set())):
            set_entry(r, dst, entry(r, dst) + f * entry(r, src))

    done_rows: set[int] = set()
    done_cols: set[int] = set()

    while True:
        best = None
        for r, cs in rowmap.items():
            if r in done_rows:
                continue
            for c, v in cs.items():
                if c in done_cols:
                    continue
                av = abs(v)
                if best is None or av < best[0]:
                    best = (av, r, c)
                    if av == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, pr, pc = best
        while True:
            pv = entry(pr, pc)
            reduced = False
            for r in list(colmap.get(pc, set())):
                if r == pr or r in done_rows:
                    continue
                v = entry(r, pc)
                q = round(Fraction(v, pv))
                add_row(r, pr, -q)
                if entry(r, pc):
                    reduced = True
            for c in list(rowmap.get(pr, {}).keys()):
                if c == pc or c in done_cols:
                    continue
                v = entry(pr, c)
                q = round(Fraction(v, pv))
                add_col(c, pc, -q)
                if entry(pr, c):
                    reduced = True
            # move to a smaller pivot if a nonzero remainder appeared
            if not reduced:
                col_clear = all(
                    r == pr or r in done_rows for r in colmap.get(pc, set())
                )
                row_clear = all(
                    c == pc or c in done_cols for c in rowmap.get(pr, {})
                )
                if col_clear and row_clear:
                    break
            cand = None
            for r in colmap.get(pc, set()):
                if r in done_rows:
                    continue
                v = abs(entry(r, pc))
                if v and (cand is None or v < cand[0]):
                    cand = (v, r, pc)
            for c in rowmap.get(pr, {}):
                if c in done_cols:
                    continue
                v = abs(entry(pr, c))
                if v and (cand is None or v < cand[0]):
                    cand = (v, pr, c)
            if cand is not None:
                _, pr, pc = cand
        divisors.append(abs(entry(pr, pc)))
        done_rows.add(pr)
        done_cols.add(pc)

    # enforce the divisibility chain d1 | d2 | ...
    import math

    divisors = [d for d in divisors if d]
    changed = True
    while changed:
        changed = False
        for i in range(len(divisors)):
            for j in range(i + 1, len(divisors)):
                a, b = divisors[i], divisors[j]
                if b % a != 0:
                    g = math.gcd(a, b)
                    divisors[i], divisors[j] = g, a * b // g
                    changed = True
    return tuple(sorted(divisors))


# -- exact affine systems --------------------------------------------

@dataclass
class AffineSolutionSet:
    """Solutions of A x = b over Q: particular + homogeneous basis."""

    consistent: bool
    particular: Optional[list[Fraction]] = None
    basis: list[list[Fraction]] = field(default_factory=list)

    def forced_coordinate(self, i: int) -> Optional[Fraction]:
        """Value of coordinate i if it is constant on the solution set."""
        if not self.consistent or self.particular is None:
            return None
        if any(v[i] != 0 for v in self.basis):
            return None
        return self.particular[i]


def solve_affine_system(
    a: SparseMatrix, b: Sequence[Fraction | int]
) -> AffineSolutionSet:
    """Full exact solution set of A x = b, or an inconsistency verdict."""
    rows, cols = a.rows, a.cols
    if len(b) != rows:
        raise ValueError("right-hand side length mismatch")
    M = [[Fraction(0)] * cols + [Fraction(b[r])] for r in range(rows)]
    for r, c, v in zip(a.row, a.col, a.val):
        M[int(r)][int(c)] = Fraction(int(v))

    pivots: list[int] = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    for i in range(r, rows):
        if M[i][cols] != 0:
            return AffineSolutionSet(consistent=False)

    particular = [Fraction(0)] * cols
    for i, c in enumerate(pivots):
        particular[c] = M[i][cols]
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * cols
        vec[fc] = Fraction(1)
        for i, c in enumerate(pivots):
            vec[c] = -M[i][fc]
        basis.append(vec)
    return AffineSolutionSet(consistent=True, particular=particular, basis=basis)
