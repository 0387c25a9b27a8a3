"""Exact linear algebra over the integers and over the two-element field.

Integer matrices use arbitrary-precision Python ints throughout; matrices
over GF(2) store each row as a bit-packed int.  All elimination orders are
deterministic so intermediate diagnostics are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence


@dataclass(frozen=True)
class IntMatrix:
    """Dense integer matrix, row-major entries."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError("matrix dimensions must be positive")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )
        for e in self.entries:
            if not isinstance(e, int) or isinstance(e, bool):
                raise ValueError(f"matrix entries must be ints, got {e!r}")

    @classmethod
    def from_rows(cls, data: Sequence[Sequence[int]]) -> "IntMatrix":
        rows = len(data)
        if rows == 0:
            raise ValueError("matrix must have at least one row")
        cols = len(data[0])
        for row in data:
            if len(row) != cols:
                raise ValueError("rows must all have the same length")
        return cls(rows, cols, tuple(int(e) for row in data for e in row))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def at(self, i: int, j: int) -> int:
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list[list[int]]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            self.cols,
            self.rows,
            tuple(self.at(i, j) for j in range(self.cols) for i in range(self.rows)),
        )

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("matrix shapes differ")
        return IntMatrix(
            self.rows,
            self.cols,
            tuple(a - b for a, b in zip(self.entries, other.entries)),
        )


@dataclass(frozen=True)
class F2Matrix:
    """Matrix over GF(2); row i is the bit-packed int ``row_bits[i]``.

    Bit j of ``row_bits[i]`` holds the entry in row i, column j.
    """

    rows: int
    cols: int
    row_bits: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError("matrix dimensions must be positive")
        if len(self.row_bits) != self.rows:
            raise ValueError("row count does not match row_bits")
        mask = (1 << self.cols) - 1
        for r in self.row_bits:
            if r < 0 or r & ~mask:
                raise ValueError("row bits outside column range")

    @classmethod
    def from_rows(cls, data: Sequence[Sequence[int]]) -> "F2Matrix":
        rows = len(data)
        if rows == 0:
            raise ValueError("matrix must have at least one row")
        cols = len(data[0])
        bits = []
        for row in data:
            if len(row) != cols:
                raise ValueError("rows must all have the same length")
            acc = 0
            for j, e in enumerate(row):
                if e not in (0, 1):
                    raise ValueError("GF(2) entries must be 0 or 1")
                acc |= e << j
            bits.append(acc)
        return cls(rows, cols, tuple(bits))

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def at(self, i: int, j: int) -> int:
        return (self.row_bits[i] >> j) & 1

    def to_rows(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.cols)] for r in self.row_bits]

    def transpose(self) -> "F2Matrix":
        bits = [0] * self.cols
        for i, r in enumerate(self.row_bits):
            while r:
                j = (r & -r).bit_length() - 1
                bits[j] |= 1 << i
                r &= r - 1
        return F2Matrix(self.cols, self.rows, tuple(bits))


@dataclass(frozen=True)
class SmithForm:
    """Invariant factors d1 | d2 | ... | dr of an integer matrix, zeros trailing.

    Padded with zeros to min(rows, cols) of the source matrix.
    """

    invariant_factors: tuple[int, ...]

    def __post_init__(self):
        seen_zero = False
        prev = None
        for d in self.invariant_factors:
            if d < 0:
                raise ValueError("invariant factors must be nonnegative")
            if d == 0:
                seen_zero = True
            else:
                if seen_zero:
                    raise ValueError("zero invariant factors must trail")
                if prev is not None and d % prev != 0:
                    raise ValueError("divisibility chain violated")
                prev = d


def mod2_reduce(a: IntMatrix) -> F2Matrix:
    """Entrywise parity of an integer matrix."""
    bits = []
    c = a.cols
    for i in range(a.rows):
        acc = 0
        base = i * c
        for j in range(c):
            acc |= (a.entries[base + j] & 1) << j
        bits.append(acc)
    return F2Matrix(a.rows, a.cols, tuple(bits))


def f2_rank(m: F2Matrix) -> int:
    """Rank over GF(2) by Gaussian elimination.

    Pivots are chosen deterministically: for each column left to right, the
    first remaining row with a set bit in that column.
    """
    work = list(m.row_bits)
    rank = 0
    for col in range(m.cols):
        bit = 1 << col
        pivot = None
        for i in range(rank, len(work)):
            if work[i] & bit:
                pivot = i
                break
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        for i in range(len(work)):
            if i != rank and (work[i] & bit):
                work[i] ^= work[rank]
        rank += 1
        if rank == len(work):
            break
    return rank


def f2_kernel_dim(m: F2Matrix) -> int:
    """Dimension of the nullspace of a square GF(2) matrix."""
    if not m.is_square:
        raise ValueError("kernel dimension requires a square matrix")
    return m.cols - f2_rank(m)


def smith_normal_form(a: IntMatrix) -> SmithForm:
    """Invariant factors of an integer matrix over the integers.

    Classic Smith reduction with exact arithmetic: repeatedly move the
    smallest-magnitude nonzero entry of the working submatrix to the pivot,
    clear its row and column by Euclidean steps, and fold any entry the
    pivot does not divide back into the pivot row.
    """
    w = a.to_rows()
    nrows, ncols = a.rows, a.cols
    size = min(nrows, ncols)
    diag: list[int] = []

    for t in range(size):
        pivot = _min_abs_position(w, t, nrows, ncols)
        if pivot is None:
            break
        while True:
            pi, pj = pivot
            if pi != t:
                w[t], w[pi] = w[pi], w[t]
            if pj != t:
                for row in w:
                    row[t], row[pj] = row[pj], row[t]

            # Euclidean reduction of column t then row t against the pivot.
            dirty = False
            for i in range(t + 1, nrows):
                if w[i][t]:
                    q = w[i][t] // w[t][t]
                    for j in range(t, ncols):
                        w[i][j] -= q * w[t][j]
                    if w[i][t]:
                        dirty = True
            for j in range(t + 1, ncols):
                if w[t][j]:
                    q = w[t][j] // w[t][t]
                    for i in range(t, nrows):
                        w[i][j] -= q * w[i][t]
                    if w[t][j]:
                        dirty = True
            if dirty:
                pivot = _min_abs_position(w, t, nrows, ncols)
                continue

            # Pivot must divide the remaining submatrix for the chain to hold.
            offender = None
            for i in range(t + 1, nrows):
                for j in range(t + 1, ncols):
                    if w[i][j] % w[t][t]:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            for j in range(t, ncols):
                w[t][j] += w[offender][j]
            pivot = _min_abs_position(w, t, nrows, ncols)

        diag.append(abs(w[t][t]))

    diag.extend(0 for _ in range(size - len(diag)))
    return SmithForm(tuple(diag))


def _min_abs_position(w: list[list[int]], t: int, nrows: int, ncols: int):
    """First position (row-major) of a minimal-magnitude nonzero entry in w[t:,t:]."""
    best = None
    best_val = None
    for i in range(t, nrows):
        for j in range(t, ncols):
            v = w[i][j]
            if v and (best_val is None or abs(v) < best_val):
                best = (i, j)
                best_val = abs(v)
                if best_val == 1:
                    return best
    return best


def det_abs(a: IntMatrix) -> int:
    """Absolute determinant by Bareiss fraction-free elimination."""
    if not a.is_square:
        raise ValueError("determinant requires a square matrix")
    n = a.rows
    m = a.to_rows()
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = None
            for i in range(k + 1, n):
                if m[i][k]:
                    swap = i
                    break
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return abs(m[n - 1][n - 1])
