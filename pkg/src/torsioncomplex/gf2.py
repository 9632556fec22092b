"""Exact dense linear algebra over the two-element field.

A matrix is stored row-wise, each row packed into a single Python integer
whose bit ``j`` is the entry in column ``j``.  Python's arbitrary-precision
integers make row operations (XOR) fast and allocation-free, which is all
Gaussian elimination over F2 needs.

A ``BitMatrix`` with ``rows`` rows and ``cols`` columns represents a linear
map F2^cols -> F2^rows acting on column vectors.  Consequently:

* ``kernel_dim``   = cols - rank   (degrees of freedom in the domain),
* ``cokernel_dim`` = rows - rank   (directions missed in the codomain).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

__all__ = [
    "BitMatrix",
    "rank",
    "kernel_dim",
    "cokernel_dim",
    "from_rows",
    "zero",
    "identity",
]


@dataclass(frozen=True)
class BitMatrix:
    """Immutable F2 matrix with integer-packed rows."""

    rows: int
    cols: int
    row_bits: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(self.row_bits) != self.rows:
            raise ValueError(
                f"expected {self.rows} packed rows, got {len(self.row_bits)}"
            )
        mask = (1 << self.cols) - 1
        for i, bits in enumerate(self.row_bits):
            if bits < 0 or bits & ~mask:
                raise ValueError(f"row {i} has bits outside {self.cols} columns")

    def entry(self, i: int, j: int) -> int:
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"entry ({i}, {j}) outside {self.rows}x{self.cols}")
        return (self.row_bits[i] >> j) & 1

    def row(self, i: int) -> list[int]:
        return [(self.row_bits[i] >> j) & 1 for j in range(self.cols)]

    def column(self, j: int) -> list[int]:
        return [(bits >> j) & 1 for bits in self.row_bits]

    def to_lists(self) -> list[list[int]]:
        return [self.row(i) for i in range(self.rows)]

    def transpose(self) -> "BitMatrix":
        cols = []
        for j in range(self.cols):
            bits = 0
            for i, row in enumerate(self.row_bits):
                bits |= ((row >> j) & 1) << i
            cols.append(bits)
        return BitMatrix(self.cols, self.rows, tuple(cols))

    def __xor__(self, other: "BitMatrix") -> "BitMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("XOR requires equal shapes")
        merged = tuple(a ^ b for a, b in zip(self.row_bits, other.row_bits))
        return BitMatrix(self.rows, self.cols, merged)

    def __repr__(self) -> str:  # compact, test-friendly
        body = "; ".join("".join(str(b) for b in self.row(i)) for i in range(self.rows))
        return f"BitMatrix({self.rows}x{self.cols}: {body})"


def from_rows(data: Sequence[Sequence[int]], cols: int | None = None) -> BitMatrix:
    """Build a matrix from nested 0/1 lists.

    ``cols`` is required when ``data`` is empty or contains empty rows in a
    matrix that still has columns.
    """
    nrows = len(data)
    if cols is None:
        if nrows == 0:
            raise ValueError("cols is required for a matrix with no rows")
        cols = len(data[0])
    packed = []
    for i, row in enumerate(data):
        if len(row) != cols:
            raise ValueError(f"row {i} has length {len(row)}, expected {cols}")
        bits = 0
        for j, v in enumerate(row):
            if v not in (0, 1):
                raise ValueError(f"entry ({i}, {j}) is {v!r}, expected 0 or 1")
            bits |= v << j
        packed.append(bits)
    return BitMatrix(nrows, cols, tuple(packed))


def zero(rows: int, cols: int) -> BitMatrix:
    return BitMatrix(rows, cols, (0,) * rows)


def identity(n: int) -> BitMatrix:
    return BitMatrix(n, n, tuple(1 << i for i in range(n)))


def rank(m: BitMatrix) -> int:
    """Rank over F2 by Gaussian elimination.

    Pivots are chosen deterministically: leftmost nonzero column first,
    topmost available row within that column.
    """
    work = list(m.row_bits)
    r = 0
    for col in range(m.cols):
        bit = 1 << col
        pivot = None
        for i in range(r, len(work)):
            if work[i] & bit:
                pivot = i
                break
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        pivot_row = work[r]
        for i in range(len(work)):
            if i != r and work[i] & bit:
                work[i] ^= pivot_row
        r += 1
        if r == len(work):
            break
    return r


def kernel_dim(m: BitMatrix) -> int:
    """Dimension of the null space of the column-vector action."""
    return m.cols - rank(m)


def cokernel_dim(m: BitMatrix) -> int:
    """Codimension of the column span inside F2^rows."""
    return m.rows - rank(m)


def rank_of_spanning_set(vectors: Iterable[int]) -> int:
    """Rank of a family of packed F2 vectors (column count irrelevant).

    Convenience for callers that accumulate spans incrementally; pivoting is
    by lowest set bit, which does not affect the rank.
    """
    pivots: dict[int, int] = {}
    count = 0
    for vec in vectors:
        v = vec
        while v:
            low = v & -v
            hit = pivots.get(low)
            if hit is None:
                pivots[low] = v
                count += 1
                break
            v ^= hit
    return count
