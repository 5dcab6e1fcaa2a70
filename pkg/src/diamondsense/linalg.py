"""Exact dense integer/boolean matrix products with work accounting.

Products run on int64 and every call pre-checks the no-overflow envelope
(entries at most 2**20 in magnitude, inner dimension at most 2**21, so each
accumulated sum stays under 2**61).  A product of shape (r, k) x (k, c)
charges r * k * c work units: one per multiply-accumulate, the package's
matrix currency.  No fast-multiplication shortcuts; the counts are the point.
"""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from .graphcore import Graph, bits_of
from .work import WorkMeter

MAX_ENTRY = 1 << 20
MAX_INNER = 1 << 21


class IntMatrix:
    """Dense row-major int64 matrix."""

    __slots__ = ("data",)

    def __init__(self, data):
        arr = np.asarray(data, dtype=np.int64)
        if arr.ndim != 2:
            raise ValueError(f"expected a 2-d matrix, got ndim={arr.ndim}")
        self.data = arr

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def entries(self):
        """Row-major flat view of the entries."""
        return self.data.reshape(-1)

    def __getitem__(self, idx):
        return int(self.data[idx])

    def __eq__(self, other: object) -> bool:
        return isinstance(other, IntMatrix) and np.array_equal(self.data, other.data)

    def __repr__(self) -> str:
        return f"IntMatrix({self.rows}x{self.cols})"

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(np.eye(n, dtype=np.int64))

    @classmethod
    def adjacency(cls, g: Graph) -> "IntMatrix":
        return cls(g.dense().astype(np.int64))


def _check_entries(a: IntMatrix) -> None:
    if a.data.size and int(np.abs(a.data).max()) > MAX_ENTRY:
        raise ValueError("matrix entries exceed the 2**20 bound")


def matmul(a: IntMatrix, b: IntMatrix, meter: Optional[WorkMeter] = None) -> IntMatrix:
    """Exact integer product; charges rows * inner * cols work units."""
    if a.cols != b.rows:
        raise ValueError(f"shape mismatch: ({a.rows}x{a.cols}) @ ({b.rows}x{b.cols})")
    if a.cols > MAX_INNER:
        raise ValueError(f"inner dimension {a.cols} exceeds the 2**21 bound")
    _check_entries(a)
    _check_entries(b)
    if meter is not None:
        meter.add(a.rows * a.cols * b.cols)
    return IntMatrix(a.data @ b.data)


class BitMatrix:
    """Boolean matrix stored as one Python int bitmask per row."""

    __slots__ = ("rows", "cols", "row_bits")

    def __init__(self, rows: int, cols: int, row_bits: Sequence[int]):
        if len(row_bits) != rows:
            raise ValueError("row count mismatch")
        limit = 1 << cols
        for r in row_bits:
            if r < 0 or r >= limit:
                raise ValueError("row mask wider than cols")
        self.rows = rows
        self.cols = cols
        self.row_bits = list(row_bits)

    @classmethod
    def from_int(cls, a: IntMatrix) -> "BitMatrix":
        masks = []
        for i in range(a.rows):
            m = 0
            row = a.data[i]
            for j in np.nonzero(row)[0]:
                m |= 1 << int(j)
            masks.append(m)
        return cls(a.rows, a.cols, masks)

    def to_int(self) -> IntMatrix:
        out = np.zeros((self.rows, self.cols), dtype=np.int64)
        for i, mask in enumerate(self.row_bits):
            for j in bits_of(mask):
                out[i, j] = 1
        return IntMatrix(out)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, BitMatrix)
            and (self.rows, self.cols) == (other.rows, other.cols)
            and self.row_bits == other.row_bits
        )


def bool_matmul(a: BitMatrix, b: BitMatrix, meter: Optional[WorkMeter] = None) -> BitMatrix:
    """Boolean product by ORing rows of b selected by set bits of a's rows.

    Charged at the same rows * inner * cols rate as the integer product so
    the two routes stay comparable in the work currency.
    """
    if a.cols != b.rows:
        raise ValueError(f"shape mismatch: ({a.rows}x{a.cols}) @ ({b.rows}x{b.cols})")
    if meter is not None:
        meter.add(a.rows * a.cols * b.cols)
    out = []
    for mask in a.row_bits:
        acc = 0
        for k in bits_of(mask):
            acc |= b.row_bits[k]
        out.append(acc)
    return BitMatrix(a.rows, b.cols, out)


def submatrix_product(
    g: Graph,
    rows: Sequence[int],
    mids: Sequence[int],
    cols: Sequence[int],
    meter: Optional[WorkMeter] = None,
) -> IntMatrix:
    """A[rows, mids] @ A[mids, cols] for the adjacency matrix A of g.

    Entry (i, j) counts mids-vertices adjacent to both rows[i] and cols[j]:
    the workhorse for per-color common-neighbor counts.  Charges
    len(rows) * len(mids) * len(cols).
    """
    for group in (rows, mids, cols):
        for v in group:
            if not (0 <= v < g.n):
                raise ValueError(f"vertex {v} out of range")
    if meter is not None:
        meter.add(len(rows) * len(mids) * len(cols))
    dense = g.dense()
    r = np.asarray(rows, dtype=np.intp)
    m = np.asarray(mids, dtype=np.intp)
    c = np.asarray(cols, dtype=np.intp)
    if len(rows) == 0 or len(cols) == 0:
        return IntMatrix.zeros(len(rows), len(cols))
    if len(mids) == 0:
        return IntMatrix.zeros(len(rows), len(cols))
    left = dense[np.ix_(r, m)].astype(np.int64)
    right = dense[np.ix_(m, c)].astype(np.int64)
    return IntMatrix(left @ right)
