"""Exact linear algebra over GF(2) with Python ints as bitsets.

A matrix is stored column-major: column ``j`` is an int whose bit ``i`` is the
entry at row ``i``.  All routines reduce columns against a pivot table keyed
by the highest set bit, the same scheme used for boundary-matrix reduction in
persistent homology.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import DimensionError


def _bits_of(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Gf2Vector:
    length: int
    bits: int = 0

    def __post_init__(self) -> None:
        if self.length < 0:
            raise DimensionError("negative vector length")
        if self.bits < 0 or self.bits.bit_length() > self.length:
            raise DimensionError("support index out of range")

    @classmethod
    def from_support(cls, length: int, support: Iterable[int]) -> Gf2Vector:
        mask = 0
        for i in support:
            if i < 0:
                raise DimensionError(f"negative index {i}")
            mask ^= 1 << i
        return cls(length, mask)

    @classmethod
    def from_list(cls, values: Sequence[int]) -> Gf2Vector:
        return cls.from_support(len(values), (i for i, v in enumerate(values) if v & 1))

    @property
    def support(self) -> frozenset[int]:
        return frozenset(_bits_of(self.bits))

    def to_list(self) -> list[int]:
        return [(self.bits >> i) & 1 for i in range(self.length)]

    def __add__(self, other: Gf2Vector) -> Gf2Vector:
        if other.length != self.length:
            raise DimensionError("length mismatch")
        return Gf2Vector(self.length, self.bits ^ other.bits)

    def __bool__(self) -> bool:
        return self.bits != 0

    def weight(self) -> int:
        return self.bits.bit_count()


@dataclass(frozen=True)
class Gf2Matrix:
    rows: int
    cols: int
    columns: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise DimensionError("negative matrix shape")
        if len(self.columns) != self.cols:
            raise DimensionError("column count does not match cols")
        for col in self.columns:
            if col < 0 or col.bit_length() > self.rows:
                raise DimensionError("entry outside matrix rows")

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries: Iterable[tuple[int, int]]) -> Gf2Matrix:
        columns = [0] * cols
        for r, c in entries:
            if not (0 <= r < rows and 0 <= c < cols):
                raise DimensionError(f"entry {(r, c)} outside {rows}x{cols}")
            columns[c] |= 1 << r
        return cls(rows, cols, tuple(columns))

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence[int]], cols: int | None = None) -> Gf2Matrix:
        rows = len(dense)
        if cols is None:
            cols = len(dense[0]) if rows else 0
        return cls.from_entries(
            rows, cols, ((r, c) for r, row in enumerate(dense) for c, v in enumerate(row) if v & 1)
        )

    @classmethod
    def identity(cls, n: int) -> Gf2Matrix:
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> Gf2Matrix:
        return cls(rows, cols, (0,) * cols)

    @property
    def entries(self) -> frozenset[tuple[int, int]]:
        return frozenset((r, c) for c, col in enumerate(self.columns) for r in _bits_of(col))

    def nnz(self) -> int:
        return sum(col.bit_count() for col in self.columns)

    def to_dense(self) -> list[list[int]]:
        return [[(col >> r) & 1 for col in self.columns] for r in range(self.rows)]

    def transpose(self) -> Gf2Matrix:
        out = [0] * self.rows
        for c, col in enumerate(self.columns):
            bit = 1 << c
            for r in _bits_of(col):
                out[r] |= bit
        return Gf2Matrix(self.cols, self.rows, tuple(out))

    def apply(self, x: Gf2Vector) -> Gf2Vector:
        if x.length != self.cols:
            raise DimensionError(f"vector of length {x.length} for {self.cols} columns")
        acc = 0
        for c in _bits_of(x.bits):
            acc ^= self.columns[c]
        return Gf2Vector(self.rows, acc)

    def __matmul__(self, other: Gf2Matrix) -> Gf2Matrix:
        if other.rows != self.cols:
            raise DimensionError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        cols = []
        for col in other.columns:
            acc = 0
            for c in _bits_of(col):
                acc ^= self.columns[c]
            cols.append(acc)
        return Gf2Matrix(self.rows, other.cols, tuple(cols))

    def hstack(self, extra: Sequence[int]) -> Gf2Matrix:
        """Append columns given as row bitmasks."""
        return Gf2Matrix(self.rows, self.cols + len(extra), self.columns + tuple(extra))

    def is_zero(self) -> bool:
        return not any(self.columns)


class ColumnReduction:
    """Incremental column reduction of a GF(2) matrix.

    Keeps a pivot table of reduced columns; with ``track=True`` each reduced
    column also remembers which original columns were summed to produce it,
    which is what ``solve`` and ``kernel`` need.
    """

    def __init__(self, matrix: Gf2Matrix, track: bool = False):
        self.rows = matrix.rows
        self.track = track
        self._pivots: dict[int, tuple[int, int]] = {}
        self._kernel: list[int] = []
        self.ncols = 0
        for col in matrix.columns:
            self.add_column(col)

    def add_column(self, col: int) -> bool:
        """Append a column; return True if it increased the rank."""
        combo = (1 << self.ncols) if self.track else 0
        self.ncols += 1
        pivots = self._pivots
        while col:
            low = col.bit_length() - 1
            hit = pivots.get(low)
            if hit is None:
                pivots[low] = (col, combo)
                return True
            col ^= hit[0]
            if self.track:
                combo ^= hit[1]
        if self.track:
            self._kernel.append(combo)
        return False

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def residual(self, vec: int) -> tuple[int, int]:
        """Reduce ``vec`` against the pivots; return (remainder, combo used)."""
        combo = 0
        pivots = self._pivots
        while vec:
            low = vec.bit_length() - 1
            hit = pivots.get(low)
            if hit is None:
                break
            vec ^= hit[0]
            combo ^= hit[1]
        return vec, combo

    def contains(self, vec: int) -> bool:
        return self.residual(vec)[0] == 0

    def solve(self, vec: int) -> int | None:
        if not self.track:
            raise RuntimeError("solve needs a tracking reduction")
        rem, combo = self.residual(vec)
        return None if rem else combo

    def kernel(self) -> list[int]:
        if not self.track:
            raise RuntimeError("kernel needs a tracking reduction")
        return list(self._kernel)


def rank(m: Gf2Matrix) -> int:
    return ColumnReduction(m).rank


def solve(m: Gf2Matrix, b: Gf2Vector) -> Gf2Vector | None:
    """Return some x with m.x = b over GF(2), or None if b is not in the column span."""
    if b.length != m.rows:
        raise DimensionError(f"right-hand side has length {b.length}, matrix has {m.rows} rows")
    x = ColumnReduction(m, track=True).solve(b.bits)
    return None if x is None else Gf2Vector(m.cols, x)


def kernel_basis(m: Gf2Matrix) -> list[Gf2Vector]:
    """Basis of the null space.  Each vector's highest bit is a distinct column, so they are independent."""
    return [Gf2Vector(m.cols, v) for v in ColumnReduction(m, track=True).kernel()]


__all__ = [
    "ColumnReduction",
    "Gf2Matrix",
    "Gf2Vector",
    "kernel_basis",
    "rank",
    "solve",
]
