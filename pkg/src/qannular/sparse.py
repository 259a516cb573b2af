"""Sparse exact matrices over Z[q, q^-1] or a computation ring.

Entries live in a coefficient domain described by a tiny ops adapter, so
the same matrix code serves Laurent-polynomial differentials and their
ring specializations.  No explicit zeros are stored.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Iterable

from .laurent import LaurentPoly
from .rings import RingSpec


@dataclass(frozen=True)
class CoeffOps:
    zero: Any
    one: Any
    add: Callable[[Any, Any], Any]
    neg: Callable[[Any], Any]
    mul: Callable[[Any, Any], Any]
    is_zero: Callable[[Any], bool]


LAURENT_OPS = CoeffOps(
    zero=LaurentPoly.zero(),
    one=LaurentPoly.one(),
    add=lambda a, b: a + b,
    neg=lambda a: -a,
    mul=lambda a, b: a * b,
    is_zero=lambda a: a.is_zero(),
)


def ring_ops(ring: RingSpec) -> CoeffOps:
    return CoeffOps(
        zero=ring.zero,
        one=ring.one,
        add=ring.add,
        neg=ring.neg,
        mul=ring.mul,
        is_zero=ring.is_zero,
    )


@dataclass
class SparseMatrix:
    """rows x cols matrix; entries maps (row, col) -> nonzero coefficient."""

    rows: int
    cols: int
    ops: CoeffOps = LAURENT_OPS
    entries: dict[tuple[int, int], Any] = field(default_factory=dict)

    @classmethod
    def zero(cls, rows: int, cols: int, ops: CoeffOps = LAURENT_OPS) -> SparseMatrix:
        return cls(rows, cols, ops)

    @classmethod
    def identity(cls, n: int, ops: CoeffOps = LAURENT_OPS) -> SparseMatrix:
        return cls(n, n, ops, {(i, i): ops.one for i in range(n)})

    def set(self, r: int, c: int, value: Any) -> None:
        if not (0 <= r < self.rows and 0 <= c < self.cols):
            raise IndexError((r, c, self.rows, self.cols))
        if self.ops.is_zero(value):
            self.entries.pop((r, c), None)
        else:
            self.entries[(r, c)] = value

    def add_to(self, r: int, c: int, value: Any) -> None:
        new = self.ops.add(self.entries.get((r, c), self.ops.zero), value)
        self.set(r, c, new)

    def get(self, r: int, c: int) -> Any:
        return self.entries.get((r, c), self.ops.zero)

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and self.entries == other.entries

    def __add__(self, other: SparseMatrix) -> SparseMatrix:
        assert (self.rows, self.cols) == (other.rows, other.cols)
        out = SparseMatrix(self.rows, self.cols, self.ops, dict(self.entries))
        for pos, val in other.entries.items():
            out.add_to(*pos, val)
        return out

    def __neg__(self) -> SparseMatrix:
        return SparseMatrix(
            self.rows, self.cols, self.ops, {p: self.ops.neg(v) for p, v in self.entries.items()}
        )

    def __sub__(self, other: SparseMatrix) -> SparseMatrix:
        return self + (-other)

    def __matmul__(self, other: SparseMatrix) -> SparseMatrix:
        """self @ other, composing other first (self.cols == other.rows)."""
        assert self.cols == other.rows, (self.cols, other.rows)
        by_row: dict[int, list[tuple[int, Any]]] = {}
        for (r, c), v in other.entries.items():
            by_row.setdefault(r, []).append((c, v))
        out = SparseMatrix(self.rows, other.cols, self.ops)
        for (r, k), v in self.entries.items():
            for c, w in by_row.get(k, ()):
                out.add_to(r, c, self.ops.mul(v, w))
        return out

    def scale(self, value: Any) -> SparseMatrix:
        out = SparseMatrix(self.rows, self.cols, self.ops)
        for pos, v in self.entries.items():
            out.add_to(*pos, self.ops.mul(value, v))
        return out

    def transpose(self) -> SparseMatrix:
        return SparseMatrix(
            self.cols, self.rows, self.ops, {(c, r): v for (r, c), v in self.entries.items()}
        )

    def column(self, c: int) -> dict[int, Any]:
        return {r: v for (r, cc), v in self.entries.items() if cc == c}

    def apply(self, vec: dict[int, Any]) -> dict[int, Any]:
        """Matrix times a sparse column vector {row index: coefficient}."""
        out: dict[int, Any] = {}
        for (r, c), v in self.entries.items():
            if c in vec:
                acc = self.ops.add(out.get(r, self.ops.zero), self.ops.mul(v, vec[c]))
                if self.ops.is_zero(acc):
                    out.pop(r, None)
                else:
                    out[r] = acc
        return out

    def specialize(self, ring: RingSpec) -> SparseMatrix:
        """Map a Laurent-entry matrix into a ring-entry matrix."""
        out = SparseMatrix(self.rows, self.cols, ring_ops(ring))
        for pos, v in self.entries.items():
            out.set(*pos, ring.specialize(v))
        return out

    def dense(self) -> list[list[Any]]:
        grid = [[self.ops.zero for _ in range(self.cols)] for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            grid[r][c] = v
        return grid


def from_columns(
    rows: int, columns: Iterable[dict[int, Any]], ops: CoeffOps = LAURENT_OPS
) -> SparseMatrix:
    cols = list(columns)
    out = SparseMatrix(rows, len(cols), ops)
    for c, col in enumerate(cols):
        for r, v in col.items():
            out.set(r, c, v)
    return out
