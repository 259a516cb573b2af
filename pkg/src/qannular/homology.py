"""Homology of trigraded complexes via Smith normal form or rank-nullity.

The differential preserves the (j, k) bidegree, so homology is computed one
(j, k) block at a time: over a field by ranks, over Z (q = +-1) by Smith
normal form with minimal-absolute-value pivoting to control coefficient
growth.  Every factorization U A V = D is asserted exactly, together with
the divisibility chain of the diagonal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .complexes import GradedChainComplex, specialize_complex
from .rings import RingError, RingSpec
from .sparse import SparseMatrix, ring_ops


# -- exact field rank --------------------------------------------------------


def field_rank(m: SparseMatrix, ring: RingSpec) -> int:
    """Gaussian elimination rank over a field."""
    grid = {pos: v for pos, v in m.entries.items()}
    rows_live = set(r for r, _ in grid)
    rank = 0
    cols_done: set[int] = set()
    while grid:
        (pr, pc), pv = next(iter(grid.items()))
        # prefer a sparse pivot row for stability of cost, not correctness
        rank += 1
        cols_done.add(pc)
        inv = ring.inv(pv)
        col_entries = {r: v for (r, c), v in grid.items() if c == pc}
        row_entries = {c: v for (r, c), v in grid.items() if r == pr}
        for r, rv in col_entries.items():
            if r == pr:
                continue
            factor = ring.mul(rv, inv)
            for c, cv in row_entries.items():
                new = ring.sub(grid.get((r, c), ring.zero), ring.mul(factor, cv))
                if ring.is_zero(new):
                    grid.pop((r, c), None)
                else:
                    grid[(r, c)] = new
        for c in row_entries:
            grid.pop((pr, c), None)
        for r in col_entries:
            grid.pop((r, pc), None)
    return rank


# -- Smith normal form over Z -------------------------------------------------


def smith_normal_form(m: SparseMatrix) -> tuple[list[list[int]], list[int], list[list[int]]]:
    """Return (U, diag, V) with U m V diagonal = diag, U and V unimodular.

    Dense algorithm; blocks produced by the (j, k) decomposition are small.
    Pivots minimize absolute value among nonzero entries.
    """
    rows, cols = m.rows, m.cols
    a = [[0] * cols for _ in range(rows)]
    for (r, c), v in m.entries.items():
        a[r][c] = v
    u = [[1 if i == j else 0 for j in range(rows)] for i in range(rows)]
    v = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]

    def row_op(i, j, k):  # row_i -= k * row_j
        a[i] = [x - k * y for x, y in zip(a[i], a[j])]
        u[i] = [x - k * y for x, y in zip(u[i], u[j])]

    def col_op(i, j, k):  # col_i -= k * col_j
        for row in a:
            row[i] -= k * row[j]
        for row in v:
            row[i] -= k * row[j]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    t = 0
    n = min(rows, cols)
    while t < n:
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            done = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    q, r = divmod(a[i][t], a[t][t])
                    row_op(i, t, q)
                    if r:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, cols):
                if a[t][j]:
                    q, r = divmod(a[t][j], a[t][t])
                    col_op(j, t, q)
                    if r:
                        swap_cols(t, j)
                        done = False
            if done:
                break
        # enforce divisibility: fold any non-multiple into the pivot
        pivot = a[t][t]
        offender = None
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if a[i][j] % pivot:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            row_op(t, offender, -1)  # adds the offending row, retriggers reduction
            continue
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1

    diag = [a[i][i] for i in range(min(rows, cols)) if a[i][i]]
    _assert_snf(m, u, diag, v)
    return u, diag, v


def _assert_snf(m: SparseMatrix, u, diag, v) -> None:
    rows, cols = m.rows, m.cols
    a = [[0] * cols for _ in range(rows)]
    for (r, c), val in m.entries.items():
        a[r][c] = val
    # U A V == D, exactly
    ua = [[sum(u[i][k] * a[k][j] for k in range(rows)) for j in range(cols)] for i in range(rows)]
    uav = [
        [sum(ua[i][k] * v[k][j] for k in range(cols)) for j in range(cols)] for i in range(rows)
    ]
    for i in range(rows):
        for j in range(cols):
            expect = diag[i] if i == j and i < len(diag) else 0
            assert uav[i][j] == expect, "SNF factorization failed"
    for i in range(len(diag) - 1):
        assert diag[i + 1] % diag[i] == 0, "SNF divisibility chain failed"
    if max(rows, cols) <= 60:
        assert abs(_det(u)) == 1 and abs(_det(v)) == 1, "SNF transforms not unimodular"


def _det(mat: list[list[int]]) -> int:
    """Fraction-free Bareiss determinant of a small integer matrix."""
    n = len(mat)
    if n == 0:
        return 1
    a = [row[:] for row in mat]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def integer_rank(m: SparseMatrix) -> int:
    """Rank over Z = rank over Q, by exact fraction-free elimination."""
    ring = RingSpec.rationals(1)
    lifted = SparseMatrix(m.rows, m.cols, ring_ops(ring))
    for pos, v in m.entries.items():
        lifted.set(*pos, Fraction(v))
    return field_rank(lifted, ring)


# -- summaries ----------------------------------------------------------------


@dataclass
class HomologySummary:
    """Free rank and torsion invariant factors per tridegree (i, j, k)."""

    groups: dict[tuple[int, int, int], tuple[int, tuple[int, ...]]] = field(default_factory=dict)
    ring: RingSpec | None = None

    def rank(self, i: int, j: int, k: int) -> int:
        return self.groups.get((i, j, k), (0, ()))[0]

    def torsion(self, i: int, j: int, k: int) -> tuple[int, ...]:
        return self.groups.get((i, j, k), (0, ()))[1]

    def nonzero(self) -> dict[tuple[int, int, int], tuple[int, tuple[int, ...]]]:
        return {
            key: val
            for key, val in sorted(self.groups.items())
            if val[0] or val[1]
        }

    def total_rank(self) -> int:
        return sum(rank for rank, _ in self.groups.values())

    def forget_annular(self) -> dict[tuple[int, int], int]:
        """Collapse k, for comparisons with bigraded oracles."""
        out: dict[tuple[int, int], int] = {}
        for (i, j, _k), (rank, _tor) in self.groups.items():
            if rank:
                out[(i, j)] = out.get((i, j), 0) + rank
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HomologySummary):
            return NotImplemented
        return self.nonzero() == other.nonzero()

    def to_json(self) -> list[dict[str, Any]]:
        return [
            {"i": i, "j": j, "k": k, "rank": rank, "torsion": list(tor)}
            for (i, j, k), (rank, tor) in sorted(self.groups.items())
            if rank or tor
        ]


def homology(c: GradedChainComplex, ring: RingSpec) -> HomologySummary:
    """Homology of a Laurent complex after specializing q into `ring`."""
    if not (ring.is_field or ring.kind == "Z"):
        raise RingError(f"homology unsupported over {ring.describe()}")
    from .sparse import LAURENT_OPS

    cs = specialize_complex(c, ring) if c.ops is LAURENT_OPS else c
    # group basis indices per degree by (j, k)
    blocks: dict[tuple[int, int], dict[int, list[int]]] = {}
    for i, basis in cs.terms.items():
        for idx, jk in enumerate(basis):
            blocks.setdefault(jk, {}).setdefault(i, []).append(idx)
    summary = HomologySummary({}, ring)
    for (j, k), per_degree in sorted(blocks.items()):
        degrees = sorted(per_degree)
        lo, hi = degrees[0], degrees[-1]
        for i in range(lo, hi + 1):
            dim_i = len(per_degree.get(i, ()))
            if not dim_i:
                continue
            d_in = _restrict(cs, i - 1, per_degree, ring)
            d_out = _restrict(cs, i, per_degree, ring)
            if ring.is_field:
                rank_out = field_rank(d_out, ring)
                rank_in = field_rank(d_in, ring)
                free = dim_i - rank_out - rank_in
                tor: tuple[int, ...] = ()
            else:
                rank_out = integer_rank(d_out)
                _, diag, _ = smith_normal_form(d_in)
                rank_in = len(diag)
                free = dim_i - rank_out - rank_in
                tor = tuple(d for d in diag if abs(d) != 1)
            if free or tor:
                summary.groups[(i, j, k)] = (free, tor)
    return summary


def _restrict(cs: GradedChainComplex, i: int, per_degree: dict[int, list[int]], ring: RingSpec):
    src = per_degree.get(i, [])
    tgt = per_degree.get(i + 1, [])
    d = cs.differential(i)
    out = SparseMatrix(len(tgt), len(src), ring_ops(ring))
    tgt_pos = {idx: n for n, idx in enumerate(tgt)}
    for c_new, c_old in enumerate(src):
        for r_old, v in d.column(c_old).items():
            r_new = tgt_pos.get(r_old)
            if r_new is None:
                if not ring.is_zero(v):
                    raise AssertionError("differential does not preserve (j, k)")
                continue
            out.set(r_new, c_new, v)
    return out


def euler_characteristics(c: GradedChainComplex) -> dict[tuple[int, int], int]:
    """Alternating sum of chain ranks per (j, k)."""
    out: dict[tuple[int, int], int] = {}
    for i, basis in c.terms.items():
        sign = -1 if i % 2 else 1
        for jk in basis:
            out[jk] = out.get(jk, 0) + sign
    return {jk: v for jk, v in out.items() if v}


def summary_euler(s: HomologySummary) -> dict[tuple[int, int], int]:
    out: dict[tuple[int, int], int] = {}
    for (i, j, k), (rank, _) in s.groups.items():
        sign = -1 if i % 2 else 1
        out[(j, k)] = out.get((j, k), 0) + sign * rank
    return {jk: v for jk, v in out.items() if v}


def poincare_table(s: HomologySummary) -> str:
    """Aligned-column text table with deterministic (i, j, k) ordering."""
    rows = [("i", "j", "k", "rank", "torsion")]
    for (i, j, k), (rank, tor) in sorted(s.nonzero().items()):
        tor_text = ",".join(f"Z/{abs(t)}" for t in tor) if tor else "-"
        rows.append((str(i), str(j), str(k), str(rank), tor_text))
    if len(rows) == 1:
        return "(empty homology)"
    widths = [max(len(row[c]) for row in rows) for c in range(5)]
    lines = []
    for n, row in enumerate(rows):
        lines.append("  ".join(cell.rjust(w) for cell, w in zip(row, widths)))
        if n == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines)


def summary_csv(s: HomologySummary) -> str:
    lines = ["i,j,k,rank,torsion"]
    for (i, j, k), (rank, tor) in sorted(s.nonzero().items()):
        tor_text = ";".join(str(abs(t)) for t in tor)
        lines.append(f"{i},{j},{k},{rank},{tor_text}")
    return "\n".join(lines)
