"""Trigraded chain complexes of free modules and chain maps between them.

A complex stores, per homological degree i, an ordered basis whose elements
carry a (quantum, annular) bidegree, and a differential raising i by one
(the cube direction, from fewer to more vertical smoothings).  Everything
is over Z[q, q^-1] by default; q acts as a degree-zero scalar, so an entry
never moves the (j, k) bidegree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .sparse import CoeffOps, LAURENT_OPS, SparseMatrix


@dataclass
class GradedChainComplex:
    """terms[i] = list of (j, k) bidegrees; diff[i]: C^i -> C^{i+1}.

    Differentials use the column convention: d(e_c) = sum_r M[r, c] e_r.
    labels[i] optionally names the basis elements for matching and output.
    """

    terms: dict[int, list[tuple[int, int]]] = field(default_factory=dict)
    diff: dict[int, SparseMatrix] = field(default_factory=dict)
    labels: dict[int, list[Any]] = field(default_factory=dict)
    ops: CoeffOps = LAURENT_OPS

    def degrees(self) -> list[int]:
        return sorted(self.terms)

    def dim(self, i: int) -> int:
        return len(self.terms.get(i, ()))

    def differential(self, i: int) -> SparseMatrix:
        if i in self.diff:
            return self.diff[i]
        return SparseMatrix.zero(self.dim(i + 1), self.dim(i), self.ops)

    def total_rank(self) -> int:
        return sum(len(v) for v in self.terms.values())

    def shifted(self, dh: int = 0, dj: int = 0, dk: int = 0) -> GradedChainComplex:
        """[dh]{dj} shift: new term at i is the old term at i - dh, with j
        raised by dj; the differential picks up (-1)^dh."""
        terms = {i + dh: [(j + dj, k + dk) for (j, k) in basis] for i, basis in self.terms.items()}
        labels = {i + dh: list(lab) for i, lab in self.labels.items()}
        sign = -1 if dh % 2 else 1
        diff = {}
        for i, m in self.diff.items():
            diff[i + dh] = m if sign == 1 else -m
        return GradedChainComplex(terms, diff, labels, self.ops)


def verify_complex(c: GradedChainComplex) -> bool:
    """True iff d.d = 0 and every differential entry preserves (j, k)."""
    for i in c.degrees():
        d = c.differential(i)
        if d.rows != c.dim(i + 1) or d.cols != c.dim(i):
            return False
        src = c.terms.get(i, [])
        tgt = c.terms.get(i + 1, [])
        for (r, col) in d.entries:
            if src[col] != tgt[r]:
                return False
        d_next = c.differential(i + 1)
        if not (d_next @ d).is_zero():
            return False
    return True


@dataclass
class ChainMap:
    """A degree-0 map of complexes; components[i]: source^i -> target^i."""

    source: GradedChainComplex
    target: GradedChainComplex
    components: dict[int, SparseMatrix] = field(default_factory=dict)

    def component(self, i: int) -> SparseMatrix:
        if i in self.components:
            return self.components[i]
        return SparseMatrix.zero(self.target.dim(i), self.source.dim(i), self.source.ops)

    def verify(self) -> bool:
        """Exact commutation with the differentials on every degree."""
        degrees = set(self.source.terms) | set(self.target.terms)
        for i in sorted(degrees):
            lhs = self.target.differential(i) @ self.component(i)
            rhs = self.component(i + 1) @ self.source.differential(i)
            if lhs != rhs:
                return False
        return True

    def compose(self, other: ChainMap) -> ChainMap:
        """self . other (other applied first)."""
        degrees = set(self.components) | set(other.components)
        comps = {i: self.component(i) @ other.component(i) for i in degrees}
        return ChainMap(other.source, self.target, comps)


def identity_map(c: GradedChainComplex) -> ChainMap:
    return ChainMap(c, c, {i: SparseMatrix.identity(c.dim(i), c.ops) for i in c.terms})


def cone(f: ChainMap) -> GradedChainComplex:
    """Mapping cone: cone(f)^i = source^{i+1} (+) target^i with differential
    (c, d) |-> (-d_C c, f(c) + d_D d)."""
    src, tgt = f.source, f.target
    degrees = sorted(set(i - 1 for i in src.terms) | set(tgt.terms))
    terms: dict[int, list[tuple[int, int]]] = {}
    labels: dict[int, list[Any]] = {}
    for i in degrees:
        terms[i] = list(src.terms.get(i + 1, [])) + list(tgt.terms.get(i, []))
        lab_s = src.labels.get(i + 1, [("src", i + 1, n) for n in range(src.dim(i + 1))])
        lab_t = tgt.labels.get(i, [("tgt", i, n) for n in range(tgt.dim(i))])
        labels[i] = [("cone-src", l) for l in lab_s] + [("cone-tgt", l) for l in lab_t]
    out = GradedChainComplex(terms, {}, labels, src.ops)
    for i in degrees:
        ns, nt = src.dim(i + 1), tgt.dim(i)
        ms, mt = src.dim(i + 2), tgt.dim(i + 1)
        d = SparseMatrix.zero(ms + mt, ns + nt, src.ops)
        for (r, c), v in src.differential(i + 1).entries.items():
            d.set(r, c, src.ops.neg(v))
        for (r, c), v in f.component(i + 1).entries.items():
            d.set(ms + r, c, v)
        for (r, c), v in tgt.differential(i).entries.items():
            d.set(ms + r, ns + c, v)
        if not d.is_zero():
            out.diff[i] = d
    return out


def direct_sum(a: GradedChainComplex, b: GradedChainComplex) -> GradedChainComplex:
    degrees = sorted(set(a.terms) | set(b.terms))
    terms = {i: list(a.terms.get(i, [])) + list(b.terms.get(i, [])) for i in degrees}
    labels = {
        i: [("L", l) for l in a.labels.get(i, range(a.dim(i)))]
        + [("R", l) for l in b.labels.get(i, range(b.dim(i)))]
        for i in degrees
    }
    out = GradedChainComplex(terms, {}, labels, a.ops)
    for i in degrees:
        d = SparseMatrix.zero(a.dim(i + 1) + b.dim(i + 1), a.dim(i) + b.dim(i), a.ops)
        for (r, c), v in a.differential(i).entries.items():
            d.set(r, c, v)
        for (r, c), v in b.differential(i).entries.items():
            d.set(a.dim(i + 1) + r, a.dim(i) + c, v)
        if not d.is_zero():
            out.diff[i] = d
    return out


def specialize_complex(c: GradedChainComplex, ring) -> GradedChainComplex:
    from .sparse import ring_ops

    return GradedChainComplex(
        {i: list(b) for i, b in c.terms.items()},
        {i: m.specialize(ring) for i, m in c.diff.items()},
        {i: list(l) for i, l in c.labels.items()},
        ring_ops(ring),
    )
