"""Resolutions of tangle words, annular closures, and canonical curve data.

A resolution replaces each crossing by a smoothing: bit 0 keeps a positive
crossing vertical and turns a negative one into a cap-cup turnback, bit 1
the other way around.  The resolved diagram is a planar flat tangle made of
atomic cells; closing it up (top j to bottom j in the annulus, top j to
bottom w+1-j in the Moebius band) produces closed curves that cross the
seam at the strand positions.

Canonical form demands every circle meet the seam at most once (twice for
Moebius separating curves).  It is reached by retracting innermost arcs on
the negative side of the seam (runs of paths with both ends on the top
boundary); a retraction is free on undotted states, while a dot riding on
a retracted arc crosses the seam from the negative to the positive side
and picks up q^2.  These accumulated exponents form the transcript used by
the TQFT edge maps; off-seam circles trapped in a retraction disk impose
no correction, since delooping and relooping cancel exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .words import TangleWord

Cell = tuple


class ClosureError(ValueError):
    pass


@dataclass
class Path:
    """A maximal open strand of the resolved diagram, or a closed loop."""

    cells: tuple[Cell, ...]
    end0: tuple[str, int] | None  # ("B", pos) or ("T", pos); None for loops
    end1: tuple[str, int] | None

    @property
    def is_loop(self) -> bool:
        return self.end0 is None


def smoothing(kind: str, bit: int) -> str:
    """'vert' or 'turnback' for a crossing token and resolution bit."""
    if kind == "p":
        return "vert" if bit == 0 else "turnback"
    return "turnback" if bit == 0 else "vert"


def _slice_cells(kind: str, pos: int, width_in: int, s: int, bit: int | None):
    """Cells of one slice, each with its two (level, position) endpoints."""
    cells = []
    i = pos
    if kind == "u":
        width_out = width_in + 2
        for j in range(1, width_in + 1):
            out = j if j < i else j + 2
            cells.append((("t", s, j), [(s, j), (s + 1, out)]))
        cells.append((("u", s, i), [(s + 1, i), (s + 1, i + 1)]))
    elif kind == "a":
        width_out = width_in - 2
        for j in range(1, width_in + 1):
            if j in (i, i + 1):
                continue
            out = j if j < i else j - 2
            cells.append((("t", s, j), [(s, j), (s + 1, out)]))
        cells.append((("a", s, i), [(s, i), (s, i + 1)]))
    else:  # resolved crossing
        width_out = width_in
        for j in range(1, width_in + 1):
            if j in (i, i + 1):
                continue
            cells.append((("t", s, j), [(s, j), (s + 1, j)]))
        if smoothing(kind, bit) == "vert":
            cells.append((("x", s, i, 0), [(s, i), (s + 1, i)]))
            cells.append((("x", s, i, 1), [(s, i + 1), (s + 1, i + 1)]))
        else:
            cells.append((("x", s, i, 0), [(s, i), (s, i + 1)]))  # cap
            cells.append((("x", s, i, 1), [(s + 1, i), (s + 1, i + 1)]))  # cup
    return cells, width_out


def resolve_paths(word: TangleWord, bits: tuple[int, ...]) -> list[Path]:
    """Trace the resolved diagram into open paths and closed loops."""
    crossings = word.crossings
    if len(bits) != len(crossings):
        raise ClosureError("resolution bits do not match crossing count")
    bit_of = dict(zip(crossings, bits))
    width = word.bottom_strands
    all_cells: list[tuple[Cell, list[tuple[int, int]]]] = []
    for s, (kind, pos) in enumerate(word.slices):
        cells, width = _slice_cells(kind, pos, width, s, bit_of.get(s))
        all_cells.extend(cells)
    if not word.slices:
        return [
            Path((("t", -1, p),), ("B", p), ("T", p))
            for p in range(1, word.bottom_strands + 1)
        ]
    levels = len(word.slices)
    adj: dict[tuple[int, int], list[tuple[Cell, tuple[int, int]]]] = {}
    for cell, (n0, n1) in all_cells:
        adj.setdefault(n0, []).append((cell, n1))
        adj.setdefault(n1, []).append((cell, n0))

    def boundary(node):
        lvl, p = node
        if lvl == 0:
            return ("B", p)
        if lvl == levels:
            return ("T", p)
        return None

    seen: set[Cell] = set()
    paths: list[Path] = []
    starts = sorted(n for n in adj if boundary(n))
    for start in starts:
        if all(c in seen for c, _ in adj[start]):
            continue
        cells = []
        node = start
        while True:
            step = [(c, m) for c, m in adj[node] if c not in seen]
            if not step:
                break
            cell, node = step[0]
            seen.add(cell)
            cells.append(cell)
            if boundary(node):
                break
        paths.append(Path(tuple(cells), boundary(start), boundary(node)))
    for cell, (n0, n1) in all_cells:  # leftover cycles are loops
        if cell in seen:
            continue
        cells = [cell]
        seen.add(cell)
        node = n1
        while node != n0:
            step = [(c, m) for c, m in adj[node] if c not in seen]
            cell2, node = step[0]
            seen.add(cell2)
            cells.append(cell2)
        paths.append(Path(tuple(cells), None, None))
    return paths


@dataclass
class Curve:
    """A closed curve of the closure, cut by the seam into segments.

    arcs[i] = (bottom position, direction) of the i-th seam crossing in
    traversal order; direction +1 runs from the top boundary to the bottom
    one (the core direction, into the positive side of the seam).
    segments[i] lists the (path index, forward) pieces traversed after
    arcs[i].  A loop has no arcs and a single segment.
    """

    arcs: tuple[tuple[int, int], ...]
    segments: tuple[tuple[tuple[int, bool], ...], ...]
    cells: frozenset
    kind: str = "?"  # "W" trivial, "V" essential/separating, "G" nonseparating
    position: int | None = None
    factors: dict[Cell, int] = field(default_factory=dict)

    @property
    def crossings(self) -> tuple[tuple[int, int], ...]:
        return self.arcs

    def dot_exponent(self, cell: Cell) -> int:
        return self.factors.get(cell, 0)

    def min_cell(self) -> Cell:
        return min(self.cells)

    def segment_of_cell(self, cell: Cell, paths: list[Path]) -> int:
        for i, seg in enumerate(self.segments):
            for pn, _fwd in seg:
                if cell in paths[pn].cells:
                    return i
        raise ValueError("cell not on curve")

    def inplace_depth(self, cell_from: Cell, cell_to: Cell, paths: list[Path]) -> int:
        """Signed seam crossings walking forward between two cells."""
        i = self.segment_of_cell(cell_from, paths)
        j = self.segment_of_cell(cell_to, paths)
        total = 0
        while i != j:
            i = (i + 1) % len(self.segments)
            total += self.arcs[i][1]
        return total


@dataclass
class AnnularCurveConfig:
    """Curve configuration of one closed-up resolution."""

    paths: list[Path]
    curves: list[Curve]
    mobius: bool = False

    @property
    def essential_count(self) -> int:
        return sum(1 for c in self.curves if c.kind == "V")

    @property
    def trivial_circles(self) -> list[Curve]:
        return [c for c in self.curves if c.kind == "W"]

    @property
    def has_nonseparating(self) -> bool:
        return any(c.kind == "G" for c in self.curves)


def _partner(pos: int, width: int, mobius: bool) -> int:
    return width + 1 - pos if mobius else pos


def trace_closure(word: TangleWord, bits: tuple[int, ...], mobius: bool = False) -> AnnularCurveConfig:
    """Close up a resolution into raw curves (before canonicalization)."""
    if word.bottom_strands != word.top_strands:
        raise ClosureError("only (n, n) words close up")
    width = word.bottom_strands
    paths = resolve_paths(word, bits)
    end_index: dict[tuple[str, int], tuple[int, int]] = {}
    for n, p in enumerate(paths):
        if not p.is_loop:
            end_index[p.end0] = (n, 0)
            end_index[p.end1] = (n, 1)
    curves: list[Curve] = []
    used: set[tuple[int, int]] = set()
    for n, p in enumerate(paths):
        if p.is_loop:
            curves.append(Curve((), (((n, True),),), frozenset(p.cells)))
            continue
        if (n, 0) in used:
            continue
        arcs: list[tuple[int, int]] = []
        segments: list[list[tuple[int, bool]]] = []
        cells: set[Cell] = set()
        here = (n, 0)
        pieces: list[tuple[int, bool]] = []
        while here not in used:
            used.add(here)
            pn, which = here
            path = paths[pn]
            forward = which == 0
            used.add((pn, 1 - which))
            pieces.append((pn, forward))
            cells.update(path.cells)
            side, pos = path.end1 if forward else path.end0
            if side == "T":
                bottom, direction = _partner(pos, width, mobius), +1
                nxt = ("B", bottom)
            else:
                bottom, direction = pos, -1
                nxt = ("T", _partner(pos, width, mobius))
            arcs.append((bottom, direction))
            segments.append(pieces)
            pieces = []
            here = end_index[nxt]
        # collected[k] precedes arc k; our convention wants segment i after arc i
        segments = segments[1:] + segments[:1]
        curves.append(Curve(tuple(arcs), tuple(tuple(s) for s in segments), frozenset(cells)))
    return AnnularCurveConfig(paths=paths, curves=curves, mobius=mobius)


def canonicalize(config: AnnularCurveConfig) -> AnnularCurveConfig:
    """Retract negative arcs (innermost first) until every curve crosses the
    seam in a single direction, accumulating q^2 dot factors on dragged
    cells, then classify and order the curves."""
    paths = config.paths
    curves = [
        Curve(c.arcs, c.segments, c.cells, factors=dict(c.factors)) for c in config.curves
    ]
    active: set[int] = set()
    for c in curves:
        active.update(pos for pos, _ in c.arcs)

    while True:
        candidates = []
        for cn, curve in enumerate(curves):
            m = len(curve.arcs)
            for i in range(m):
                nxt = (i + 1) % m
                if curve.arcs[i][1] == -1 and curve.arcs[nxt][1] == +1:
                    lo, hi = sorted((curve.arcs[i][0], curve.arcs[nxt][0]))
                    if not any(lo < p < hi for p in active):
                        candidates.append((hi - lo, cn, i))
        if not candidates:
            break
        _, cn, i = min(candidates)
        curve = curves[cn]
        m = len(curve.arcs)
        nxt = (i + 1) % m
        for pn, _fwd in curve.segments[i]:
            for cell in paths[pn].cells:
                curve.factors[cell] = curve.factors.get(cell, 0) + 2
        active.discard(curve.arcs[i][0])
        active.discard(curve.arcs[nxt][0])
        if m == 2:
            merged = curve.segments[nxt] + curve.segments[i]
            arcs: tuple = ()
            segments = (merged,)
        else:
            prev = (i - 1) % m
            merged = curve.segments[prev] + curve.segments[i] + curve.segments[nxt]
            arcs = tuple(curve.arcs[k] for k in range(m) if k not in (i, nxt))
            segs = []
            for k in range(m):
                if k in (i, nxt):
                    continue
                segs.append(merged if k == prev else curve.segments[k])
            segments = tuple(segs)
        curves[cn] = Curve(arcs, tuple(tuple(s) for s in segments), curve.cells,
                           factors=curve.factors)

    out: list[Curve] = []
    for curve in curves:
        dirs = {d for _p, d in curve.arcs}
        assert len(dirs) <= 1, "canonicalization left mixed crossing directions"
        count = len(curve.arcs)
        if config.mobius:
            if count > 2:
                raise AssertionError("embedded Moebius curve winding more than twice")
            kind = {0: "W", 1: "G", 2: "V"}[count]
        else:
            if count > 1:
                raise AssertionError("embedded annular curve with winding > 1")
            kind = {0: "W", 1: "V"}[count]
        pos = min((p for p, _ in curve.arcs), default=None)
        out.append(Curve(curve.arcs, curve.segments, curve.cells, kind, pos, curve.factors))
    essentials = sorted((c for c in out if c.kind == "V"), key=lambda c: c.position)
    others = sorted((c for c in out if c.kind != "V"), key=lambda c: c.min_cell())
    result = AnnularCurveConfig(paths=paths, curves=essentials + others, mobius=config.mobius)
    _check_factor_consistency(config, result)
    return result


def _check_factor_consistency(raw: AnnularCurveConfig, final: AnnularCurveConfig) -> None:
    """Dot factors must realize the in-place seam relation w_-^- = q^2 w_-^+:
    along a raw trivial curve the accumulated factor drops by twice the
    signed crossing count of the walk between two cells."""
    final_by_cells = {c.cells: c for c in final.curves}
    for raw_curve in raw.curves:
        if not raw_curve.arcs:
            continue
        done = final_by_cells[raw_curve.cells]
        if done.kind != "W":
            continue
        probes = []
        for i, seg in enumerate(raw_curve.segments):
            cell = raw.paths[seg[0][0]].cells[0]
            probes.append((i, cell))
        i0, c0 = probes[0]
        for i1, c1 in probes[1:]:
            depth = sum(raw_curve.arcs[(i0 + k) % len(raw_curve.arcs)][1]
                        for k in range(1, i1 - i0 + 1))
            got = done.dot_exponent(c1) - done.dot_exponent(c0)
            assert got == -2 * depth, "transcript factors violate the seam dot relation"


def resolve(word: TangleWord, bits: tuple[int, ...], mobius: bool = False) -> AnnularCurveConfig:
    """Closed-up, canonicalized curve configuration of one resolution."""
    return canonicalize(trace_closure(word, bits, mobius))


@dataclass
class CubeEdge:
    source: tuple[int, ...]
    target: tuple[int, ...]
    flipped: int  # index into word.crossings
    sign: int


@dataclass
class CubeOfResolutions:
    word: TangleWord
    mobius: bool
    vertices: dict[tuple[int, ...], AnnularCurveConfig]
    edges: list[CubeEdge]


def build_cube(word: TangleWord, mobius: bool = False) -> CubeOfResolutions:
    """All resolutions with anticommuting edge signs (parity of lower bits)."""
    if word.bottom_strands != word.top_strands:
        raise ClosureError("only (n, n) words close up")
    n = len(word.crossings)
    vertices = {bits: resolve(word, bits, mobius) for bits in product((0, 1), repeat=n)}
    edges = []
    for bits in vertices:
        for c in range(n):
            if bits[c]:
                continue
            target = bits[:c] + (1,) + bits[c + 1 :]
            sign = -1 if sum(bits[:c]) % 2 else 1
            edges.append(CubeEdge(bits, target, c, sign))
    return CubeOfResolutions(word, mobius, vertices, edges)
