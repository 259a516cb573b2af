"""The quantized annular TQFT: state spaces, surgery maps, bracket complexes.

State spaces are spanned by labelings of the canonical curves: w+/w- on
trivial circles (quantum degree +-1), v+/v- on essential circles (annular
degree +-1).  Surgery maps on canonical configurations follow fixed tables;
all configuration-dependent powers of q enter through the canonicalization
transcripts, which govern where a dot may be created or transported:

  merges   W(x)W -> W, V(x)W -> V   and splits  W -> W(x)W, V -> V(x)W
           classical rules, dots carrying the transcript exponent of the
           cell they sit on;
  merge    V(x)V -> W:  (v+,v-) -> q w-,  (v-,v+) -> w-,  like labels -> 0,
           so that capping reproduces ev(v+,v-) = q, ev(v-,v+) = 1;
  split    W -> V(x)V:  w+ -> v+ v- + q^-1 v- v+  (coevaluation), w- -> 0.

Essential circles are ordered left to right from the seam; tensor factors
alternate V1*, V1, ... for the quantum group action.  The Moebius variant
replaces essential circles by separating ones (rules at q^2, plus the
one-sided saddles W -> V and V -> W) and kills configurations containing a
nonseparating curve.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .complexes import GradedChainComplex, verify_complex
from .laurent import LaurentPoly, ONE, q_power
from .resolutions import (
    AnnularCurveConfig,
    CubeOfResolutions,
    ClosureError,
    Curve,
    build_cube,
)
from .sparse import SparseMatrix
from .words import TangleWord


@dataclass
class VertexSpace:
    """Ordered basis of labelings of one canonical configuration."""

    config: AnnularCurveConfig
    states: list[tuple[str, ...]]  # one label "+" / "-" per curve
    bidegrees: list[tuple[int, int]]  # (j, k) before cube shifts

    @property
    def rank(self) -> int:
        return len(self.states)

    def index(self, state: tuple[str, ...]) -> int:
        return self.states.index(state)


def state_space(config: AnnularCurveConfig) -> VertexSpace:
    if config.has_nonseparating:
        return VertexSpace(config, [], [])
    labels_per_curve = [("+", "-") for _ in config.curves]
    states = [tuple(s) for s in product(*labels_per_curve)] if config.curves else [()]
    bidegrees = []
    for state in states:
        j = k = 0
        for curve, label in zip(config.curves, state):
            sign = 1 if label == "+" else -1
            if curve.kind == "W":
                j += sign
            elif not config.mobius:
                k += sign
        bidegrees.append((j, k))
    return VertexSpace(config, states, bidegrees)


def _site_cells(word: TangleWord, cube_edge) -> tuple:
    s = word.crossings[cube_edge.flipped]
    pos = word.slices[s][1]
    return ("x", s, pos, 0), ("x", s, pos, 1)


def _match_curves(src: AnnularCurveConfig, tgt: AnnularCurveConfig, sites) -> tuple:
    """Spectator index map src->tgt plus the involved curves on both sides."""
    site_set = set(sites)
    src_inv = [n for n, c in enumerate(src.curves) if c.cells & site_set]
    tgt_inv = [n for n, c in enumerate(tgt.curves) if c.cells & site_set]
    tgt_by_cells = {c.cells: n for n, c in enumerate(tgt.curves)}
    spectators = {}
    for n, c in enumerate(src.curves):
        if n in src_inv:
            continue
        spectators[n] = tgt_by_cells[c.cells]
    return spectators, src_inv, tgt_inv


def _dot_exp(curve: Curve, cell) -> int:
    return curve.dot_exponent(cell)


def surgery_map(
    word: TangleWord, edge, src_space: VertexSpace, tgt_space: VertexSpace
) -> SparseMatrix:
    """The Laurent matrix of one cube edge (no cube sign)."""
    out = SparseMatrix(tgt_space.rank, src_space.rank)
    if not src_space.states or not tgt_space.states:
        return out
    src_cfg, tgt_cfg = src_space.config, tgt_space.config
    sites = _site_cells(word, edge)
    spectators, src_inv, tgt_inv = _match_curves(src_cfg, tgt_cfg, sites)
    mobius = src_cfg.mobius
    qq = 2 if mobius else 1  # the Moebius membrane doubles quantum powers

    tgt_index = {state: n for n, state in enumerate(tgt_space.states)}

    for col, state in enumerate(src_space.states):
        base: dict[int, str] = {spectators[n]: state[n] for n in spectators}
        terms: list[tuple[dict[int, str], LaurentPoly]]
        if len(src_inv) == 2 and len(tgt_inv) == 1:
            terms = _merge_terms(src_cfg, tgt_cfg, src_inv, tgt_inv[0], state, sites, qq)
        elif len(src_inv) == 1 and len(tgt_inv) == 2:
            terms = _split_terms(src_cfg, tgt_cfg, src_inv[0], tgt_inv, state, sites, qq)
        elif len(src_inv) == 1 and len(tgt_inv) == 1:
            if not mobius:
                raise ClosureError("one-sided saddle in an orientable closure")
            terms = _selfsame_terms(src_cfg, tgt_cfg, src_inv[0], tgt_inv[0], state)
        else:
            raise ClosureError("saddle changes more than two curves")
        for assignment, coeff in terms:
            full = dict(base)
            full.update(assignment)
            tgt_state = tuple(full[n] for n in range(len(tgt_cfg.curves)))
            out.add_to(tgt_index[tgt_state], col, coeff)
    return out


def _merge_terms(src_cfg, tgt_cfg, src_inv, tgt_n, state, sites, qq):
    a_n, b_n = src_inv
    a, b = src_cfg.curves[a_n], src_cfg.curves[b_n]
    la, lb = state[a_n], state[b_n]
    tgt = tgt_cfg.curves[tgt_n]
    kinds = (a.kind, b.kind)
    if kinds == ("W", "W"):
        if la == "+" and lb == "+":
            return [({tgt_n: "+"}, ONE)]
        if la == "-" and lb == "-":
            return []
        dotted = a if la == "-" else b
        cell = dotted.min_cell()
        exp = -_dot_exp(dotted, cell) + _dot_exp(tgt, cell)
        return [({tgt_n: "-"}, q_power(exp))]
    if "W" in kinds:  # essential/separating absorbs a trivial circle
        (ess_n, ess_label), (triv_n, triv_label) = (
            ((a_n, la), (b_n, lb)) if a.kind != "W" else ((b_n, lb), (a_n, la))
        )
        if triv_label == "-":
            return []
        return [({tgt_n: ess_label}, ONE)]
    # two essential (or separating) circles merge into a trivial one; the
    # created dot sits at the site cell owned by the minus-labeled circle,
    # with an extra q (q^2 over the Moebius membrane) when the outer circle
    # carries the plus -- capping off then reproduces the evaluation map
    inner, outer = (a, b) if a.position < b.position else (b, a)
    inner_label, outer_label = (la, lb) if a.position < b.position else (lb, la)
    if inner_label == outer_label:
        return []
    minus_curve = inner if inner_label == "-" else outer
    cell = next(c for c in sites if c in minus_curve.cells)
    exp = (qq if outer_label == "+" else 0) + _dot_exp(tgt, cell)
    return [({tgt_n: "-"}, q_power(exp))]


def _split_terms(src_cfg, tgt_cfg, src_n, tgt_inv, state, sites, qq):
    src = src_cfg.curves[src_n]
    label = state[src_n]
    p_n, q_n = tgt_inv
    p, r = tgt_cfg.curves[p_n], tgt_cfg.curves[q_n]
    kinds = (p.kind, r.kind)
    if src.kind == "W" and kinds == ("W", "W"):
        site_p = next(c for c in sites if c in p.cells)
        site_r = next(c for c in sites if c in r.cells)
        if label == "+":
            return [
                ({p_n: "-", q_n: "+"}, q_power(_dot_exp(p, site_p))),
                ({p_n: "+", q_n: "-"}, q_power(_dot_exp(r, site_r))),
            ]
        cell = src.min_cell()
        carrier, other, other_site = (p_n, q_n, site_r) if cell in p.cells else (q_n, p_n, site_p)
        carrier_curve = tgt_cfg.curves[carrier]
        other_curve = tgt_cfg.curves[other]
        exp = (
            -_dot_exp(src, cell)
            + _dot_exp(carrier_curve, cell)
            + _dot_exp(other_curve, other_site)
        )
        return [({carrier: "-", other: "-"}, q_power(exp))]
    if src.kind == "W":  # coevaluation: trivial circle splits into two essentials
        if label == "-":
            return []
        inner_n, outer_n = (p_n, q_n) if p.position < r.position else (q_n, p_n)
        return [
            ({inner_n: "+", outer_n: "-"}, ONE),
            ({inner_n: "-", outer_n: "+"}, q_power(-qq)),
        ]
    # essential splits off a trivial circle, which is born dotted
    (ess_n, triv_n) = (p_n, q_n) if p.kind != "W" else (q_n, p_n)
    triv = tgt_cfg.curves[triv_n]
    site = next(c for c in sites if c in triv.cells)
    return [({ess_n: label, triv_n: "-"}, q_power(_dot_exp(triv, site)))]


def _selfsame_terms(src_cfg, tgt_cfg, src_n, tgt_n, state):
    src, tgt = src_cfg.curves[src_n], tgt_cfg.curves[tgt_n]
    label = state[src_n]
    if src.kind == "W" and tgt.kind == "V":
        if label == "-":
            return []
        return [({tgt_n: "+"}, ONE), ({tgt_n: "-"}, q_power(-1))]
    if src.kind == "V" and tgt.kind == "W":
        coeff = q_power(1) if label == "+" else ONE
        return [({tgt_n: "-"}, coeff)]
    return []  # V->V and W->W one-sided saddles vanish for degree reasons


def build_complex(word: TangleWord, mobius: bool = False, check: bool = True) -> GradedChainComplex:
    """The bracket complex of the closure of a word, over Z[q, q^-1].

    Homological degrees run from -n_minus to n_plus; each vertex carries
    the quantum shift {i + n_plus - n_minus}.
    """
    cube = build_cube(word, mobius)
    n_plus, n_minus = word.n_plus_minus(mobius)
    spaces = {bits: state_space(cfg) for bits, cfg in cube.vertices.items()}
    hdeg = {bits: sum(bits) - n_minus for bits in spaces}
    order: dict[int, list[tuple[int, ...]]] = {}
    for bits in sorted(spaces):
        order.setdefault(hdeg[bits], []).append(bits)
    terms: dict[int, list[tuple[int, int]]] = {}
    labels: dict[int, list] = {}
    offset: dict[tuple[int, ...], int] = {}
    for i, vertex_list in sorted(order.items()):
        terms[i] = []
        labels[i] = []
        shift = i + n_plus - n_minus
        for bits in vertex_list:
            offset[bits] = len(terms[i])
            space = spaces[bits]
            for state, (j, k) in zip(space.states, space.bidegrees):
                terms[i].append((j + shift, k))
                labels[i].append((bits, state))
    complex_ = GradedChainComplex(terms, {}, labels)
    for i in sorted(order):
        if i + 1 not in terms:
            continue
        d = SparseMatrix(len(terms[i + 1]), len(terms[i]))
        for edge in cube.edges:
            if hdeg[edge.source] != i:
                continue
            block = surgery_map(word, edge, spaces[edge.source], spaces[edge.target])
            for (r, c), v in block.entries.items():
                d.add_to(offset[edge.target] + r, offset[edge.source] + c,
                         v if edge.sign > 0 else -v)
        if not d.is_zero():
            complex_.diff[i] = d
    if check:
        assert verify_complex(complex_), "bracket complex failed d^2 = 0 or grading"
    return complex_


def mobius_build_complex(word: TangleWord, check: bool = True) -> GradedChainComplex:
    """Moebius-band variant.  Words whose closure meets the cutting arc in
    an odd number of points carry only nonseparating curves: the functor is
    zero on them and the request is refused."""
    if word.bottom_strands % 2:
        raise ClosureError(
            "odd closure intersection: the Moebius functor vanishes identically"
        )
    return build_complex(word, mobius=True, check=check)


# -- canonical-level duality data --------------------------------------------


def ev_pairing(a: str, b: str) -> LaurentPoly:
    """ev: V (x) V -> scalars on canonical essential pairs."""
    if a == "+" and b == "-":
        return q_power(1)
    if a == "-" and b == "+":
        return ONE
    return LaurentPoly.zero()


def coev_vector() -> list[tuple[str, str, LaurentPoly]]:
    """coev(1) = v+ (x) v-  +  q^-1 v- (x) v+."""
    return [("+", "-", ONE), ("-", "+", q_power(-1))]


def torus_eval_check() -> LaurentPoly:
    """Evaluate the torus wrapped once around the annulus: ev after coev."""
    total = LaurentPoly.zero()
    for a, b, coeff in coev_vector():
        total = total + coeff * ev_pairing(a, b)
    return total


def zigzag_matrices() -> tuple[SparseMatrix, SparseMatrix]:
    """Both duality composites (ev(x)1)(1(x)coev) and (1(x)ev)(coev(x)1) on V."""
    idx = {"+": 0, "-": 1}
    left = SparseMatrix(2, 2)
    right = SparseMatrix(2, 2)
    for v in ("+", "-"):
        for a, b, coeff in coev_vector():
            # (1 (x) ev)(coev (x) 1): v -> sum a . ev(b, v)
            right.add_to(idx[a], idx[v], coeff * ev_pairing(b, v))
            # (ev (x) 1)(1 (x) coev): v -> sum ev(v, a) . b
            left.add_to(idx[b], idx[v], coeff * ev_pairing(v, a))
    return left, right
