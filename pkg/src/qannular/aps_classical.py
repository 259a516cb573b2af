"""Independently coded classical annular and Moebius functors (q = 1).

This is the oracle for the classical limit: it works on raw closures with
no canonicalization and no seam bookkeeping, classifying curves by their
winding alone and applying the classical surgery tables

    merge:  w+w+ -> w+, w+-w-+ -> w-, w-w- -> 0;  v w+ -> v, v w- -> 0;
            v+-v-+ -> w-, like orientations -> 0
    split:  w+ -> w+w- + w-w+, w- -> w-w-;  v -> v w-;
            w+ -> v+v- + v-v+, w- -> 0

and, over a Moebius band, the one-sided saddles w+ -> v+ + v-, w- -> 0 and
v+- -> w-.  Everything is over an arbitrary coefficient ring.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .complexes import GradedChainComplex, verify_complex
from .resolutions import trace_closure
from .rings import RingSpec
from .sparse import SparseMatrix, ring_ops
from .words import TangleWord


def _winding(curve) -> int:
    return abs(sum(d for _p, d in curve.arcs))


def _classify(curve, mobius: bool) -> str:
    if mobius:
        return {0: "W", 2: "V"}.get(_winding(curve), "G")
    return "V" if _winding(curve) else "W"


@dataclass
class _Vertex:
    curves: list
    kinds: list[str]
    states: list[tuple[str, ...]]
    bidegrees: list[tuple[int, int]]


def _vertex(config, mobius: bool) -> _Vertex:
    kinds = [_classify(c, mobius) for c in config.curves]
    if "G" in kinds:
        return _Vertex(list(config.curves), kinds, [], [])
    states = [tuple(s) for s in product(*[("+", "-")] * len(kinds))] if kinds else [()]
    bidegrees = []
    for state in states:
        j = sum(1 if l == "+" else -1 for l, kind in zip(state, kinds) if kind == "W")
        k = 0
        if not mobius:
            k = sum(1 if l == "+" else -1 for l, kind in zip(state, kinds) if kind == "V")
        bidegrees.append((j, k))
    return _Vertex(list(config.curves), kinds, states, bidegrees)


def _saddle(src: _Vertex, tgt: _Vertex, sites, state, mobius):
    site_set = set(sites)
    src_inv = [n for n, c in enumerate(src.curves) if c.cells & site_set]
    tgt_inv = [n for n, c in enumerate(tgt.curves) if c.cells & site_set]
    tgt_by_cells = {c.cells: n for n, c in enumerate(tgt.curves)}
    base = {}
    for n, c in enumerate(src.curves):
        if n not in src_inv:
            base[tgt_by_cells[c.cells]] = state[n]
    terms = []
    if len(src_inv) == 2 and len(tgt_inv) == 1:
        (k1, l1), (k2, l2) = ((src.kinds[n], state[n]) for n in src_inv)
        t = tgt_inv[0]
        if (k1, k2) == ("W", "W"):
            if (l1, l2) == ("+", "+"):
                terms = [({t: "+"}, 1)]
            elif "-" in (l1, l2) and (l1, l2) != ("-", "-"):
                terms = [({t: "-"}, 1)]
        elif "W" in (k1, k2):
            (ess, triv) = ((l1, l2)) if k1 != "W" else ((l2, l1))
            if triv == "+":
                terms = [({t: ess}, 1)]
        else:
            if l1 != l2:
                terms = [({t: "-"}, 1)]
    elif len(src_inv) == 1 and len(tgt_inv) == 2:
        s = src_inv[0]
        label = state[s]
        t1, t2 = tgt_inv
        kinds = (tgt.kinds[t1], tgt.kinds[t2])
        if src.kinds[s] == "W" and kinds == ("W", "W"):
            if label == "+":
                terms = [({t1: "+", t2: "-"}, 1), ({t1: "-", t2: "+"}, 1)]
            else:
                terms = [({t1: "-", t2: "-"}, 1)]
        elif src.kinds[s] == "W":
            if label == "+":
                terms = [({t1: "+", t2: "-"}, 1), ({t1: "-", t2: "+"}, 1)]
        else:
            ess, triv = (t1, t2) if tgt.kinds[t1] != "W" else (t2, t1)
            terms = [({ess: label, triv: "-"}, 1)]
    elif len(src_inv) == 1 and len(tgt_inv) == 1:
        s, t = src_inv[0], tgt_inv[0]
        if src.kinds[s] == "W" and tgt.kinds[t] == "V":
            if state[s] == "+":
                terms = [({t: "+"}, 1), ({t: "-"}, 1)]
        elif src.kinds[s] == "V" and tgt.kinds[t] == "W":
            terms = [({t: "-"}, 1)]
    return base, terms


def classical_complex(word: TangleWord, ring: RingSpec, mobius: bool = False) -> GradedChainComplex:
    """The classical APS complex of a closure, over `ring` (q plays no role)."""
    n = len(word.crossings)
    n_plus, n_minus = word.n_plus_minus(mobius)
    ops = ring_ops(ring)
    vertices = {}
    for bits in product((0, 1), repeat=n):
        vertices[bits] = _vertex(trace_closure(word, bits, mobius), mobius)
    hdeg = {bits: sum(bits) - n_minus for bits in vertices}
    order: dict[int, list] = {}
    for bits in sorted(vertices):
        order.setdefault(hdeg[bits], []).append(bits)
    terms, labels, offset = {}, {}, {}
    for i, vlist in sorted(order.items()):
        terms[i], labels[i] = [], []
        shift = i + n_plus - n_minus
        for bits in vlist:
            offset[bits] = len(terms[i])
            v = vertices[bits]
            for state, (j, k) in zip(v.states, v.bidegrees):
                terms[i].append((j + shift, k))
                labels[i].append((bits, state))
    cx = GradedChainComplex(terms, {}, labels, ops)
    for i in sorted(order):
        if i + 1 not in terms:
            continue
        d = SparseMatrix(len(terms[i + 1]), len(terms[i]), ops)
        for bits in order[i]:
            for c in range(n):
                if bits[c]:
                    continue
                tgt_bits = bits[:c] + (1,) + bits[c + 1 :]
                sign = -1 if sum(bits[:c]) % 2 else 1
                s = word.crossings[c]
                pos = word.slices[s][1]
                sites = (("x", s, pos, 0), ("x", s, pos, 1))
                src_v, tgt_v = vertices[bits], vertices[tgt_bits]
                if not src_v.states or not tgt_v.states:
                    continue
                tgt_index = {st: m for m, st in enumerate(tgt_v.states)}
                for col, state in enumerate(src_v.states):
                    base, saddle_terms = _saddle(src_v, tgt_v, sites, state, mobius)
                    for assignment, coeff in saddle_terms:
                        full = dict(base)
                        full.update(assignment)
                        tgt_state = tuple(full[m] for m in range(len(tgt_v.curves)))
                        value = ring.from_int(coeff if sign > 0 else -coeff)
                        d.add_to(
                            offset[tgt_bits] + tgt_index[tgt_state],
                            offset[bits] + col,
                            value,
                        )
        if not d.is_zero():
            cx.diff[i] = d
    assert verify_complex(cx), "classical complex failed d^2 = 0"
    return cx
