"""The quantum group action on state spaces of canonical configurations.

Essential circles, read left to right from the seam, alternately carry the
dual fundamental representation and the fundamental one (V1* innermost),
identified with the common rank-two space V by v*_1 -> v-, v*_-1 -> q^-1 v+.
On V = V1:  E v- = v+,  F v+ = v-,  K v+- = q^+-1 v+-;
on V = V1*: E v- = -v+, F v+ = -v-, K as before.
Trivial circles carry the trivial representation.  Tensor products act via
the coproduct  D(E) = E(x)K + 1(x)E,  D(F) = F(x)1 + K^-1(x)F,
D(K) = K(x)K, with factors composed left to right.
"""

from __future__ import annotations

from itertools import product

from .complexes import GradedChainComplex
from .laurent import LaurentPoly, ONE, q_power
from .resolutions import AnnularCurveConfig
from .sparse import SparseMatrix
from .tqft import VertexSpace, state_space

GENERATORS = ("E", "F", "K", "Kinv")


def _single_action(gen: str, dual: bool) -> dict[str, list[tuple[str, LaurentPoly]]]:
    """Action on one V factor: label -> [(new label, coefficient)]."""
    sign = -1 if dual else 1
    if gen == "E":
        return {"+": [], "-": [("+", LaurentPoly.const(sign))]}
    if gen == "F":
        return {"+": [("-", LaurentPoly.const(sign))], "-": []}
    if gen == "K":
        return {"+": [("+", q_power(1))], "-": [("-", q_power(-1))]}
    if gen == "Kinv":
        return {"+": [("+", q_power(-1))], "-": [("-", q_power(1))]}
    raise ValueError(gen)


def _k_weight(gen: str, label: str) -> LaurentPoly:
    exp = 1 if label == "+" else -1
    return q_power(exp if gen == "K" else -exp)


def operator_on_space(gen: str, space: VertexSpace) -> SparseMatrix:
    """The generator acting on one vertex state space."""
    curves = space.config.curves
    ess = [n for n, c in enumerate(curves) if c.kind == "V"]
    dual_of = {n: (m % 2 == 0) for m, n in enumerate(ess)}  # V1* innermost
    out = SparseMatrix(space.rank, space.rank)
    index = {s: n for n, s in enumerate(space.states)}
    for col, state in enumerate(space.states):
        if gen in ("K", "Kinv"):
            coeff = ONE
            for n in ess:
                coeff = coeff * _k_weight(gen, state[n])
            out.add_to(index[state], col, coeff)
            continue
        for slot_pos, n in enumerate(ess):
            for new_label, coeff in _single_action(gen, dual_of[n])[state[n]]:
                total = coeff
                if gen == "E":  # E (x) K on later factors
                    for m in ess[slot_pos + 1 :]:
                        total = total * _k_weight("K", state[m])
                else:  # K^-1 (x) F on earlier factors
                    for m in ess[:slot_pos]:
                        total = total * _k_weight("Kinv", state[m])
                new_state = list(state)
                new_state[n] = new_label
                out.add_to(index[tuple(new_state)], col, total)
    return out


def uqsl2_operator(gen: str, n: int) -> SparseMatrix:
    """The generator on the state space of n canonical essential circles."""
    from .resolutions import Curve

    curves = [
        Curve(((m + 1, 1),), (((0, True),),), frozenset({("t", -1, m + 1)}), "V", m + 1)
        for m in range(n)
    ]
    config = AnnularCurveConfig(paths=[], curves=curves, mobius=False)
    return operator_on_space(gen, state_space(config))


def chain_operator(gen: str, word, complex_: GradedChainComplex) -> dict[int, SparseMatrix]:
    """The generator acting degreewise on a bracket complex, using the
    vertex labels stored by build_complex."""
    from .resolutions import build_cube

    cube = build_cube(word, False)
    spaces = {bits: state_space(cfg) for bits, cfg in cube.vertices.items()}
    mats = {}
    for i, labels in complex_.labels.items():
        dim = complex_.dim(i)
        m = SparseMatrix(dim, dim)
        position = {lab: n for n, lab in enumerate(labels)}
        by_vertex: dict[tuple, list[int]] = {}
        for n, (bits, _state) in enumerate(labels):
            by_vertex.setdefault(bits, []).append(n)
        for bits, idxs in by_vertex.items():
            space = spaces[bits]
            op = operator_on_space(gen, space)
            for (r, c), v in op.entries.items():
                row = position[(bits, space.states[r])]
                col = position[(bits, space.states[c])]
                m.add_to(row, col, v)
        mats[i] = m
    return mats
