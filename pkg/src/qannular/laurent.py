"""Integer Laurent polynomials in the quantum parameter q.

Chain complexes are always built over Z[q, q^-1]; homology is computed only
after specializing q to an invertible element of a concrete ring.  A
polynomial is stored as a sparse map from exponent to a nonzero integer
coefficient, so equality is structural.
"""

from __future__ import annotations

from typing import Iterable, Mapping


class LaurentPoly:
    """An element of Z[q, q^-1] in canonical sparse form."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        if isinstance(terms, Mapping):
            items = terms.items()
        else:
            items = terms
        acc: dict[int, int] = {}
        for exp, coeff in items:
            if coeff:
                acc[exp] = acc.get(exp, 0) + coeff
                if not acc[exp]:
                    del acc[exp]
        self.terms = acc

    @classmethod
    def zero(cls) -> LaurentPoly:
        return cls()

    @classmethod
    def one(cls) -> LaurentPoly:
        return cls({0: 1})

    @classmethod
    def const(cls, n: int) -> LaurentPoly:
        return cls({0: n})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: LaurentPoly | int) -> LaurentPoly:
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        acc = dict(self.terms)
        for exp, coeff in other.terms.items():
            new = acc.get(exp, 0) + coeff
            if new:
                acc[exp] = new
            else:
                acc.pop(exp, None)
        out = LaurentPoly.__new__(LaurentPoly)
        out.terms = acc
        return out

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        out = LaurentPoly.__new__(LaurentPoly)
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __sub__(self, other: LaurentPoly | int) -> LaurentPoly:
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        return self + (-other)

    def __rsub__(self, other: int) -> LaurentPoly:
        return LaurentPoly.const(other) - self

    def __mul__(self, other: LaurentPoly | int) -> LaurentPoly:
        if isinstance(other, int):
            if not other:
                return LaurentPoly.zero()
            out = LaurentPoly.__new__(LaurentPoly)
            out.terms = {e: c * other for e, c in self.terms.items()}
            return out
        acc: dict[int, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                new = acc.get(e, 0) + c1 * c2
                if new:
                    acc[e] = new
                else:
                    acc.pop(e, None)
        out = LaurentPoly.__new__(LaurentPoly)
        out.terms = acc
        return out

    __rmul__ = __mul__

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by q^k."""
        out = LaurentPoly.__new__(LaurentPoly)
        out.terms = {e + k: c for e, c in self.terms.items()}
        return out

    def __pow__(self, n: int) -> LaurentPoly:
        if n < 0:
            raise ValueError("negative powers of a general Laurent polynomial")
        acc = LaurentPoly.one()
        base = self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    def coefficient(self, exp: int) -> int:
        return self.terms.get(exp, 0)

    def to_json(self) -> dict[str, int]:
        """Sparse exponent:coefficient map, e.g. {"-1": 1, "1": 1} for q + 1/q."""
        return {str(e): c for e, c in sorted(self.terms.items())}

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items()):
            if e == 0:
                parts.append(f"{c}")
            elif e == 1:
                parts.append(f"{c}*q" if c != 1 else "q")
            else:
                parts.append(f"{c}*q^{e}" if c != 1 else f"q^{e}")
        return " + ".join(parts).replace("+ -", "- ")


def q_power(k: int, coeff: int = 1) -> LaurentPoly:
    """The monomial coeff * q^k."""
    return LaurentPoly({k: coeff})


ZERO = LaurentPoly.zero()
ONE = LaurentPoly.one()
