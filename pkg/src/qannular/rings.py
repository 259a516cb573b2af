"""Computation rings and specialization of Laurent polynomials.

A ``RingSpec`` names a coefficient ring together with the invertible value
that q specializes to.  Supported kinds are the integers, the rationals,
prime fields F_p, and the four-element field GF(4) = F_2[x]/(x^2+x+1),
which is needed for the braid action on cables (strict functoriality wants
characteristic two while the skein relation wants q of multiplicative
order > 2).

Ring elements are plain Python values: ``int`` for Z and F_p (reduced
representatives), ``Fraction`` for Q, and ``int`` in ``range(4)`` for GF(4)
encoding a + b*x as a + 2*b.  All arithmetic goes through the ring object,
so matrices stay agnostic of the element representation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .laurent import LaurentPoly

Element = Any

_GF4_MUL = (
    (0, 0, 0, 0),
    (0, 1, 2, 3),
    (0, 2, 3, 1),  # x * x = x + 1, x * (x+1) = 1
    (0, 3, 1, 2),
)
_GF4_INV = {1: 1, 2: 3, 3: 2}


class RingError(ValueError):
    """Raised for unsupported rings or non-invertible q values."""


@dataclass(frozen=True)
class RingSpec:
    """A coefficient ring plus the value of q in it.

    kind: one of "Z", "Q", "Fp", "GF4"; p is the characteristic for "Fp".
    q is stored in the ring's element representation and must be invertible,
    which over Z forces q in {1, -1}.
    """

    kind: str
    p: int = 0
    q: Element = 1

    def __post_init__(self):
        if self.kind not in ("Z", "Q", "Fp", "GF4"):
            raise RingError(f"unknown ring kind {self.kind!r}")
        if self.kind == "Fp":
            if self.p < 2 or any(self.p % d == 0 for d in range(2, int(self.p**0.5) + 1)):
                raise RingError(f"{self.p} is not prime")
            object.__setattr__(self, "q", self.q % self.p)
        if self.kind == "Q" and not isinstance(self.q, Fraction):
            object.__setattr__(self, "q", Fraction(self.q))
        if not self.is_unit(self.q):
            raise RingError(f"q = {self.q!r} is not invertible in {self.describe()}")

    # -- constructors ----------------------------------------------------

    @staticmethod
    def integers(q: int = 1) -> RingSpec:
        return RingSpec("Z", 0, q)

    @staticmethod
    def rationals(q) -> RingSpec:
        return RingSpec("Q", 0, Fraction(q))

    @staticmethod
    def prime_field(p: int, q: int) -> RingSpec:
        return RingSpec("Fp", p, q)

    @staticmethod
    def gf4(q: int = 2) -> RingSpec:
        return RingSpec("GF4", 0, q)

    # -- structure -------------------------------------------------------

    @property
    def characteristic(self) -> int:
        return {"Z": 0, "Q": 0, "Fp": self.p, "GF4": 2}[self.kind]

    @property
    def is_field(self) -> bool:
        return self.kind != "Z"

    @property
    def zero(self) -> Element:
        return Fraction(0) if self.kind == "Q" else 0

    @property
    def one(self) -> Element:
        return Fraction(1) if self.kind == "Q" else 1

    def from_int(self, n: int) -> Element:
        if self.kind == "Z":
            return n
        if self.kind == "Q":
            return Fraction(n)
        if self.kind == "Fp":
            return n % self.p
        return n % 2  # GF4: the prime subfield is {0, 1}

    def add(self, a: Element, b: Element) -> Element:
        if self.kind == "Fp":
            return (a + b) % self.p
        if self.kind == "GF4":
            return a ^ b
        return a + b

    def neg(self, a: Element) -> Element:
        if self.kind == "Fp":
            return (-a) % self.p
        if self.kind == "GF4":
            return a
        return -a

    def sub(self, a: Element, b: Element) -> Element:
        return self.add(a, self.neg(b))

    def mul(self, a: Element, b: Element) -> Element:
        if self.kind == "Fp":
            return (a * b) % self.p
        if self.kind == "GF4":
            return _GF4_MUL[a][b]
        return a * b

    def is_zero(self, a: Element) -> bool:
        return a == self.zero

    def is_unit(self, a: Element) -> bool:
        if self.is_zero(a):
            return False
        if self.kind == "Z":
            return a in (1, -1)
        return True

    def inv(self, a: Element) -> Element:
        if not self.is_unit(a):
            raise RingError(f"{a!r} is not invertible in {self.describe()}")
        if self.kind == "Z":
            return a
        if self.kind == "Q":
            return Fraction(1) / a
        if self.kind == "Fp":
            return pow(a, self.p - 2, self.p)
        return _GF4_INV[a]

    def q_power(self, k: int) -> Element:
        if k >= 0:
            acc = self.one
            for _ in range(k):
                acc = self.mul(acc, self.q)
            return acc
        return self.inv(self.q_power(-k))

    def specialize(self, p: LaurentPoly) -> Element:
        """Apply the ring homomorphism Z[q, q^-1] -> R sending q to self.q."""
        acc = self.zero
        for exp, coeff in p.terms.items():
            acc = self.add(acc, self.mul(self.from_int(coeff), self.q_power(exp)))
        return acc

    def describe(self) -> str:
        base = {"Z": "Z", "Q": "Q", "Fp": f"F{self.p}", "GF4": "F4"}[self.kind]
        return f"{base}[q={self.q}]"

    def element_str(self, a: Element) -> str:
        if self.kind == "GF4":
            return {0: "0", 1: "1", 2: "x", 3: "x+1"}[a]
        return str(a)


def specialize(p: LaurentPoly, ring: RingSpec) -> Element:
    return ring.specialize(p)


def parse_ring(ring_name: str, q_text: str) -> RingSpec:
    """Parse CLI ring/q flags: Z | Q | F<p> | F4, with q an int or fraction."""
    name = ring_name.strip()
    if name == "Z":
        return RingSpec.integers(int(q_text))
    if name == "Q":
        return RingSpec.rationals(Fraction(q_text))
    if name in ("F4", "GF4"):
        return RingSpec.gf4(int(q_text))
    if name.startswith("F"):
        return RingSpec.prime_field(int(name[1:]), int(q_text))
    raise RingError(f"unknown ring {ring_name!r}")
