"""Exact computation of quantum annular Khovanov homology.

Two independent pipelines compute the same triply graded invariant of a link
in a thickened annulus, presented as the closure of a tangle word:

* a geometric one, evaluating the cube of resolutions through a quantized
  annular TQFT whose seam bookkeeping is done by canonicalization
  transcripts, and
* an algebraic one, taking quantum Hochschild coinvariants of the
  Chen-Khovanov complex of bimodules over arc algebras.

Both are built over Z[q, q^-1] and homology is taken after specializing q
into a concrete computation ring.  A reflection-twisted variant handles
links in a thickened Moebius band, and chain maps for annular cobordism
movies give the braid action on cables together with its skein relation.
"""

from .laurent import LaurentPoly, q_power
from .rings import RingSpec
from .words import TangleWord, parse_word, rotate_closure
from .homology import HomologySummary, poincare_table

__all__ = [
    "LaurentPoly",
    "q_power",
    "RingSpec",
    "TangleWord",
    "parse_word",
    "rotate_closure",
    "HomologySummary",
    "poincare_table",
]

__version__ = "0.1.0"
