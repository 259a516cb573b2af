"""Tangle words: elementary-slice presentations of annular diagrams.

A word is a sequence of slices read bottom to top, each acting on the
current strand positions:

    p<i>  positive crossing of strands i, i+1   (width preserved)
    n<i>  negative crossing of strands i, i+1   (width preserved)
    u<i>  cup inserting new strands at i, i+1   (width + 2)
    a<i>  cap joining strands i, i+1            (width - 2)

Positions are 1-indexed.  The annular closure glues top strand j to bottom
strand j; the Moebius closure glues top j to bottom (width + 1 - j).  The
convenience form ``torus 2 n`` expands to n tokens ``n1`` on two strands,
the standard word for the (2, n) torus link.

Orientations are propagated from an all-upward bottom; cups introduce a
free direction fixed by the first constraint met.  Crossing signs combine
the token's handedness with strand directions (antiparallel strands flip
the contribution to n+/n-).
"""

from __future__ import annotations

from dataclasses import dataclass


class WordError(ValueError):
    """Malformed token, width violation, or unclosable orientation."""


Slice = tuple[str, int]  # (kind in "pnua", 1-indexed position)


@dataclass(frozen=True)
class TangleWord:
    bottom_strands: int
    slices: tuple[Slice, ...]
    bottom_dirs: tuple[int, ...] | None = None  # +1 up / -1 down; default all up

    def __post_init__(self):
        if self.bottom_dirs is not None and len(self.bottom_dirs) != self.bottom_strands:
            raise WordError("bottom_dirs does not match the strand count")
        if self.bottom_strands < 0:
            raise WordError("negative strand count")
        width = self.bottom_strands
        for kind, pos in self.slices:
            if kind in ("p", "n", "a"):
                if not 1 <= pos <= width - 1:
                    raise WordError(f"slice {kind}{pos} out of range at width {width}")
                if kind == "a":
                    width -= 2
            elif kind == "u":
                if not 1 <= pos <= width + 1:
                    raise WordError(f"slice u{pos} out of range at width {width}")
                width += 2
            else:
                raise WordError(f"unknown slice kind {kind!r}")

    @property
    def top_strands(self) -> int:
        width = self.bottom_strands
        for kind, _ in self.slices:
            if kind == "u":
                width += 2
            elif kind == "a":
                width -= 2
        return width

    @property
    def crossings(self) -> tuple[int, ...]:
        """Indices into slices of the crossing slices, in word order."""
        return tuple(n for n, (kind, _) in enumerate(self.slices) if kind in "pn")

    def widths(self) -> list[int]:
        """Width before each slice, plus the final width."""
        out = [self.bottom_strands]
        width = self.bottom_strands
        for kind, _ in self.slices:
            if kind == "u":
                width += 2
            elif kind == "a":
                width -= 2
            out.append(width)
        return out

    def is_closable(self) -> bool:
        if self.bottom_strands != self.top_strands:
            return False
        try:
            self.orientations()
        except WordError:
            return False
        return True

    def orientations(self, mobius: bool = False) -> list[list[int]]:
        """Per-slice strand directions (+1 up, -1 down), bottom first.

        Directions are solved by propagation: bottom strands point up, cup
        pairs carry one free sign resolved by the first cap or closure
        constraint that mentions it.  Raises WordError when no assignment
        closes up.
        """
        widths = self.widths()
        n_vars = 0
        var_of: list[list[int]] = []  # signed variable index per strand per level
        level = [i + 1 for i in range(self.bottom_strands)]
        n_vars = self.bottom_strands
        var_of.append(list(level))
        for kind, pos in self.slices:
            level = list(level)
            i = pos - 1
            if kind in ("p", "n"):
                level[i], level[i + 1] = level[i + 1], level[i]
            elif kind == "u":
                new = n_vars + 1
                n_vars += 1
                level[i:i] = [new, -new]
            else:  # cap
                del level[i : i + 2]
            var_of.append(list(level))
        # union-find over variables with relative signs
        parent = list(range(n_vars + 1))
        rel = [1] * (n_vars + 1)

        def find(x: int) -> tuple[int, int]:
            sign = 1
            while parent[x] != x:
                sign *= rel[x]
                x = parent[x]
            return x, sign

        def union(a: int, sa: int, b: int, sb: int, relation: int) -> None:
            # sa*var(a) == relation * sb*var(b)
            ra, wa = find(a)
            rb, wb = find(b)
            want = sa * wa * relation * sb * wb
            if ra == rb:
                if want != 1:
                    raise WordError("unclosable orientation")
                return
            parent[ra] = rb
            rel[ra] = want

        def signed(token: int) -> tuple[int, int]:
            return abs(token), 1 if token > 0 else -1

        for n, (kind, pos) in enumerate(self.slices):
            if kind == "a":
                a, sa = signed(var_of[n][pos - 1])
                b, sb = signed(var_of[n][pos])
                union(a, sa, b, sb, -1)  # cap needs antiparallel strands
        top = var_of[-1]
        if len(top) != self.bottom_strands:
            raise WordError("word is not closable: widths differ")
        for j in range(self.bottom_strands):
            glued = self.bottom_strands - 1 - j if mobius else j
            a, sa = signed(top[j])
            b, sb = signed(var_of[0][glued])
            union(a, sa, b, sb, 1)  # closure: top direction matches glued bottom
        # pin bottom strand directions (all up unless the word says otherwise)
        values = [0] * (n_vars + 1)
        dirs_in = self.bottom_dirs or (1,) * self.bottom_strands
        for x in range(1, self.bottom_strands + 1):
            r, w = find(x)
            want = w * dirs_in[x - 1]
            if values[r] and values[r] != want:
                raise WordError("unclosable orientation")
            values[r] = want
        for x in range(1, n_vars + 1):
            r, w = find(x)
            if not values[r]:
                values[r] = 1
        out = []
        for level_tokens in var_of:
            dirs = []
            for token in level_tokens:
                x, s = signed(token)
                r, w = find(x)
                dirs.append(s * w * values[r])
            out.append(dirs)
        return out

    def crossing_signs(self, mobius: bool = False) -> list[int]:
        """Oriented sign of each crossing slice, in word order."""
        dirs = self.orientations(mobius)
        signs = []
        for n, (kind, pos) in enumerate(self.slices):
            if kind in "pn":
                d1, d2 = dirs[n][pos - 1], dirs[n][pos]
                token_sign = 1 if kind == "p" else -1
                signs.append(token_sign * d1 * d2)
        return signs

    def writhe(self, mobius: bool = False) -> int:
        return sum(self.crossing_signs(mobius))

    def n_plus_minus(self, mobius: bool = False) -> tuple[int, int]:
        signs = self.crossing_signs(mobius)
        return sum(1 for s in signs if s > 0), sum(1 for s in signs if s < 0)

    def text(self) -> str:
        return " ".join(f"{kind}{pos}" for kind, pos in self.slices)

    def __str__(self) -> str:
        return f"[{self.bottom_strands}] {self.text() or '(empty)'}"


def parse_word(text: str, strands: int | None = None) -> TangleWord:
    """Parse the word grammar, including the `strands: n` header and the
    `torus 2 n` convenience generator."""
    tokens = text.replace(",", " ").split()
    if tokens[:1] == ["torus"]:
        if len(tokens) != 3 or tokens[1] != "2":
            raise WordError("torus generator supports 'torus 2 <n>'")
        n = int(tokens[2])
        if n < 0:
            raise WordError("torus 2 <n> needs n >= 0")
        return TangleWord(2, tuple(("n", 1) for _ in range(n)))
    slices: list[Slice] = []
    declared = strands
    i = 0
    while i < len(tokens):
        tok = tokens[i]
        if tok in ("strands:", "strands"):
            if i + 1 >= len(tokens):
                raise WordError("missing strand count after 'strands:'")
            declared = int(tokens[i + 1])
            i += 2
            continue
        if tok.startswith("strands:"):
            declared = int(tok.split(":", 1)[1])
            i += 1
            continue
        kind, digits = tok[:1], tok[1:]
        if kind not in "pnua" or not digits.isdigit():
            raise WordError(f"malformed token {tok!r}")
        slices.append((kind, int(digits)))
        i += 1
    if declared is None:
        declared = _infer_strands(slices)
    return TangleWord(declared, tuple(slices))


def _infer_strands(slices: list[Slice]) -> int:
    """Smallest strand count making every slice position legal."""
    for width in range(0, 64):
        try:
            TangleWord(width, tuple(slices))
            return width
        except WordError:
            continue
    raise WordError("cannot infer a strand count")


def rotate_closure(word: TangleWord, k: int) -> TangleWord:
    """Cyclically move the first k slices past the seam to the end.

    The closure of the rotated word is an isotopic annular link; this is
    the operational form of the trace relation g.f ~ f.g.
    """
    if not word.is_closable():
        raise WordError("rotation needs a closable word")
    n = len(word.slices)
    if n == 0:
        return word
    k %= n
    widths = word.widths()
    rotated = word.slices[k:] + word.slices[:k]
    return TangleWord(widths[k], rotated)


def torus_word(n: int) -> TangleWord:
    return parse_word(f"torus 2 {n}")
