"""Free dg algebras on weighted generators and their bigraded homology.

Every generator carries a homological degree and an internal weight >= 1, so
each (hdeg, weight) component of the free algebra is finite-dimensional and
homology can be computed by exact elimination component by component.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coeffs import RingHandle
from .errors import (
    DegreeMismatch,
    InputFormatError,
    NotAField,
    NotHomogeneous,
    SquareNotZero,
    WeightMismatch,
)
from .freealg import Alphabet, NcPoly, PolyContext, word_key
from .linalg import matrix_rank


@dataclass(frozen=True)
class DgGenerator:
    name: str
    hdeg: int
    weight: int


class DgAlgebra:
    """k<generators> with a differential given on generators.

    Construction checks that d lowers homological degree by one, preserves
    weight and squares to zero on every generator.
    """

    def __init__(self, ring: RingHandle, generators, diff=None):
        if not ring.is_field:
            raise NotAField(f"dg algebras need field coefficients, got {ring}")
        self.ring = ring
        self.generators = tuple(generators)
        for g in self.generators:
            if g.hdeg < 0:
                raise DegreeMismatch(f"{g.name}: negative homological degree")
            if g.weight < 1:
                raise WeightMismatch(f"{g.name}: weight must be >= 1")
        self.ctx = PolyContext(ring, Alphabet(tuple(g.name for g in self.generators)))
        self.hdegs = tuple(g.hdeg for g in self.generators)
        self.weights = tuple(g.weight for g in self.generators)
        diff = dict(diff or {})
        unknown = set(diff) - set(self.ctx.a.names)
        if unknown:
            raise InputFormatError(f"differential given for unknown generators {sorted(unknown)}")
        self.diff = []
        for g in self.generators:
            value = diff.get(g.name, self.ctx.zero())
            if isinstance(value, str):
                value = self.ctx.parse(value)
            elif value.ctx != self.ctx:
                value = value.in_context(self.ctx)
            for w in value.words():
                if self.word_hdeg(w) != g.hdeg - 1:
                    raise DegreeMismatch(f"d({g.name}) has a term of degree {self.word_hdeg(w)}")
                if self.word_weight(w) != g.weight:
                    raise WeightMismatch(
                        f"d({g.name}) has a term of weight {self.word_weight(w)} != {g.weight}")
            self.diff.append(value.words())
        for i, g in enumerate(self.generators):
            if self._apply(self.diff[i]):
                raise SquareNotZero(f"d(d({g.name})) != 0")

    def word_hdeg(self, w) -> int:
        return sum(self.hdegs[i] for i in w)

    def word_weight(self, w) -> int:
        return sum(self.weights[i] for i in w)

    def _apply(self, words):
        """Leibniz rule with Koszul sign (-1)^(hdeg of the prefix)."""
        ring = self.ring
        out = {}
        for w, c in words.items():
            sign_deg = 0
            for pos, letter in enumerate(w):
                dg = self.diff[letter]
                if dg:
                    coeff = ring.neg(c) if sign_deg % 2 else c
                    left, right = w[:pos], w[pos + 1:]
                    for gw, gc in dg.items():
                        nw = left + gw + right
                        nv = ring.add(out.get(nw, ring.zero()), ring.mul(coeff, gc))
                        if nv == 0:
                            out.pop(nw, None)
                        else:
                            out[nw] = nv
                sign_deg += self.hdegs[letter]
        return out

    def element(self, text: str) -> NcPoly:
        return self.ctx.parse(text)


def dg_free(ring, generators, diff=None) -> DgAlgebra:
    gens = [g if isinstance(g, DgGenerator) else DgGenerator(*g) for g in generators]
    return DgAlgebra(ring, gens, diff)


def dg_differential(alg: DgAlgebra, p: NcPoly) -> NcPoly:
    if p.ctx != alg.ctx:
        p = p.in_context(alg.ctx)
    words = p.words()
    if len({alg.word_hdeg(w) for w in words}) > 1:
        raise NotHomogeneous("element is not homogeneous in homological degree")
    return alg.ctx.from_words(alg._apply(words))


def bigraded_basis(alg: DgAlgebra, h: int, w: int):
    """Words of total homological degree h and total weight w, deglex order."""
    if h < 0 or w < 0:
        return []
    out = []
    n = len(alg.generators)

    def extend(word, hh, ww):
        if hh == h and ww == w:
            out.append(word)
        for letter in range(n):
            nh, nw = hh + alg.hdegs[letter], ww + alg.weights[letter]
            if nh <= h and nw <= w:
                extend(word + (letter,), nh, nw)

    extend((), 0, 0)
    out.sort(key=word_key)
    return out


def differential_rank(alg: DgAlgebra, h: int, w: int) -> int:
    """Rank of d restricted to the (h, w) component."""
    if h <= 0:
        return 0
    src = bigraded_basis(alg, h, w)
    dst = bigraded_basis(alg, h - 1, w)
    if not src or not dst:
        return 0
    index = {word: i for i, word in enumerate(dst)}
    rows = []
    for word in src:
        image = alg._apply({word: alg.ring.one()})
        rows.append({index[v]: c for v, c in image.items()})
    return matrix_rank(rows, len(dst), alg.ring)


def homology_rank(alg: DgAlgebra, h: int, w: int) -> int:
    dim = len(bigraded_basis(alg, h, w))
    return dim - differential_rank(alg, h, w) - differential_rank(alg, h + 1, w)


def homology_table(alg: DgAlgebra, hmax: int, wmax: int):
    return [(h, w, homology_rank(alg, h, w)) for h in range(hmax + 1) for w in range(wmax + 1)]


def derived_clifford_zero(d: int, ring: RingHandle) -> DgAlgebra:
    """k<x, x1 | d x1 = x^d, d x = 0> with weight(x) = 1, weight(x1) = d."""
    if d < 2:
        raise DegreeMismatch("the zero-form derived Clifford algebra needs d >= 2")
    return dg_free(ring, [DgGenerator("x", 0, 1), DgGenerator("x1", 1, d)], {"x1": f"x^{d}"})

