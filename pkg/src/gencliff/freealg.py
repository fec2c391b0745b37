"""Polynomials in the mixed algebra R<a_1..a_N>[x_1..x_n].

The ``a`` generators never commute with each other.  The ``x`` variables are
central over the ``a`` alphabet; whether they commute among themselves is a
per-context choice (:class:`XMode`).  A term is keyed by ``(aword, xpart)``
where ``aword`` is a tuple of generator indices and ``xpart`` is either an
exponent tuple (COMMUTING) or a tuple of variable indices (ORDERED).
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass

from .coeffs import RingHandle, Scalar
from .errors import ContextMismatch, UnknownGenerator

_NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


class XMode(enum.Enum):
    COMMUTING = "commuting"
    ORDERED = "ordered"

    @classmethod
    def parse(cls, text: str) -> "XMode":
        return cls(text.strip().lower())


@dataclass(frozen=True)
class Alphabet:
    """Ordered generator names; index 0 is the smallest letter."""

    names: tuple

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate generator names in {names}")
        for name in names:
            if not isinstance(name, str) or not _NAME_RE.match(name):
                raise ValueError(f"invalid generator name {name!r}")

    def __len__(self):
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def __contains__(self, name):
        return name in self.names


EMPTY = Alphabet(())


def word_key(word):
    """Deglex sort key for a tuple of letter indices."""
    return (len(word), word)


def exps_to_word(exps):
    return tuple(i for i, e in enumerate(exps) for _ in range(e))


def word_to_exps(word, n):
    exps = [0] * n
    for i in word:
        exps[i] += 1
    return tuple(exps)


def format_word(word, names) -> str:
    """``(0, 0, 1)`` over ``a, b`` -> ``a^2*b``; the empty word is ``1``."""
    if not word:
        return "1"
    parts = []
    i = 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        name = names[word[i]]
        parts.append(name if j - i == 1 else f"{name}^{j - i}")
        i = j
    return "*".join(parts)


@dataclass(frozen=True)
class PolyContext:
    """Coefficient ring, both alphabets and the x-convention."""

    ring: RingHandle
    a: Alphabet = EMPTY
    x: Alphabet = EMPTY
    mode: XMode = XMode.ORDERED

    def __post_init__(self):
        if not isinstance(self.a, Alphabet):
            object.__setattr__(self, "a", Alphabet(tuple(self.a)))
        if not isinstance(self.x, Alphabet):
            object.__setattr__(self, "x", Alphabet(tuple(self.x)))
        clash = set(self.a.names) & set(self.x.names)
        if clash:
            raise ValueError(f"names used in both alphabets: {sorted(clash)}")
        if len(self.x) == 0:
            # the convention is irrelevant without x variables
            object.__setattr__(self, "mode", XMode.ORDERED)

    @property
    def commuting(self) -> bool:
        return self.mode is XMode.COMMUTING

    @property
    def x_unit(self):
        return (0,) * len(self.x) if self.commuting else ()

    def x_mul(self, u, v):
        if self.commuting:
            return tuple(p + q for p, q in zip(u, v))
        return u + v

    def x_degree(self, xpart) -> int:
        return sum(xpart) if self.commuting else len(xpart)

    def x_word(self, xpart):
        """The sorted word of a commuting x-part (identity in ORDERED mode)."""
        return exps_to_word(xpart) if self.commuting else xpart

    def x_from_exps(self, exps):
        """x-part of the monomial x^exps; ORDERED mode uses the sorted word."""
        exps = tuple(exps)
        return exps if self.commuting else exps_to_word(exps)

    def a_only(self) -> "PolyContext":
        return PolyContext(self.ring, self.a, EMPTY, XMode.ORDERED)

    def with_mode(self, mode: XMode) -> "PolyContext":
        return PolyContext(self.ring, self.a, self.x, mode)

    # constructors ---------------------------------------------------------

    def zero(self) -> "NcPoly":
        return NcPoly(self, {})

    def one(self) -> "NcPoly":
        return self.const(1)

    def const(self, value) -> "NcPoly":
        return NcPoly(self, {((), self.x_unit): self.ring.convert(value)})

    def monomial(self, aword=(), xpart=None, coeff=1) -> "NcPoly":
        if xpart is None:
            xpart = self.x_unit
        return NcPoly(self, {(tuple(aword), tuple(xpart)): self.ring.convert(coeff)})

    def gen(self, name: str) -> "NcPoly":
        if name in self.a:
            return self.monomial((self.a.index(name),))
        if name in self.x:
            i = self.x.index(name)
            if self.commuting:
                exps = [0] * len(self.x)
                exps[i] = 1
                return self.monomial((), tuple(exps))
            return self.monomial((), (i,))
        raise UnknownGenerator(f"unknown generator {name!r}")

    def gens(self):
        return [self.gen(name) for name in self.a]

    def from_words(self, mapping) -> "NcPoly":
        """x-free polynomial from ``{aword: coeff}``."""
        unit = self.x_unit
        return NcPoly(self, {(tuple(w), unit): c for w, c in mapping.items()})

    def parse(self, text: str) -> "NcPoly":
        from .polyparse import parse_poly

        return parse_poly(text, self)


class NcPoly:
    """Immutable sparse polynomial; ``terms`` maps (aword, xpart) to a raw coefficient."""

    __slots__ = ("ctx", "terms", "_hash")

    def __init__(self, ctx: PolyContext, terms, _clean=False):
        self.ctx = ctx
        if _clean:
            self.terms = terms
        else:
            ring = ctx.ring
            clean = {}
            for key, c in terms.items():
                c = ring.convert(c)
                if c != 0:
                    clean[key] = c
            self.terms = clean
        self._hash = None

    # basic protocol -------------------------------------------------------

    @property
    def ring(self) -> RingHandle:
        return self.ctx.ring

    def __eq__(self, other):
        if not isinstance(other, NcPoly):
            return NotImplemented
        return self.ctx == other.ctx and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return f"NcPoly({format_poly(self)!r})"

    def __str__(self):
        return format_poly(self)

    def _check(self, other) -> "NcPoly":
        if not isinstance(other, NcPoly):
            return self.ctx.const(other)
        if other.ctx != self.ctx:
            raise ContextMismatch(f"cannot combine polynomials over different contexts")
        return other

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        other = self._check(other)
        ring = self.ring
        out = dict(self.terms)
        for key, c in other.terms.items():
            s = ring.add(out.get(key, ring.zero()), c)
            if s == 0:
                out.pop(key, None)
            else:
                out[key] = s
        return NcPoly(self.ctx, out, _clean=True)

    __radd__ = __add__

    def __neg__(self):
        ring = self.ring
        return NcPoly(self.ctx, {k: ring.neg(c) for k, c in self.terms.items()}, _clean=True)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def scale(self, c) -> "NcPoly":
        ring = self.ring
        c = ring.convert(c)
        if c == 0:
            return self.ctx.zero()
        return NcPoly(self.ctx, {k: ring.mul(v, c) for k, v in self.terms.items()}, _clean=True)

    def __mul__(self, other):
        if not isinstance(other, NcPoly):
            return self.scale(other)
        return poly_mul(self, other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        return poly_pow(self, k)

    # structure ------------------------------------------------------------

    def term_degree(self, key) -> int:
        aword, xpart = key
        return len(aword) + self.ctx.x_degree(xpart)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((self.term_degree(k) for k in self.terms), default=-1)

    def is_x_free(self) -> bool:
        unit = self.ctx.x_unit
        return all(x == unit for _, x in self.terms)

    def words(self):
        """``{aword: coeff}`` view of an x-free polynomial."""
        return {w: c for (w, _), c in self.terms.items()}

    def sort_key(self, key):
        aword, xpart = key
        xw = self.ctx.x_word(xpart)
        return (len(aword) + len(xw), word_key(aword), word_key(xw))

    def sorted_terms(self):
        """Terms in descending monomial order."""
        return sorted(self.terms.items(), key=lambda kv: self.sort_key(kv[0]), reverse=True)

    def leading_key(self):
        return max(self.terms, key=self.sort_key)

    def coefficient(self, aword=(), xpart=None) -> Scalar:
        if xpart is None:
            xpart = self.ctx.x_unit
        return Scalar(self.ring, self.terms.get((tuple(aword), tuple(xpart)), 0))

    def in_context(self, ctx: PolyContext) -> "NcPoly":
        """Re-embed into a context whose alphabets extend this one's (by name).

        A commuting x-part entering an ORDERED context becomes its sorted word.
        """
        if ctx == self.ctx:
            return self
        if ctx.ring != self.ring:
            raise ContextMismatch("ring differs")
        src = self.ctx
        try:
            amap = [ctx.a.index(n) for n in src.a]
            xmap = [ctx.x.index(n) for n in src.x]
        except ValueError:
            raise ContextMismatch("target context lacks some generator names") from None
        out = {}
        for (aw, xp), c in self.terms.items():
            naw = tuple(amap[i] for i in aw)
            word = tuple(xmap[i] for i in src.x_word(xp))
            nxp = word_to_exps(word, len(ctx.x)) if ctx.commuting else word
            key = (naw, nxp)
            s = ctx.ring.add(out.get(key, ctx.ring.zero()), c)
            if s == 0:
                out.pop(key, None)
            else:
                out[key] = s
        return NcPoly(ctx, out, _clean=True)

    def change_ring(self, ring: RingHandle) -> "NcPoly":
        """Coefficient-wise base change (e.g. reduction ZZ -> GF(p))."""
        ctx = PolyContext(ring, self.ctx.a, self.ctx.x, self.ctx.mode)
        return NcPoly(ctx, {k: ring.convert(c) for k, c in self.terms.items()})

    def monic(self) -> "NcPoly":
        if not self.terms:
            return self
        lead = self.terms[self.leading_key()]
        return self.scale(self.ring.inv(lead))


def poly_mul(p: NcPoly, q: NcPoly) -> NcPoly:
    if p.ctx != q.ctx:
        raise ContextMismatch("cannot multiply polynomials over different contexts")
    ctx = p.ctx
    ring = ctx.ring
    add, mul, xmul = ring.add, ring.mul, ctx.x_mul
    out = {}
    for (aw1, xp1), c1 in p.terms.items():
        for (aw2, xp2), c2 in q.terms.items():
            key = (aw1 + aw2, xmul(xp1, xp2))
            prev = out.get(key)
            out[key] = mul(c1, c2) if prev is None else add(prev, mul(c1, c2))
    return NcPoly(ctx, {k: c for k, c in out.items() if c != 0}, _clean=True)


def poly_pow(p: NcPoly, k: int) -> NcPoly:
    if k < 0:
        raise ValueError("negative exponent")
    result = p.ctx.one()
    for _ in range(k):
        result = poly_mul(result, p)
    return result


def extract_coefficients(p: NcPoly) -> dict:
    """Group ``p`` by x-part; values are polynomials in the a-alphabet only."""
    actx = p.ctx.a_only()
    groups = {}
    for (aw, xp), c in p.terms.items():
        groups.setdefault(xp, {})[(aw, ())] = c
    return {xp: NcPoly(actx, terms, _clean=True) for xp, terms in groups.items()}


def reassemble(coeffs: dict, ctx: PolyContext) -> NcPoly:
    """Inverse of :func:`extract_coefficients`."""
    out = ctx.zero()
    for xp, q in coeffs.items():
        lifted = {(aw, xp): c for (aw, _), c in q.terms.items()}
        out = out + NcPoly(ctx, lifted, _clean=True)
    return out


def format_poly(p: NcPoly) -> str:
    if not p.terms:
        return "0"
    ctx = p.ctx
    ring = ctx.ring
    a_names, x_names = ctx.a.names, ctx.x.names
    pieces = []
    for (aw, xp), c in p.sorted_terms():
        neg = ring.is_negative(c)
        mag = ring.neg(c) if neg else c
        factors = []
        if aw:
            factors.append(format_word(aw, a_names))
        xw = ctx.x_word(xp)
        if xw:
            factors.append(format_word(xw, x_names))
        mono = "*".join(factors)
        if not mono:
            body = ring.format(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{ring.format(mag)}*{mono}"
        if not pieces:
            pieces.append(f"-{body}" if neg else body)
        else:
            pieces.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(pieces)


def parse_poly(text, a, x, ring, mode=XMode.ORDERED) -> NcPoly:
    ctx = PolyContext(ring, a if isinstance(a, Alphabet) else Alphabet(tuple(a)),
                      x if isinstance(x, Alphabet) else Alphabet(tuple(x)), mode)
    return ctx.parse(text)
