"""Homogeneous polynomial laws on free modules, stored as divided-power tables.

A degree-d law on R^n is the same thing as a linear map out of Gamma^d(R^n),
whose basis is the set of divided-power monomials e^[nu] with |nu| = d.  We
keep the table nu -> value and derive everything else from it:

* evaluation at z is sum_nu table[nu] * prod z_i^nu_i;
* the generic value psi(sum e_i x_i) is sum_nu table[nu] * x^nu;
* products of laws are read off from products of generic values.

Table values are x-free :class:`NcPoly` objects over the target alphabet
(empty alphabet for scalar-valued laws).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .coeffs import RingHandle, Scalar
from .errors import ContextMismatch, NotHomogeneous
from .freealg import EMPTY, Alphabet, NcPoly, PolyContext, XMode, extract_coefficients


def gamma_basis(n: int, d: int):
    """Multidegrees of weight d in n variables, lexicographically descending."""
    if n < 1 or d < 0:
        raise ValueError("need n >= 1 and d >= 0")
    if n == 1:
        return [(d,)]
    out = []
    for first in range(d, -1, -1):
        out.extend((first,) + rest for rest in gamma_basis(n - 1, d - first))
    return out


def divided_power(c, d: int, ring: RingHandle | None = None):
    """Coordinates of z^[d] on ``gamma_basis(len(c), d)`` for z = sum c_i e_i."""
    if ring is None:
        ring = c[0].ring
    raw = [ring.convert(v) for v in c]
    out = []
    for nu in gamma_basis(len(raw), d):
        val = ring.one()
        for ci, e in zip(raw, nu):
            val = ring.mul(val, ring.pow(ci, e))
        out.append(Scalar(ring, val))
    return out


def default_x_names(n: int):
    return tuple(f"x{i + 1}" for i in range(n))


@dataclass(frozen=True)
class HomLaw:
    degree: int
    rank: int
    ring: RingHandle
    target: Alphabet | None = None  # None: scalar-valued
    table: dict = field(default_factory=dict)

    def __post_init__(self):
        ctx = self.target_context()
        clean = {}
        for nu, v in dict(self.table).items():
            nu = tuple(nu)
            if len(nu) != self.rank or sum(nu) != self.degree or min(nu, default=0) < 0:
                raise ValueError(f"index {nu} is not of weight {self.degree} in rank {self.rank}")
            if not isinstance(v, NcPoly):
                v = ctx.const(v)
            elif v.ctx != ctx:
                v = v.in_context(ctx)
            if not v.is_zero():
                clean[nu] = v
        object.__setattr__(self, "table", clean)

    def target_context(self) -> PolyContext:
        return PolyContext(self.ring, self.target or EMPTY)

    def __getitem__(self, nu):
        return self.table.get(tuple(nu), self.target_context().zero())

    def is_zero(self) -> bool:
        return not self.table

    def __eq__(self, other):
        if not isinstance(other, HomLaw):
            return NotImplemented
        return (self.degree, self.rank, self.ring, self.target, self.table) == (
            other.degree, other.rank, other.ring, other.target, other.table)

    def __hash__(self):
        return hash((self.degree, self.rank, self.ring, self.target, frozenset(self.table.items())))

    def _same_shape(self, other):
        if (self.degree, self.rank, self.ring, self.target) != (
                other.degree, other.rank, other.ring, other.target):
            raise ContextMismatch("laws differ in degree, rank, ring or target")

    def __add__(self, other):
        self._same_shape(other)
        table = dict(self.table)
        for nu, v in other.table.items():
            table[nu] = table[nu] + v if nu in table else v
        return HomLaw(self.degree, self.rank, self.ring, self.target, table)

    def __neg__(self):
        return HomLaw(self.degree, self.rank, self.ring, self.target,
                      {nu: -v for nu, v in self.table.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return HomLaw(self.degree, self.rank, self.ring, self.target,
                      {nu: v.scale(c) for nu, v in self.table.items()})

    def change_ring(self, ring: RingHandle) -> "HomLaw":
        """Table-wise base change, e.g. reduction of a ZZ law modulo p."""
        return HomLaw(self.degree, self.rank, ring, self.target,
                      {nu: v.change_ring(ring) for nu, v in self.table.items()})

    def __mul__(self, other):
        return law_product(self, other)

    def __pow__(self, k: int):
        out = constant_law(self.rank, self.ring, 1, self.target)
        for _ in range(k):
            out = law_product(out, self)
        return out


def zero_law(degree, rank, ring, target=None) -> HomLaw:
    return HomLaw(degree, rank, ring, target, {})


def constant_law(rank, ring, value=1, target=None) -> HomLaw:
    return HomLaw(0, rank, ring, target, {(0,) * rank: value})


def identity_law(gens: Alphabet, ring, m: int = 1, rank: int | None = None) -> HomLaw:
    """The law z -> z^[m] with e^[nu] sent to the generator named for nu.

    ``gens`` lists one generator per element of ``gamma_basis(rank, m)``.
    """
    if rank is None:
        if m != 1:
            raise ValueError("rank is required when m > 1")
        rank = len(gens)
    basis = gamma_basis(rank, m)
    if len(basis) != len(gens):
        raise ValueError(f"need {len(basis)} generators, got {len(gens)}")
    ctx = PolyContext(ring, gens)
    return HomLaw(m, rank, ring, gens, {nu: ctx.gen(g) for nu, g in zip(basis, gens)})


def _as_commutative(f: NcPoly) -> NcPoly:
    if len(f.ctx.a) != 0 and not all(aw == () for aw, _ in f.terms):
        raise ContextMismatch("expected a polynomial in the x variables only")
    if f.ctx.mode is not XMode.COMMUTING and len(f.ctx.x) > 1:
        f = f.in_context(PolyContext(f.ring, EMPTY, f.ctx.x, XMode.COMMUTING))
    return f


def law_from_commutative_poly(f: NcPoly, degree: int) -> HomLaw:
    """Scalar law whose table holds the coefficients of a homogeneous form."""
    f = _as_commutative(f)
    n = len(f.ctx.x)
    ring = f.ring
    table = {}
    for (_, xp), c in f.terms.items():
        exps = xp if f.ctx.commuting else tuple(xp.count(i) for i in range(n))
        if sum(exps) != degree:
            raise NotHomogeneous(f"term of degree {sum(exps)} in a form of degree {degree}")
        table[exps] = c
    return HomLaw(degree, n, ring, None, table)


def law_to_commutative_poly(law: HomLaw, x_names=None) -> NcPoly:
    """Inverse of :func:`law_from_commutative_poly` for scalar laws."""
    if law.target is not None:
        raise ContextMismatch("only scalar laws correspond to commutative forms")
    return law_generic(law, x_names)


def law_eval(law: HomLaw, z):
    """Value at z; a :class:`Scalar` for scalar laws, an NcPoly otherwise."""
    if len(z) != law.rank:
        raise ValueError(f"point of length {len(z)} for a law of rank {law.rank}")
    ring = law.ring
    raw = [ring.convert(v) for v in z]
    ctx = law.target_context()
    out = ctx.zero()
    for nu, v in law.table.items():
        coeff = ring.one()
        for zi, e in zip(raw, nu):
            coeff = ring.mul(coeff, ring.pow(zi, e))
        if coeff != 0:
            out = out + v.scale(coeff)
    if law.target is None:
        return out.coefficient()
    return out


def law_generic(law: HomLaw, x_names=None) -> NcPoly:
    """psi(sum e_i x_i) = sum_nu table[nu] x^nu with commuting x variables."""
    x = Alphabet(tuple(x_names) if x_names else default_x_names(law.rank))
    if len(x) != law.rank:
        raise ValueError("one x name per basis vector is required")
    ctx = PolyContext(law.ring, law.target or EMPTY, x, XMode.COMMUTING)
    terms = {}
    for nu, v in law.table.items():
        for (aw, _), c in v.terms.items():
            terms[(aw, nu)] = c
    return NcPoly(ctx, terms, _clean=True)


def _common_target(psi: HomLaw, phi: HomLaw):
    if psi.rank != phi.rank or psi.ring != phi.ring:
        raise ContextMismatch("laws differ in rank or ring")
    if psi.target is None:
        return phi.target
    if phi.target is None or phi.target == psi.target:
        return psi.target
    raise ContextMismatch("laws take values in different free algebras")


def law_product(psi: HomLaw, phi: HomLaw) -> HomLaw:
    """Pointwise product psi * phi (algebra values multiply in that order)."""
    target = _common_target(psi, phi)
    x = default_x_names(psi.rank)
    ctx = PolyContext(psi.ring, target or EMPTY, x, XMode.COMMUTING)
    prod = law_generic(psi, x).in_context(ctx) * law_generic(phi, x).in_context(ctx)
    table = extract_coefficients(prod)
    return HomLaw(psi.degree + phi.degree, psi.rank, psi.ring, target, table)


@dataclass(frozen=True)
class PolyLaw:
    """Finite sum of homogeneous laws sharing rank, ring and target."""

    components: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        shape = None
        for deg, law in dict(self.components).items():
            if law.degree != deg:
                raise ValueError(f"component stored under {deg} has degree {law.degree}")
            key = (law.rank, law.ring, law.target)
            if shape is None:
                shape = key
            elif key != shape:
                raise ContextMismatch("components differ in rank, ring or target")
            if not law.is_zero():
                clean[deg] = law
        object.__setattr__(self, "components", clean)

    @classmethod
    def of(cls, *laws):
        out = cls({})
        for law in laws:
            out = law_sum(out, cls({law.degree: law}))
        return out

    def degrees(self):
        return sorted(self.components)


def law_sum(a: PolyLaw, b: PolyLaw) -> PolyLaw:
    comps = dict(a.components)
    for deg, law in b.components.items():
        comps[deg] = comps[deg] + law if deg in comps else law
    return PolyLaw(comps)


def law_component(a: PolyLaw, degree: int, rank=None, ring=None, target=None) -> HomLaw:
    """Homogeneous component; the zero law of that degree when absent."""
    if degree in a.components:
        return a.components[degree]
    if a.components:
        some = next(iter(a.components.values()))
        rank, ring, target = some.rank, some.ring, some.target
    if rank is None or ring is None:
        raise ValueError("rank and ring are needed for the component of an empty law")
    return zero_law(degree, rank, ring, target)
