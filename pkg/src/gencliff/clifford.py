"""Presentations of generalized Clifford algebras.

Two constructions of the Clifford algebra of forms f_m, f_2m, ..., f_dm are
built side by side:

``kl_presentation``
    generators a_J for |J| = m; relations are the x-coefficients of
    S^d - sum_l S^(d-l) f_lm with S = sum_J a_J x^J, read in either
    x-convention.
``psi_presentation``
    the same generators indexed by the divided-power basis of degree m; the
    relations are the values on the Gamma^(md) basis of the law
    psi_d - sum_i psi_-1^(d-i) psi_i  (psi_0 = 1, psi_i = -f_im, psi_d = f_dm).

The quadratic and Weyl specializations, the comparison map between the two
constructions and the weighted hypersurface equation sit on top.
"""

from __future__ import annotations

import itertools
import string
from dataclasses import dataclass, field

from .coeffs import RingHandle
from .errors import InconsistentForm, InputFormatError, NotHomogeneous
from .freealg import (
    EMPTY,
    Alphabet,
    NcPoly,
    PolyContext,
    XMode,
    extract_coefficients,
    format_poly,
    poly_pow,
)
from .gbasis import DEFAULT_BOUND, buchberger_bounded, is_member
from .laws import (
    HomLaw,
    constant_law,
    gamma_basis,
    law_eval,
    law_from_commutative_poly,
    law_product,
)


def generator_names(n: int, m: int, avoid=()):
    """Names for the generators indexed by ``gamma_basis(n, m)``.

    Single letters a, b, c, ... when m = 1 and they do not collide with
    ``avoid``; otherwise ``a_<J>`` with the multidegree digits.
    """
    basis = gamma_basis(n, m)
    if m == 1 and n <= 26:
        letters = tuple(string.ascii_lowercase[:n])
        if not set(letters) & set(avoid):
            return Alphabet(letters)
    sep = "_" if m > 9 else ""
    names = tuple("a_" + sep.join(str(e) for e in nu) for nu in basis)
    if set(names) & set(avoid):
        raise InputFormatError(f"generator names {names} collide with variables")
    return Alphabet(names)


@dataclass(frozen=True)
class CliffordInput:
    ring: RingHandle
    vars: tuple
    m: int
    d: int
    forms: tuple
    mode: XMode = XMode.ORDERED

    def __post_init__(self):
        if self.m < 1 or self.d < 1 or len(self.vars) < 1:
            raise InputFormatError("need n, m, d >= 1")
        object.__setattr__(self, "vars", tuple(self.vars))
        fctx = self.form_context()
        forms = list(self.forms) + [fctx.zero()] * (self.d - len(self.forms))
        if len(forms) != self.d:
            raise InputFormatError(f"expected at most {self.d} forms, got {len(self.forms)}")
        clean = []
        for level, f in enumerate(forms, start=1):
            if isinstance(f, str):
                f = fctx.parse(f)
            elif f.ctx != fctx:
                f = f.in_context(fctx)
            if any(sum(xp) != level * self.m for _, xp in f.terms):
                raise NotHomogeneous(f"f[{level}] is not homogeneous of degree {level * self.m}")
            clean.append(f)
        object.__setattr__(self, "forms", tuple(clean))

    @property
    def n(self) -> int:
        return len(self.vars)

    def form_context(self) -> PolyContext:
        return PolyContext(self.ring, EMPTY, Alphabet(self.vars), XMode.COMMUTING)

    def generators(self) -> Alphabet:
        return generator_names(self.n, self.m, self.vars)

    def with_mode(self, mode: XMode) -> "CliffordInput":
        return CliffordInput(self.ring, self.vars, self.m, self.d, self.forms, mode)

    def form(self, level: int) -> NcPoly:
        return self.forms[level - 1]


def _normalize(p: NcPoly) -> NcPoly:
    if p.is_zero():
        return p
    if p.ring.is_field:
        return p.monic()
    lead = p.terms[p.leading_key()]
    return -p if lead < 0 else p


@dataclass(frozen=True)
class Presentation:
    ring: RingHandle
    generators: Alphabet
    relations: tuple
    provenance: str = ""

    @property
    def context(self) -> PolyContext:
        return PolyContext(self.ring, self.generators)

    def to_text(self) -> str:
        lines = [f"ring: {self.ring}", f"generators: {', '.join(self.generators)}"]
        lines += [f"rel: {format_poly(r)}" for r in self.relations]
        return "\n".join(lines) + "\n"

    def groebner(self, bound: int = DEFAULT_BOUND):
        return buchberger_bounded(self.relations, bound, context=self.context)


def make_presentation(ring, generators, relations, provenance="") -> Presentation:
    """Normalize relations, drop zeros and duplicates, sort by printed form."""
    ctx = PolyContext(ring, generators)
    seen = {}
    for r in relations:
        if not r.is_x_free():
            raise ValueError("presentation relations must be x-free")
        r = _normalize(r.in_context(ctx))
        if not r.is_zero():
            seen.setdefault(format_poly(r), r)
    rels = tuple(seen[k] for k in sorted(seen))
    return Presentation(ring, ctx.a, rels, provenance)


def parse_presentation(text: str) -> Presentation:
    """Read the ``ring:`` / ``generators:`` / ``rel:`` file format."""
    from .coeffs import make_ring

    ring = gens = None
    rels = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition(":")
        if not sep:
            raise InputFormatError(f"line {lineno}: expected 'key: value'")
        key = key.strip()
        if key == "ring":
            ring = make_ring(value)
        elif key == "generators":
            gens = Alphabet(tuple(g.strip() for g in value.split(",") if g.strip()))
        elif key == "rel":
            rels.append((lineno, value))
        else:
            raise InputFormatError(f"line {lineno}: unknown key {key!r}")
    if ring is None or gens is None:
        raise InputFormatError("presentation needs 'ring' and 'generators' lines")
    ctx = PolyContext(ring, gens)
    return make_presentation(ring, gens, [ctx.parse(v) for _, v in rels])


# the two constructions ------------------------------------------------------


def generic_element(inp: CliffordInput, ctx: PolyContext) -> NcPoly:
    """S = sum_J a_J x^J over the degree-m monomials, in ``ctx``'s convention."""
    out = ctx.zero()
    for name, nu in zip(ctx.a, gamma_basis(inp.n, inp.m)):
        out = out + ctx.monomial((ctx.a.index(name),), ctx.x_from_exps(nu))
    return out


def kl_expression(inp: CliffordInput) -> NcPoly:
    gens = inp.generators()
    ctx = PolyContext(inp.ring, gens, Alphabet(inp.vars), inp.mode)
    s = generic_element(inp, ctx)
    expr = poly_pow(s, inp.d)
    for level in range(1, inp.d + 1):
        expr = expr - poly_pow(s, inp.d - level) * inp.form(level).in_context(ctx)
    return expr


def kl_presentation(inp: CliffordInput) -> Presentation:
    coeffs = extract_coefficients(kl_expression(inp))
    return make_presentation(inp.ring, inp.generators(), coeffs.values(), "kl")


def delta_law(inp: CliffordInput) -> HomLaw:
    """psi_d - (psi_-1^d psi_0 + psi_-1^(d-1) psi_1 + ... + psi_-1 psi_(d-1)).

    Degree m*d, values in the free algebra on the generators; psi_-1 factors
    multiply on the left.
    """
    gens = inp.generators()
    n, m, d, ring = inp.n, inp.m, inp.d, inp.ring
    gctx = PolyContext(ring, gens)
    lift = HomLaw(m, n, ring, gens, {nu: gctx.gen(g) for nu, g in zip(gamma_basis(n, m), gens)})

    def weight(i):
        if i == 0:
            return constant_law(n, ring, 1)
        f = inp.form(i)
        return law_from_commutative_poly(f if i == d else -f, i * m)

    powers = [constant_law(n, ring, 1, gens)]
    for _ in range(d):
        powers.append(law_product(powers[-1], lift))
    tower = None
    for i in range(d):
        term = law_product(powers[d - i], weight(i))
        tower = term if tower is None else tower + term
    top = law_from_commutative_poly(inp.form(d), d * m)
    top = HomLaw(top.degree, n, ring, gens, top.table)
    return top - tower


def psi_presentation(inp: CliffordInput) -> Presentation:
    delta = delta_law(inp)
    rels = [delta[mu] for mu in gamma_basis(inp.n, inp.m * inp.d)]
    return make_presentation(inp.ring, inp.generators(), rels, "psi")


def z_enumerated_presentation(inp: CliffordInput) -> Presentation:
    """Relations delta(z^[md]) for every z in a finite module F_p^n."""
    ring = inp.ring
    delta = delta_law(inp)
    rels = [law_eval(delta, z) for z in itertools.product(ring.elements(), repeat=inp.n)]
    return make_presentation(ring, inp.generators(), rels, "psi-z")


# specializations ------------------------------------------------------------


def quadratic_form_poly(diagonal, polar, ring, x_names=None) -> NcPoly:
    """sum q_i x_i^2 + sum_{i<j} b_ij x_i x_j as a commutative form."""
    n = len(diagonal)
    names = tuple(x_names) if x_names else tuple(f"x{i + 1}" for i in range(n))
    ctx = PolyContext(ring, EMPTY, Alphabet(names), XMode.COMMUTING)
    terms = {}
    for i, q in enumerate(diagonal):
        exps = [0] * n
        exps[i] = 2
        terms[((), tuple(exps))] = q
    for (i, j), b in dict(polar).items():
        if not i < j:
            raise InputFormatError(f"polarization index ({i}, {j}) needs i < j")
        exps = [0] * n
        exps[i] += 1
        exps[j] += 1
        terms[((), tuple(exps))] = b
    return NcPoly(ctx, terms)


def quadratic_presentation(diagonal, polar, ring, x_names=None) -> Presentation:
    """Clifford algebra of q: e_i^2 = q(e_i), e_i e_j + e_j e_i = b(e_i, e_j)."""
    q = quadratic_form_poly(diagonal, polar, ring, x_names)
    inp = CliffordInput(ring, q.ctx.x.names, 1, 2, (q.ctx.zero(), q))
    pres = psi_presentation(inp)
    return Presentation(pres.ring, pres.generators, pres.relations, "quadratic")


def gram_data(q: NcPoly):
    """Split a commutative quadratic form into diagonal and polarization values."""
    n = len(q.ctx.x)
    fctx = PolyContext(q.ring, EMPTY, q.ctx.x, XMode.COMMUTING)
    q = q.in_context(fctx)
    diag = [0] * n
    polar = {}
    for (_, exps), c in q.terms.items():
        if sum(exps) != 2:
            raise NotHomogeneous("quadratic form has a term of degree != 2")
        idx = [i for i, e in enumerate(exps) for _ in range(e)]
        if idx[0] == idx[1]:
            diag[idx[0]] = c
        else:
            polar[(idx[0], idx[1])] = c
    return diag, polar


def weyl_presentation(psi, ring, names=None) -> Presentation:
    """T(M)/(e_i e_j - e_j e_i - psi(e_i, e_j)) for a bilinear form psi."""
    n = len(psi)
    if any(len(row) != n for row in psi):
        raise InputFormatError("psi must be square")
    gens = Alphabet(tuple(names)) if names else (
        generator_names(n, 1) if n <= 26 else Alphabet(tuple(f"e{i + 1}" for i in range(n))))
    ctx = PolyContext(ring, gens)
    vals = [[ring.convert(v) for v in row] for row in psi]
    for i in range(n):
        if vals[i][i] != 0:
            raise InconsistentForm(f"psi(e{i + 1}, e{i + 1}) != 0 forces a unit relation")
        for j in range(i + 1, n):
            if ring.add(vals[i][j], vals[j][i]) != 0:
                raise InconsistentForm(
                    f"psi(e{i + 1}, e{j + 1}) + psi(e{j + 1}, e{i + 1}) != 0 forces a unit relation")
    rels = []
    g = ctx.gens()
    for i in range(n):
        for j in range(i + 1, n):
            rels.append(g[i] * g[j] - g[j] * g[i] - ctx.const(vals[i][j]))
    return make_presentation(ring, gens, rels, "weyl")


# comparison -----------------------------------------------------------------

ISOMORPHIC = "isomorphic-up-to-bound"
PROPER_INCLUSION = "proper-inclusion"
INCOMPARABLE = "incomparable"


@dataclass
class ComparisonReport:
    psi_in_kl: list = field(default_factory=list)
    kl_in_psi: list = field(default_factory=list)
    verdict: str = INCOMPARABLE
    direction: str = ""
    bound: int = DEFAULT_BOUND

    def to_text(self) -> str:
        lines = [f"psi-in-kl: {r} : {v}" for r, v in self.psi_in_kl]
        lines += [f"kl-in-psi: {r} : {v}" for r, v in self.kl_in_psi]
        verdict = self.verdict + (f" ({self.direction})" if self.direction else "")
        lines.append(f"verdict: {verdict}")
        return "\n".join(lines) + "\n"


def ideals_compare(left: Presentation, right: Presentation, bound: int):
    """Membership of each relation of one presentation in the other's ideal."""
    gl = left.groebner(bound)
    gr = right.groebner(bound)
    l_in_r = [(r, is_member(r, gr)) for r in left.relations]
    r_in_l = [(r, is_member(r, gl)) for r in right.relations]
    return l_in_r, r_in_l


def comparison_check(inp: CliffordInput, bound: int = DEFAULT_BOUND) -> ComparisonReport:
    """Compare Cl(Psi) with the coefficient-extraction algebra via e_nu -> a_nu."""
    psi = psi_presentation(inp)
    kl = kl_presentation(inp)
    top = max((r.degree() for r in psi.relations + kl.relations), default=0)
    if bound < top:
        bound = top
    psi_in_kl, kl_in_psi = ideals_compare(psi, kl, bound)
    fwd = all(v.is_member for _, v in psi_in_kl)
    back = all(v.is_member for _, v in kl_in_psi)
    if fwd and back:
        verdict, direction = ISOMORPHIC, ""
    elif fwd:
        verdict, direction = PROPER_INCLUSION, "psi-ideal inside kl-ideal"
    elif back:
        verdict, direction = PROPER_INCLUSION, "kl-ideal inside psi-ideal"
    else:
        verdict, direction = INCOMPARABLE, ""
    return ComparisonReport(psi_in_kl, kl_in_psi, verdict, direction, bound)


def same_ideal(left: Presentation, right: Presentation, bound: int = DEFAULT_BOUND) -> bool:
    l_in_r, r_in_l = ideals_compare(left, right, bound)
    return all(v.is_member for _, v in l_in_r + r_in_l)


# weighted hypersurface ------------------------------------------------------


@dataclass(frozen=True)
class Hypersurface:
    equation: NcPoly
    weights: tuple

    def weighted_degrees(self):
        return {sum(w * e for w, e in zip(self.weights, xp)) for _, xp in self.equation.terms}

    def to_text(self) -> str:
        names = self.equation.ctx.x.names
        ws = ", ".join(f"{n}={w}" for n, w in zip(names, self.weights))
        return f"equation: {format_poly(self.equation)}\nweights: {ws}\n"


def hypersurface_equation(inp: CliffordInput) -> Hypersurface:
    """x0^d - x0^(d-1) f_m - x0^(d-2) f_2m - ... - f_dm with weight(x0) = m."""
    x0 = "x0"
    while x0 in inp.vars:
        x0 += "_"
    ctx = PolyContext(inp.ring, EMPTY, Alphabet((x0,) + inp.vars), XMode.COMMUTING)
    t = ctx.gen(x0)
    eq = poly_pow(t, inp.d)
    for level in range(1, inp.d + 1):
        eq = eq - poly_pow(t, inp.d - level) * inp.form(level).in_context(ctx)
    return Hypersurface(eq, (inp.m,) + (1,) * inp.n)

