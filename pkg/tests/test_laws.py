import itertools
import random
from math import comb

import pytest
from helpers import random_coeff

from gencliff.coeffs import GF, QQ, ZZ, Scalar
from gencliff.errors import ContextMismatch, NotHomogeneous
from gencliff.freealg import EMPTY, Alphabet, PolyContext, XMode, extract_coefficients, format_poly
from gencliff.laws import (
    HomLaw,
    PolyLaw,
    constant_law,
    divided_power,
    gamma_basis,
    identity_law,
    law_component,
    law_eval,
    law_from_commutative_poly,
    law_generic,
    law_product,
    law_sum,
    law_to_commutative_poly,
    zero_law,
)

AB = Alphabet(("a", "b"))


def form(ring, text, names=("x", "y")):
    return PolyContext(ring, EMPTY, Alphabet(names), XMode.COMMUTING).parse(text)


def test_gamma_basis_examples():
    assert gamma_basis(2, 2) == [(2, 0), (1, 1), (0, 2)]
    assert gamma_basis(4, 0) == [(0, 0, 0, 0)]
    assert len(gamma_basis(3, 2)) == 6
    for n in range(1, 5):
        for d in range(6):
            basis = gamma_basis(n, d)
            assert len(basis) == comb(n + d - 1, d)
            assert basis == sorted(basis, reverse=True)
            assert len(set(basis)) == len(basis)


def test_divided_power_examples():
    assert [s.value for s in divided_power([1, 0], 3, QQ)] == [1, 0, 0, 0]
    assert [s.value for s in divided_power([1, 1], 2, QQ)] == [1, 1, 1]
    assert [s.value for s in divided_power([2, 0], 2, QQ)] == [4, 0, 0]


def test_from_commutative_poly_examples():
    law = law_from_commutative_poly(form(QQ, "y"), 1)
    assert law[(1, 0)].is_zero() and law[(0, 1)].coefficient().value == 1
    q = law_from_commutative_poly(form(QQ, "x^2 + y^2"), 2)
    assert [q[nu].coefficient().value for nu in gamma_basis(2, 2)] == [1, 0, 1]
    assert law_from_commutative_poly(form(QQ, "0"), 3).is_zero()
    with pytest.raises(NotHomogeneous):
        law_from_commutative_poly(form(QQ, "x^2 + y"), 2)


def test_eval_examples():
    law = law_from_commutative_poly(form(GF(2), "y"), 1)
    assert law_eval(law, [1, 0]).value == 0
    assert law_eval(law, [1, 1]).value == 1
    q = law_from_commutative_poly(form(QQ, "x^2 - 3*x*y"), 2)
    assert law_eval(q, [0, 0]).value == 0


def test_generic_examples():
    lam = identity_law(AB, QQ)
    g = law_generic(lam, ("x", "y"))
    assert format_poly(g) == "b*y + a*x"
    f = law_generic(law_from_commutative_poly(form(QQ, "y"), 1), ("x", "y"))
    assert format_poly(f) == "y"
    assert law_generic(zero_law(2, 2, QQ)).is_zero()


def _solve_over_f3(points, values):
    """Brute force the table c on Gamma^2(F_3^2) from law values at all points."""
    basis = gamma_basis(2, 2)
    sols = []
    for cand in itertools.product(range(3), repeat=len(basis)):
        if all(sum(c * pow(z[0], nu[0]) * pow(z[1], nu[1]) for c, nu in zip(cand, basis)) % 3 == v
               for z, v in zip(points, values)):
            sols.append(cand)
    return sols


def test_product_identity_square_against_evaluation_oracle():
    ring = GF(3)
    lam = identity_law(AB, ring)
    sq = law_product(lam, lam)
    expected = {(2, 0): "a^2", (1, 1): "b*a + a*b", (0, 2): "b^2"}
    assert {nu: format_poly(v) for nu, v in sq.table.items()} == expected
    # oracle: lambda(z)^2 at every z of F_3^2, solved word by word
    points = list(itertools.product(range(3), repeat=2))
    values = [law_eval(lam, z) ** 2 for z in points]
    words = {w for v in values for w in v.words()}
    for w in words:
        coeff_vals = [v.words().get(w, 0) for v in values]
        sols = _solve_over_f3(points, coeff_vals)
        assert len(sols) == 1
        got = tuple(sq[nu].words().get(w, 0) for nu in gamma_basis(2, 2))
        assert got == sols[0]


def test_product_units_and_zero():
    lam = identity_law(AB, QQ)
    one = constant_law(2, QQ, 1)
    assert law_product(one, lam) == lam
    assert law_product(lam, zero_law(3, 2, QQ)).is_zero()
    with pytest.raises(ContextMismatch):
        law_product(lam, identity_law(Alphabet(("c", "e")), QQ))


def test_sum_and_component():
    lam = identity_law(AB, QQ)
    sq = lam * lam
    assert law_sum(PolyLaw.of(sq), PolyLaw.of(-sq)).components == {}
    both = PolyLaw.of(sq, lam)
    assert law_component(both, 2) == sq
    assert law_component(PolyLaw.of(sq), 3) == zero_law(3, 2, QQ, AB)
    assert both.degrees() == [1, 2]


def _random_law(rng, ring, n, d, target=None):
    ctx = PolyContext(ring, target or EMPTY)
    table = {}
    for nu in gamma_basis(n, d):
        if rng.random() < 0.6:
            if target is None:
                table[nu] = random_coeff(ring, rng, allow_zero=True)
            else:
                v = ctx.zero()
                for _ in range(rng.randint(1, 2)):
                    w = tuple(rng.randrange(len(target)) for _ in range(rng.randint(0, 2)))
                    v = v + ctx.monomial(w, coeff=random_coeff(ring, rng))
                table[nu] = v
    return HomLaw(d, n, ring, target, table)


def test_correspondence_roundtrip():
    rng = random.Random(17)
    for i in range(300):
        ring = GF(5) if i % 2 else QQ
        n, d = rng.randint(1, 3), rng.randint(0, 4)
        law = _random_law(rng, ring, n, d, AB if i % 3 == 0 else None)
        coeffs = extract_coefficients(law_generic(law))
        assert coeffs == law.table
        if law.target is None:
            assert law_from_commutative_poly(law_to_commutative_poly(law), d) == law


def test_eval_naturality():
    rng = random.Random(23)
    for i in range(300):
        ring = GF(5) if i % 2 else QQ
        n, d = rng.randint(1, 3), rng.randint(0, 4)
        law = _random_law(rng, ring, n, d, AB if i % 4 == 0 else None)
        z = [random_coeff(ring, rng, allow_zero=True) for _ in range(n)]
        r = random_coeff(ring, rng, allow_zero=True)
        lhs = law_eval(law, [ring.mul(r, zi) for zi in z])
        rhs = law_eval(law, z)
        scale = Scalar(ring, ring.pow(r, d))
        if law.target is None:
            assert lhs == rhs * scale
        else:
            assert lhs == rhs.scale(scale.value)


def test_product_soundness():
    rng = random.Random(29)
    for i in range(200):
        ring = GF(5) if i % 2 else QQ
        n = rng.randint(1, 3)
        psi = _random_law(rng, ring, n, rng.randint(0, 3), AB if i % 2 == 0 else None)
        phi = _random_law(rng, ring, n, rng.randint(0, 3), AB if i % 3 == 0 else None)
        prod = law_product(psi, phi)
        for _ in range(20):
            z = [random_coeff(ring, rng, allow_zero=True) for _ in range(n)]
            lhs = law_eval(prod, z)
            a, b = law_eval(psi, z), law_eval(phi, z)
            if isinstance(a, Scalar) and isinstance(b, Scalar):
                assert lhs == a * b
            else:
                ctx = PolyContext(ring, AB)
                a = a if not isinstance(a, Scalar) else ctx.const(a.value)
                b = b if not isinstance(b, Scalar) else ctx.const(b.value)
                assert lhs == a.in_context(ctx) * b.in_context(ctx)


def _substitute(f, z, p):
    """Direct evaluation of a commuting form term by term mod p."""
    total = 0
    for (_, exps), c in f.terms.items():
        term = c
        for zi, e in zip(z, exps):
            term *= zi ** e
        total += term
    return total % p


@pytest.mark.parametrize("p", [2, 3])
def test_eval_exhaustive_against_substitution(p):
    rng = random.Random(p)
    ring = GF(p)
    for n in (1, 2):
        names = ("x", "y")[:n]
        ctx = PolyContext(ring, EMPTY, Alphabet(names), XMode.COMMUTING)
        for d in range(5):
            for _ in range(6):
                terms = {}
                for nu in gamma_basis(n, d):
                    c = rng.randrange(p)
                    if c:
                        terms[((), nu)] = c
                f = ctx.zero() if not terms else type(ctx.zero())(ctx, terms)
                law = law_from_commutative_poly(f, d)
                for z in itertools.product(range(p), repeat=n):
                    assert law_eval(law, z).value == _substitute(f, z, p)


def test_change_ring_reduction():
    f = form(ZZ, "3*x^2 + 2*x*y - y^2")
    law = law_from_commutative_poly(f, 2).change_ring(GF(3))
    assert [law[nu].coefficient().value for nu in gamma_basis(2, 2)] == [0, 2, 2]


def test_identity_law_weight_two():
    names = Alphabet(("a_20", "a_11", "a_02"))
    lam = identity_law(names, QQ, m=2, rank=2)
    assert format_poly(law_eval(lam, [1, 2])) == "4*a_02 + 2*a_11 + a_20"
    with pytest.raises(ValueError):
        identity_law(names, QQ, m=2)
