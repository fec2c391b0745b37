"""Acceptance criteria, one test each, with a PASS/FAIL line per criterion.

Run ``python3 tests/test_acceptance.py`` for the summary alone, or through
pytest where the lines are printed alongside the verdicts.
"""

from __future__ import annotations

import itertools
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from helpers import random_coeff, random_poly  # noqa: E402

from gencliff.clifford import (  # noqa: E402
    CliffordInput,
    hypersurface_equation,
    kl_presentation,
    make_presentation,
    psi_presentation,
    quadratic_presentation,
    same_ideal,
    weyl_presentation,
    z_enumerated_presentation,
)
from gencliff.coeffs import GF, QQ  # noqa: E402
from gencliff.dg import (  # noqa: E402
    DgGenerator,
    bigraded_basis,
    derived_clifford_zero,
    dg_differential,
    dg_free,
    homology_rank,
)
from gencliff.freealg import Alphabet, PolyContext, XMode, extract_coefficients, format_poly  # noqa: E402
from gencliff.gbasis import (  # noqa: E402
    CERTIFIED_NON_MEMBER,
    NOT_DETECTED,
    buchberger_bounded,
    is_member,
    normal_form,
    normal_words,
    quotient_dimension,
    span_membership_oracle,
)
from gencliff.laws import HomLaw, gamma_basis, law_generic  # noqa: E402

F2 = CliffordInput(GF(2), ("x", "y"), 1, 2, ("y", "0"), XMode.ORDERED)


def _report(number, title, ok, elapsed, limit, detail=""):
    status = "PASS" if ok and elapsed < limit else "FAIL"
    line = f"{status} criterion {number}: {title} ({elapsed:.2f}s / limit {limit:g}s)"
    if detail:
        line += f" -- {detail}"
    return status == "PASS", line


def _run(number, title, limit, body):
    start = time.perf_counter()
    ok, detail = body()
    return _report(number, title, ok, time.perf_counter() - start, limit, detail)


# 1 -----------------------------------------------------------------------------


def criterion_1():
    def body():
        rels = sorted(format_poly(r) for r in kl_presentation(F2).relations)
        want = sorted(["a^2", "a*b + a", "b*a", "b^2 + b"])
        return rels == want, f"relations {rels}"

    return _run(1, "F2 coefficient-extraction ideal", 1.0, body)


# 2 -----------------------------------------------------------------------------


def criterion_2():
    def body():
        pres = psi_presentation(F2)
        ctx = pres.context
        printed = make_presentation(
            GF(2), pres.generators,
            [ctx.parse(t) for t in ("a^2", "a^2 + b^2 + a*b + b*a - a - b", "b^2 - b")])
        return same_ideal(pres, printed, 6), f"psi relations {[format_poly(r) for r in pres.relations]}"

    return _run(2, "F2 psi-ideal equals the printed generators", 1.0, body)


# 3 -----------------------------------------------------------------------------


def criterion_3():
    def body():
        target = PolyContext(GF(2), ("a", "b")).parse("a*b + a")
        kl_gb = kl_presentation(F2).groebner(6)
        psi = psi_presentation(F2)
        psi_gb = psi.groebner(6)
        in_kl = is_member(target, kl_gb).is_member
        verdict = is_member(target, psi_gb)
        oracle = [span_membership_oracle(target, psi.relations, D) for D in range(2, 7)]
        if verdict.tag == CERTIFIED_NON_MEMBER:
            outside = True
        else:
            outside = verdict.tag == NOT_DETECTED and not any(oracle)
        return in_kl and outside and not any(oracle), f"kl: member={in_kl}; psi: {verdict}"

    return _run(3, "kernel detection for a*b + a", 2.0, body)


# 4 -----------------------------------------------------------------------------


def criterion_4():
    def body():
        rng = random.Random(4)
        details = []
        ok = True
        for n in (1, 2, 3):
            for _ in range(3):
                diag = [Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 3)) for _ in range(n)]
                pres = quadratic_presentation(diag, {}, QQ)
                gb = pres.groebner(6)
                counts = quotient_dimension(gb, n + 2)
                basis = {w for k in range(n + 1) for w in itertools.combinations(range(n), k)}
                ok &= gb.complete and counts.total == 2**n and set(normal_words(gb, n + 2)) == basis
            details.append(f"n={n}: {counts.total}")
        return ok, ", ".join(details)

    return _run(4, "quadratic Clifford rank 2^n", 5.0, body)


# 5 -----------------------------------------------------------------------------


def criterion_5():
    def body():
        gb = weyl_presentation([[0, 1], [-1, 0]], QQ).groebner(6)
        cum = quotient_dimension(gb, 8).cumulative()
        want = [(D + 1) * (D + 2) // 2 for D in range(9)]
        return cum == want, f"cumulative {cum}"

    return _run(5, "Weyl PBW count", 2.0, body)


# 6 -----------------------------------------------------------------------------


def criterion_6():
    def body():
        ok = True
        for ring in (QQ, GF(5)):
            for d in (2, 3, 4):
                alg = derived_clifford_zero(d, ring)
                h1 = homology_rank(alg, 1, d + 1)
                h0 = [homology_rank(alg, 0, w) for w in range(9)]
                want = [1 if w < d else 0 for w in range(9)]
                gb = psi_presentation(CliffordInput(ring, ("x",), 1, d, ())).groebner(6)
                quotient = list(quotient_dimension(gb, 8).counts)
                ok &= h1 == 1 and h0 == want and quotient == h0
        return ok, "H1(d+1) = 1, H0 = k[x]/(x^d), matches quotient counts"

    return _run(6, "derived Clifford homology", 5.0, body)


# 7 -----------------------------------------------------------------------------


def _random_clifford_input(rng, ring, n, m, d):
    names = ("x", "y", "z")[:n]
    fctx = PolyContext(ring, (), names, XMode.COMMUTING)
    forms = []
    for level in range(1, d + 1):
        f = fctx.zero()
        for _ in range(rng.randint(0, 3)):
            exps = [0] * n
            for _ in range(level * m):
                exps[rng.randrange(n)] += 1
            f = f + fctx.monomial((), tuple(exps), rng.randint(1, 4))
        forms.append(f)
    return CliffordInput(ring, names, m, d, forms)


def criterion_7():
    def body():
        hs = hypersurface_equation(F2)
        ok = hs.equation == hs.equation.ctx.parse("x0^2 - x0*y")
        q = CliffordInput(QQ, ("x", "y"), 1, 2, ("0", "x^2 + 2*x*y - 7*y^2"))
        hq = hypersurface_equation(q)
        ok &= hq.equation == hq.equation.ctx.parse("x0^2 - (x^2 + 2*x*y - 7*y^2)")
        rng = random.Random(7)
        for _ in range(100):
            ring = (QQ, GF(2), GF(3))[rng.randrange(3)]
            n, m, d = rng.randint(1, 3), rng.randint(1, 3), rng.randint(1, 4)
            h = hypersurface_equation(_random_clifford_input(rng, ring, n, m, d))
            ok &= h.weighted_degrees() == {m * d}
        return ok, f"F2: {format_poly(hs.equation)}; quadric: {format_poly(hq.equation)}"

    return _run(7, "hypersurface equation", 1.0, body)


# 8 -----------------------------------------------------------------------------


def criterion_8():
    def body():
        rng = random.Random(8)
        failures = []
        cases = 0
        for p, n, m, d in itertools.product((2, 3), (1, 2), (1, 2), (1, 2, 3)):
            ring = GF(p)
            names = ("x", "y")[:n]
            for inp in (CliffordInput(ring, names, m, d, ()), _random_clifford_input(rng, ring, n, m, d)):
                cases += 1
                if not same_ideal(psi_presentation(inp), z_enumerated_presentation(inp), 6):
                    failures.append(f"p={p},n={n},m={m},d={d}")
        detail = f"{cases - len(failures)}/{cases} agree"
        if failures:
            detail += "; disagree at " + " ".join(sorted(set(failures)))
        return not failures, detail

    return _run(8, "finite-ring generator equivalence", 30.0, body)


# 9 -----------------------------------------------------------------------------


def _soundness_cases():
    rng = random.Random(9)
    count = 0
    # parse/format roundtrips
    for i in range(600):
        ring = (GF(2), GF(5), QQ)[i % 3]
        ctx = PolyContext(ring, ("a", "b"), ("x", "y"), XMode.ORDERED if i % 2 else XMode.COMMUTING)
        p = random_poly(ctx, rng)
        assert ctx.parse(format_poly(p)) == p
        count += 1
    # law correspondence roundtrips
    for i in range(600):
        ring = GF(5) if i % 2 else QQ
        n, d = rng.randint(1, 3), rng.randint(0, 4)
        target = Alphabet(("a", "b")) if i % 3 == 0 else None
        tctx = PolyContext(ring, target or ())
        table = {}
        for nu in gamma_basis(n, d):
            if rng.random() < 0.6:
                if target is None:
                    table[nu] = random_coeff(ring, rng)
                else:
                    table[nu] = tctx.monomial((rng.randrange(2),), coeff=random_coeff(ring, rng))
        law = HomLaw(d, n, ring, target, table)
        assert extract_coefficients(law_generic(law)) == law.table
        count += 1
    # Leibniz and square-zero
    algs = [derived_clifford_zero(2, QQ), derived_clifford_zero(3, GF(5)),
            dg_free(GF(3), [DgGenerator("x", 0, 1), DgGenerator("e", 1, 1), DgGenerator("f", 2, 2)],
                    {"e": "x", "f": "x*e - e*x"})]

    def rand_hom(alg, h):
        p = alg.ctx.zero()
        for w in range(5):
            basis = bigraded_basis(alg, h, w)
            for word in rng.sample(basis, min(len(basis), rng.randint(0, 2))):
                p = p + alg.ctx.monomial(word, coeff=random_coeff(alg.ring, rng))
        return p

    for i in range(300):
        alg = algs[i % 3]
        hu = rng.randint(0, 2)
        u, v = rand_hom(alg, hu), rand_hom(alg, rng.randint(0, 2))
        sign = -1 if hu % 2 else 1
        assert dg_differential(alg, u * v) == (
            dg_differential(alg, u) * v + (u * dg_differential(alg, v)).scale(sign))
        assert dg_differential(alg, dg_differential(alg, u)).is_zero()
        count += 2
    # gbasis against the linear-algebra oracle
    ab = PolyContext(GF(2), ("a", "b"))
    corpora = [
        [ab.parse(t) for t in ("a^2", "a*b + b*a + a", "b^2 + b")],
        [ab.parse(t) for t in ("a^2", "a*b + a", "b*a", "b^2 + b")],
        list(weyl_presentation([[0, 1], [-1, 0]], QQ).relations),
        list(quadratic_presentation([1, -2], {(0, 1): 1}, QQ).relations),
    ]
    bases = [buchberger_bounded(rels, 6) for rels in corpora]
    for i in range(300):
        rels, gb = corpora[i % 4], bases[i % 4]
        ctx = rels[0].ctx
        p = ctx.zero()
        if i % 2:
            for _ in range(rng.randint(1, 2)):
                u = ctx.monomial((rng.randrange(2),) * rng.randint(0, 1))
                p = p + u * rng.choice(rels) * ctx.monomial((rng.randrange(2),) * rng.randint(0, 1))
        else:
            for _ in range(rng.randint(1, 3)):
                w = tuple(rng.randrange(2) for _ in range(rng.randint(0, 3)))
                p = p + ctx.monomial(w, coeff=random_coeff(ctx.ring, rng))
        verdict = is_member(p, gb)
        oracle = span_membership_oracle(p, rels, 6)
        assert verdict.is_member == oracle, (format_poly(p), str(verdict))
        nf = normal_form(p, gb)
        assert normal_form(nf, gb) == nf
        count += 1
    return count


def criterion_9():
    def body():
        try:
            count = _soundness_cases()
        except AssertionError as exc:
            return False, f"counterexample: {exc}"
        return count >= 2000, f"{count} randomized cases"

    return _run(9, "engine soundness suite", 60.0, body)


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9]


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"criterion_{i}" for i in range(1, 10)])
def test_acceptance(criterion, capsys):
    ok, line = criterion()
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


def main() -> int:
    results = [c() for c in CRITERIA]
    for _, line in results:
        print(line)
    return 0 if all(ok for ok, _ in results) else 1


if __name__ == "__main__":
    sys.exit(main())
