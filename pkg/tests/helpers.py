"""Random generators and small independent oracles shared by the tests."""

from __future__ import annotations

import itertools
from fractions import Fraction

from gencliff.coeffs import INTEGERS, PRIME_FIELD, RATIONALS
from gencliff.freealg import NcPoly, PolyContext


def random_coeff(ring, rng, allow_zero=False):
    while True:
        if ring.kind == PRIME_FIELD:
            v = rng.randrange(ring.characteristic)
        elif ring.kind == INTEGERS:
            v = rng.randint(-9, 9)
        else:
            v = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
        if allow_zero or v != 0:
            return ring.convert(v)


def random_word(nletters, rng, max_len):
    if nletters == 0:
        return ()
    return tuple(rng.randrange(nletters) for _ in range(rng.randint(0, max_len)))


def random_xpart(ctx, rng, max_len):
    n = len(ctx.x)
    word = random_word(n, rng, max_len)
    if ctx.commuting:
        return tuple(word.count(i) for i in range(n))
    return word


def random_poly(ctx: PolyContext, rng, max_terms=5, max_a=3, max_x=2) -> NcPoly:
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        key = (random_word(len(ctx.a), rng, max_a), random_xpart(ctx, rng, max_x))
        terms[key] = random_coeff(ctx.ring, rng)
    return NcPoly(ctx, terms)


def random_homogeneous_form(ctx, degree, rng, max_terms=4):
    """Commuting-mode x-only form of the given degree."""
    n = len(ctx.x)
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        exps = [0] * n
        for _ in range(degree):
            exps[rng.randrange(n)] += 1
        terms[((), tuple(exps))] = random_coeff(ctx.ring, rng)
    return NcPoly(ctx, terms)


def all_points(ring, n):
    return itertools.product(range(ring.characteristic), repeat=n)


def is_prime_oracle(n):
    """Independent primality check (Miller-Rabin, deterministic below 3.3e24)."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for p in small:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


RINGS_FIELD = (RATIONALS, PRIME_FIELD)
