"""Exact coefficient rings: the integers, the rationals and prime fields.

Ring elements are handled in two layers.  A :class:`RingHandle` knows how to
do arithmetic on *raw* values (``int`` for ZZ and GF(p), ``Fraction`` for QQ);
the polynomial code stores raw values for speed.  :class:`Scalar` pairs a raw
value with its ring and is the public, self-describing element type.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DivisionByZero,
    MalformedRingSpec,
    NotInvertible,
    NotPrime,
    RingMismatch,
)

INTEGERS = "Integers"
RATIONALS = "Rationals"
PRIME_FIELD = "PrimeField"

MAX_CHARACTERISTIC = 2**31

_RING_RE = re.compile(r"^\s*(?:(ZZ)|(QQ)|GF\(\s*([0-9]+)\s*\))\s*$")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class RingHandle:
    kind: str
    characteristic: int = 0

    def __post_init__(self):
        if self.kind not in (INTEGERS, RATIONALS, PRIME_FIELD):
            raise MalformedRingSpec(f"unknown ring kind {self.kind!r}")
        if self.kind == PRIME_FIELD:
            p = self.characteristic
            if p > MAX_CHARACTERISTIC:
                raise NotPrime(f"characteristic {p} exceeds 2^31")
            if not is_prime(p):
                raise NotPrime(f"{p} is not prime")
        elif self.characteristic != 0:
            raise MalformedRingSpec(f"{self.kind} has characteristic 0")

    def __str__(self):
        if self.kind == INTEGERS:
            return "ZZ"
        if self.kind == RATIONALS:
            return "QQ"
        return f"GF({self.characteristic})"

    def __repr__(self):
        return f"RingHandle({self})"

    @property
    def is_field(self) -> bool:
        return self.kind != INTEGERS

    # raw-value arithmetic -------------------------------------------------

    def convert(self, value):
        """Canonical raw value for an int, Fraction or decimal/``p/q`` string."""
        if isinstance(value, Scalar):
            if value.ring != self:
                raise RingMismatch(f"{value.ring} element used over {self}")
            return value.value
        if isinstance(value, str):
            value = Fraction(value.strip())
        if isinstance(value, bool):
            value = int(value)
        if self.kind == RATIONALS:
            return Fraction(value)
        if isinstance(value, Fraction):
            if self.kind == INTEGERS:
                if value.denominator != 1:
                    raise NotInvertible(f"{value} is not an integer")
                return value.numerator
            p = self.characteristic
            den = value.denominator % p
            if den == 0:
                raise DivisionByZero(f"denominator of {value} vanishes mod {p}")
            return value.numerator * pow(den, -1, p) % p
        if self.kind == INTEGERS:
            return int(value)
        return int(value) % self.characteristic

    def zero(self):
        return Fraction(0) if self.kind == RATIONALS else 0

    def one(self):
        return Fraction(1) if self.kind == RATIONALS else 1

    def add(self, a, b):
        if self.kind == PRIME_FIELD:
            return (a + b) % self.characteristic
        return a + b

    def sub(self, a, b):
        if self.kind == PRIME_FIELD:
            return (a - b) % self.characteristic
        return a - b

    def neg(self, a):
        if self.kind == PRIME_FIELD:
            return -a % self.characteristic
        return -a

    def mul(self, a, b):
        if self.kind == PRIME_FIELD:
            return a * b % self.characteristic
        return a * b

    def pow(self, a, k: int):
        if self.kind == PRIME_FIELD:
            return pow(a, k, self.characteristic)
        return a**k

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of zero")
        if self.kind == PRIME_FIELD:
            return pow(a, -1, self.characteristic)
        if self.kind == RATIONALS:
            return 1 / a
        if a in (1, -1):
            return a
        raise NotInvertible(f"{a} is not a unit in ZZ")

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def format(self, a) -> str:
        return str(a)

    def is_negative(self, a) -> bool:
        """Sign used for printing; prime-field residues are never negative."""
        return self.kind != PRIME_FIELD and a < 0

    def elements(self):
        """All elements of a prime field, in residue order."""
        if self.kind != PRIME_FIELD:
            raise ValueError(f"{self} is infinite")
        return range(self.characteristic)

    def lift_to_field(self) -> "RingHandle":
        return QQ if self.kind == INTEGERS else self


ZZ = RingHandle(INTEGERS)
QQ = RingHandle(RATIONALS)


def GF(p: int) -> RingHandle:
    return RingHandle(PRIME_FIELD, p)


def make_ring(spec: str) -> RingHandle:
    """Parse ``ZZ``, ``QQ`` or ``GF(p)``."""
    if not isinstance(spec, str):
        raise MalformedRingSpec(f"ring spec must be text, got {spec!r}")
    match = _RING_RE.match(spec)
    if match is None:
        raise MalformedRingSpec(f"malformed ring spec {spec!r}")
    if match.group(1):
        return ZZ
    if match.group(2):
        return QQ
    return GF(int(match.group(3)))


@dataclass(frozen=True)
class Scalar:
    ring: RingHandle
    value: object

    def __post_init__(self):
        object.__setattr__(self, "value", self.ring.convert(self.value))

    @classmethod
    def of(cls, ring, value):
        return cls(ring, value)

    def _check(self, other):
        if not isinstance(other, Scalar):
            return Scalar(self.ring, other)
        if other.ring != self.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")
        return other

    def __add__(self, other):
        other = self._check(other)
        return Scalar(self.ring, self.ring.add(self.value, other.value))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        return Scalar(self.ring, self.ring.sub(self.value, other.value))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        return Scalar(self.ring, self.ring.mul(self.value, other.value))

    __rmul__ = __mul__

    def __neg__(self):
        return Scalar(self.ring, self.ring.neg(self.value))

    def __pow__(self, k: int):
        return Scalar(self.ring, self.ring.pow(self.value, k))

    def inverse(self) -> "Scalar":
        return Scalar(self.ring, self.ring.inv(self.value))

    def is_zero(self) -> bool:
        return self.value == 0

    def __bool__(self):
        return self.value != 0

    def __str__(self):
        return self.ring.format(self.value)


def scalar_arith(op: str, a: Scalar, b: Scalar) -> Scalar:
    if a.ring != b.ring:
        raise RingMismatch(f"{a.ring} vs {b.ring}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def scalar_inv(a: Scalar) -> Scalar:
    return a.inverse()
