"""Exact coefficient fields: Q and F_p for odd primes p >= 5.

Scalars are stored raw (`fractions.Fraction` over Q, `int` residues over
F_p) and containers carry a field object that routes the arithmetic.  The
two kinds never mix: container operations compare field tags and raise
:class:`FieldMismatchError` on disagreement.

A first-order jet ring (dual numbers a + b*t, t^2 = 0) over either field
is also provided; it is what makes exact derivative extraction possible
without any floating point.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import BadPrimeError, FieldMismatchError


def _is_prime(n):
    # deterministic Miller-Rabin, valid far beyond 64 bits
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
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


class Field:
    """Common interface of the coefficient fields."""

    char = 0

    def zero(self):
        return self.from_int(0)

    def one(self):
        return self.from_int(1)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a):
        raise NotImplementedError

    def is_unit(self, a):
        return not self.is_zero(a)

    def eq(self, a, b):
        return self.is_zero(self.sub(a, b))

    def check_same(self, other):
        if self != other:
            raise FieldMismatchError(f"cannot mix {self} and {other}")


class RationalField(Field):
    """The rationals; elements are `Fraction` in lowest terms."""

    char = 0

    def from_int(self, n):
        return Fraction(n)

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return 1 / a

    def is_zero(self, a):
        return a == 0

    def random(self, rng):
        return Fraction(rng.next_symmetric(10))

    def format(self, a):
        if a.denominator == 1:
            return str(a.numerator)
        return f"{a.numerator}/{a.denominator}"

    def parse(self, s):
        return Fraction(s)

    def tag(self):
        return "Q"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "Q"


class PrimeFieldF(Field):
    """F_p for an odd prime p >= 5; elements are ints in [0, p)."""

    def __init__(self, p):
        if p < 5 or p % 2 == 0 or p % 3 == 0 or not _is_prime(p):
            raise ValueError(f"modulus must be a prime >= 5, got {p}")
        self.p = p
        self.char = p

    def from_int(self, n):
        return n % self.p

    def add(self, a, b):
        c = a + b
        return c - self.p if c >= self.p else c

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return self.p - a if a else 0

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0 mod p")
        return pow(a, self.p - 2, self.p)

    def is_zero(self, a):
        return a == 0

    def random(self, rng):
        return rng.next_mod(self.p)

    def format(self, a):
        return str(a)

    def parse(self, s):
        return int(s) % self.p

    def reduce_rational(self, fr):
        """Image of a rational with denominator prime to p."""
        if fr.denominator % self.p == 0:
            raise BadPrimeError(f"denominator divisible by {self.p}")
        return fr.numerator * pow(fr.denominator, self.p - 2, self.p) % self.p

    def tag(self):
        return {"Fp": self.p}

    def __eq__(self, other):
        return isinstance(other, PrimeFieldF) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return f"F{self.p}"


QQ = RationalField()

_gf_cache = {}


def GF(p):
    if p not in _gf_cache:
        _gf_cache[p] = PrimeFieldF(p)
    return _gf_cache[p]


def field_from_tag(tag):
    if tag == "Q":
        return QQ
    if isinstance(tag, dict) and "Fp" in tag:
        return GF(int(tag["Fp"]))
    raise ValueError(f"unknown field tag {tag!r}")


class JetField(Field):
    """Dual numbers a + b*t with t^2 = 0 over a base field.

    Not a field, but Gaussian elimination goes through whenever pivots can
    be chosen with a unit (invertible) constant part, which is exactly the
    case for matrices whose constant part is invertible.  Used to read off
    first derivatives exactly.
    """

    def __init__(self, base):
        self.base = base
        self.char = base.char

    def from_int(self, n):
        return (self.base.from_int(n), self.base.zero())

    def lift(self, a, b=None):
        return (a, self.base.zero() if b is None else b)

    def add(self, a, b):
        return (self.base.add(a[0], b[0]), self.base.add(a[1], b[1]))

    def neg(self, a):
        return (self.base.neg(a[0]), self.base.neg(a[1]))

    def mul(self, a, b):
        bb = self.base
        return (bb.mul(a[0], b[0]), bb.add(bb.mul(a[0], b[1]), bb.mul(a[1], b[0])))

    def inv(self, a):
        bb = self.base
        i = bb.inv(a[0])
        return (i, bb.neg(bb.mul(bb.mul(i, i), a[1])))

    def is_zero(self, a):
        return self.base.is_zero(a[0]) and self.base.is_zero(a[1])

    def is_unit(self, a):
        return not self.base.is_zero(a[0])

    def __eq__(self, other):
        return isinstance(other, JetField) and other.base == self.base

    def __hash__(self):
        return hash(("jet", self.base))

    def __repr__(self):
        return f"{self.base}[t]/(t^2)"
