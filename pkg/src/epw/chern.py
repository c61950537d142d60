"""Intersection-theory bookkeeping in the cohomology of P^5.

Classes live in Q[w]/(w^6) with w the hyperplane class.  Chern classes of
the rank-5 quotient bundle Q are w^k by Whitney's formula on the Euler
sequence; everything else is computed with 5 formal roots a_1..a_5 of Q
and reduced to the elementary symmetric basis by the classical
lex-leading-term algorithm, then evaluated at e_k -> w^k.

Two independent root systems for the rank-10 bundle (pair sums twisted by
-w; complements of triple sums with a +3w twist) must give the same total
class; the degree-3 combination 2 c3 - c1 c2 is the class of the corank-2
stratum and must come out to 40 w^3.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .errors import VerificationError
from .fields import QQ
from .poly import MultiPoly

NROOTS = 5
AVARS = tuple(f"a{i}" for i in range(1, NROOTS + 1))
WVAR = "w"
VARS = AVARS + (WVAR,)

# regression constants: the w^4 and w^5 coefficients of the total class of
# the rank-10 bundle (derived here, agreed between both root systems)
CF_OMEGA4 = Fraction(42)
CF_OMEGA5 = Fraction(-42)


class ChernSeries:
    """Truncated polynomial c0 + c1 w + ... + c5 w^5 with rational
    coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = [Fraction(c) for c in coeffs]
        if len(cs) > 6:
            raise ValueError("series has more than 6 coefficients")
        self.coeffs = cs + [Fraction(0)] * (6 - len(cs))

    def __eq__(self, other):
        return isinstance(other, ChernSeries) and self.coeffs == other.coeffs

    def __getitem__(self, k):
        return self.coeffs[k]

    def add(self, other):
        return ChernSeries([a + b for a, b in zip(self.coeffs, other.coeffs)])

    def mul(self, other):
        out = [Fraction(0)] * 6
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if i + j < 6 and b != 0:
                    out[i + j] += a * b
        return ChernSeries(out)

    def __repr__(self):
        bits = []
        for k, c in enumerate(self.coeffs):
            if c:
                bits.append(f"{c}" if k == 0 else f"{c}*w^{k}")
        return " + ".join(bits) if bits else "0"

    def to_list(self):
        return [str(c) if c.denominator != 1 else c.numerator for c in self.coeffs]


def _product_of_factors(factors):
    out = MultiPoly.constant(QQ.one(), VARS, QQ)
    for f in factors:
        out = out.mul(f)
    return out


def _linear(const, coeffs):
    """const + sum coeffs[v] * VARS[v]."""
    return MultiPoly.affine(Fraction(const), [Fraction(c) for c in coeffs], VARS, QQ)


def elementary_polynomial(k):
    """e_k(a_1..a_5) as a MultiPoly in VARS."""
    p = MultiPoly.zero(VARS, QQ)
    for combo in combinations(range(NROOTS), k):
        e = [0] * len(VARS)
        for v in combo:
            e[v] = 1
        mono = MultiPoly(VARS, QQ, {tuple(e): Fraction(1)})
        p = p.add(mono)
    return p


def symmetric_to_elementary(poly):
    """Rewrite a polynomial symmetric in the a-variables in terms of the
    elementary symmetric functions.

    Returns a dict {(m1..m5, wexp): coefficient} meaning
    coeff * e1^m1 ... e5^m5 * w^wexp.  Raises if the input is not
    symmetric (detected by a non-monotone leading exponent).
    """
    work = {e: c for e, c in poly.terms.items()}
    result = {}
    elems = [None] + [elementary_polynomial(k) for k in range(1, NROOTS + 1)]
    while work:
        lam = max(work)  # lex max; a-part must be non-increasing
        c = work[lam]
        apart, wexp = lam[:NROOTS], lam[NROOTS]
        if any(apart[i] < apart[i + 1] for i in range(NROOTS - 1)):
            raise VerificationError("polynomial is not symmetric in the roots")
        mults = tuple(
            apart[k] - (apart[k + 1] if k + 1 < NROOTS else 0)
            for k in range(NROOTS)
        )
        key = (mults, wexp)
        result[key] = result.get(key, Fraction(0)) + c
        prod = MultiPoly.constant(c, VARS, QQ)
        for k, m in enumerate(mults, start=1):
            for _ in range(m):
                prod = prod.mul(elems[k])
        we = [0] * len(VARS)
        we[NROOTS] = wexp
        prod = prod.mul(MultiPoly(VARS, QQ, {tuple(we): Fraction(1)}))
        for e, cc in prod.terms.items():
            s = work.get(e, Fraction(0)) - cc
            if s == 0:
                work.pop(e, None)
            else:
                work[e] = s
    return {k: v for k, v in result.items() if v != 0}


def evaluate_elementary(eform):
    """Evaluate e_k -> w^k into the truncated ring."""
    out = [Fraction(0)] * 6
    for (mults, wexp), c in eform.items():
        deg = wexp + sum((k + 1) * m for k, m in enumerate(mults))
        if deg < 6:
            out[deg] += c
    return ChernSeries(out)


def chern_of_quotient_bundle():
    """Total class of the rank-5 quotient bundle: 1 + w + ... + w^5."""
    return ChernSeries([1, 1, 1, 1, 1, 1])


def chern_of_F():
    """Total class of the rank-10 Lagrangian bundle from its description
    as pair-sum roots a_i + a_j - w.

    Asserts the pinned leading coefficients (1, -6, 18, -34).
    """
    factors = []
    for i, j in combinations(range(NROOTS), 2):
        coeffs = [0] * len(VARS)
        coeffs[i] += 1
        coeffs[j] += 1
        coeffs[NROOTS] = -1
        factors.append(_linear(1, coeffs))
    series = evaluate_elementary(
        symmetric_to_elementary(_product_of_factors(factors))
    )
    expected = [Fraction(1), Fraction(-6), Fraction(18), Fraction(-34),
                CF_OMEGA4, CF_OMEGA5]
    if series.coeffs != expected:
        raise VerificationError(f"total class {series} differs from the pinned values")
    return series


def chern_of_omega3():
    """Same bundle via the twisted third cotangent power: roots are
    -(b_i + b_j + b_k) + 3w over the 10 triples, b_i = a_i + w.

    Asserts equality with chern_of_F in every degree.
    """
    factors = []
    for tri in combinations(range(NROOTS), 3):
        coeffs = [0] * len(VARS)
        for v in tri:
            coeffs[v] -= 1
        coeffs[NROOTS] = -3 + 3  # the -3w from the b-sums and the +3w twist
        factors.append(_linear(1, coeffs))
    series = evaluate_elementary(
        symmetric_to_elementary(_product_of_factors(factors))
    )
    other = chern_of_F()
    if series != other:
        raise VerificationError("the two root systems disagree")
    return series


def class_of_WA():
    """2 c3 - c1 c2 of the rank-10 bundle; must equal 40 w^3."""
    cf = chern_of_F()
    value = 2 * cf[3] - cf[1] * cf[2]
    series = ChernSeries([0, 0, 0, value, 0, 0])
    if value != 40:
        raise VerificationError(f"stratum class is {value} w^3, expected 40 w^3")
    return series
