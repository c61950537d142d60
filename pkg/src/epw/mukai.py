"""Quadric-discriminant models: the genus-6 K3 septic pencil and the
description of the degeneracy sextic as a discriminant in a system of
quadrics on the projectivized second wedge of a hyperplane W.

Fixing V = <e0> + W with W = <e1..e5>, the 20-dimensional wedge space
splits into e0 ^ (wedge^2 W) and wedge^3 W, both Lagrangian.  A subspace
A transversal to wedge^3 W is the graph of a symmetric quadratic form
q_A on wedge^2 W, the fibers over the affine chart [e0 + w] give the
Pluecker forms q_w(alpha) = w ^ alpha ^ alpha, and the degeneracy locus
becomes {w : det(q_A - q_w) = 0}.  The homogenized 10x10 determinant
det(mu q_A - q_w) is divisible by mu^4 exactly, and the quotient matches
the chart sextic: the strongest end-to-end identity in the package.
"""

from __future__ import annotations

from itertools import combinations
from math import comb

from .errors import (
    CrossCheckError,
    ReseedError,
    ShapeError,
    TransversalityError,
    VerificationError,
)
from .fields import GF
from .lagrangian import LagrangianSubspace
from .linalg import ExactMatrix
from .loci import sextic_equation
from .poly import MultiPoly, det_linear_matrix
from .rng import SplitMix64

# ground set {0..4} for the 5-dimensional space W (index i <-> e_{i+1} in V)
PAIRS5 = list(combinations(range(5), 2))
TRIPLES5 = list(combinations(range(5), 3))
QVARS = ("mu", "w1", "w2", "w3", "w4", "w5")


def _merge_sign5(*groups):
    """Parity sign of concatenating disjoint sorted index groups of {0..4};
    0 when they overlap or do not exhaust the ground set."""
    seq = []
    for g in groups:
        seq.extend(g)
    if len(set(seq)) != len(seq) or len(seq) != 5:
        return 0
    inv = sum(1 for i in range(5) for j in range(i + 1, 5) if seq[i] > seq[j])
    return -1 if inv % 2 else 1


class QuadricForm:
    """Quadratic form on P^n given by a symmetric (n+1)x(n+1) Gram matrix."""

    __slots__ = ("n", "gram")

    def __init__(self, gram):
        if gram.rows != gram.cols:
            raise ShapeError("Gram matrix must be square")
        if gram != gram.transpose():
            raise ShapeError("Gram matrix must be symmetric")
        self.gram = gram
        self.n = gram.rows - 1

    def rank(self):
        return self.gram.rank()

    def corank(self):
        return self.gram.rows - self.gram.rank()

    def value(self, x):
        F = self.gram.field
        gx = self.gram.apply_vector(x)
        acc = F.zero()
        for a, b in zip(x, gx):
            acc = F.add(acc, F.mul(a, b))
        return acc

    def flatten(self):
        """Upper-triangle coordinates for span computations."""
        n = self.gram.rows
        return [self.gram.at(i, j) for i in range(n) for j in range(i, n)]


class QuadricSystem:
    """Linearly independent quadrics spanning a system."""

    __slots__ = ("basis", "labels")

    def __init__(self, basis, labels=None):
        if not basis:
            raise ShapeError("empty quadric system")
        field = basis[0].gram.field
        flat = ExactMatrix.from_rows([q.flatten() for q in basis], field)
        if flat.rank() != len(basis):
            raise ReseedError("quadric system is linearly dependent")
        self.basis = list(basis)
        self.labels = list(labels) if labels else [f"q{i}" for i in range(len(basis))]

    def dim(self):
        return len(self.basis)


def plucker_quadric_qw(w, field):
    """Gram of q_w(alpha) = w ^ alpha ^ alpha on the 10 pair coordinates.

    Linear in w; the zero locus of every q_w contains the decomposables
    (alpha ^ alpha = 0), and the rank is 6 for nonzero w.
    """
    if len(w) != 5:
        raise ShapeError("w must have 5 coordinates")
    F = field
    g = ExactMatrix.zeros(10, 10, F)
    for a, Ka in enumerate(PAIRS5):
        for b, Kb in enumerate(PAIRS5):
            acc = F.zero()
            for m in range(5):
                if F.is_zero(w[m]):
                    continue
                s = _merge_sign5((m,), Ka, Kb)
                if s:
                    acc = F.add(acc, w[m] if s > 0 else F.neg(w[m]))
            g.data[a * 10 + b] = acc
    return QuadricForm(g)


def _triple_pair_pairing(field):
    """P[c][b] = vol_W of (triple basis c) wedge (pair basis b)."""
    P = ExactMatrix.zeros(10, 10, field)
    for c, J in enumerate(TRIPLES5):
        for b, K in enumerate(PAIRS5):
            s = _merge_sign5(J, K)
            if s:
                P.data[c * 10 + b] = field.from_int(s)
    return P


def qa_from_lagrangian(A):
    """The graph quadratic form of A over the splitting, as a QuadricForm.

    Requires A transversal to wedge^3 W, i.e. the RREF pivots of A are
    exactly the ten subsets containing 0.  Symmetry of the resulting Gram
    matrix is forced by A being Lagrangian and is asserted.
    """
    _, pivots = A.basis.rref()
    if pivots != list(range(10)):
        raise TransversalityError("A is not transversal to the wedge of W")
    F = A.field
    M = ExactMatrix.from_rows(
        [A.basis.row(r)[10:] for r in range(10)], F
    )
    QA = M.matmul(_triple_pair_pairing(F))
    if QA != QA.transpose():
        raise VerificationError("graph form of a Lagrangian failed symmetry")
    return QuadricForm(QA)


def lagrangian_from_qa(QA, field, provenance=None):
    """Inverse of qa_from_lagrangian: the graph subspace of a symmetric
    Gram matrix."""
    P = _triple_pair_pairing(field)
    M = P.transpose().solve(QA.transpose()).transpose()
    rows = []
    for r in range(10):
        row = [field.zero()] * 20
        row[r] = field.one()
        for c in range(10):
            row[10 + c] = M.at(r, c)
        rows.append(row)
    return LagrangianSubspace(
        ExactMatrix.from_rows(rows, field), provenance=provenance
    )


def lagrangian_with_qa_corank(seed, corank, field):
    """Graph Lagrangian whose quadratic form has the prescribed corank:
    a zero block of that size plus a random invertible symmetric block."""
    rng = SplitMix64(seed ^ 0xA5A5)
    n = 10 - corank
    for _ in range(64):
        S = ExactMatrix.zeros(10, 10, field)
        for i in range(n):
            for j in range(i, n):
                c = field.random(rng)
                S.data[(corank + i) * 10 + (corank + j)] = c
                S.data[(corank + j) * 10 + (corank + i)] = c
        sub = ExactMatrix.from_rows(
            [[S.at(corank + i, corank + j) for j in range(n)] for i in range(n)],
            field,
        )
        if sub.rank() == n:
            A = lagrangian_from_qa(S, field, provenance={"seed": seed, "qa_corank": corank})
            return A
    raise ReseedError("could not sample an invertible symmetric block")


def sextic_via_quadrics(A, cross_check=True):
    """Homogeneous degree-6 discriminant quotient det(mu q_A - q_w)/mu^4.

    Asserts the mu-adic valuation is exactly 4 and (by default) that the
    dehomogenization at mu = 1 is proportional to the chart-0 sextic
    under w -> [e0 + w].
    """
    QA = qa_from_lagrangian(A)
    F = A.field
    qw_basis = [
        plucker_quadric_qw(
            [F.one() if k == m else F.zero() for k in range(5)], F
        )
        for m in range(5)
    ]
    mat = []
    for a in range(10):
        row = []
        for b in range(10):
            lin = [QA.gram.at(a, b)]
            for m in range(5):
                lin.append(F.neg(qw_basis[m].gram.at(a, b)))
            row.append(MultiPoly.affine(F.zero(), lin, QVARS, F))
        mat.append(row)
    D = det_linear_matrix(mat)
    if D.is_zero():
        raise CrossCheckError("discriminant determinant vanished identically")
    if not D.is_homogeneous() or D.degree() != 10:
        raise CrossCheckError("discriminant is not homogeneous of degree 10")
    mu = MultiPoly.variable("mu", QVARS, F)
    s = D
    try:
        for _ in range(4):
            s = s.exact_divide(mu)
    except Exception as exc:
        raise CrossCheckError("mu^4 does not divide the discriminant") from exc
    if s.substitute("mu", F.zero()).is_zero():
        raise CrossCheckError("mu-adic valuation exceeds 4")
    if s.degree() != 6:
        raise CrossCheckError(f"quotient degree {s.degree()} != 6")
    if cross_check:
        f = sextic_equation(A)
        f_aff = f.poly.substitute("x0", F.one())
        s_aff = s.substitute("mu", F.one()).rename_vars(
            {"mu": "x0", "w1": "x1", "w2": "x2", "w3": "x3", "w4": "x4", "w5": "x5"}
        )
        if not s_aff.proportional_to(f_aff):
            raise CrossCheckError("quadric route disagrees with the chart sextic")
    return s


def multiplicity_at_qa(A, cross_check=True):
    """Lowest total w-degree of the discriminant quotient at mu = 1: the
    multiplicity of the locus at the distinguished quadric (w = 0)."""
    s = sextic_via_quadrics(A, cross_check=cross_check)
    F = A.field
    s_aff = s.substitute("mu", F.one())
    if s_aff.is_zero():
        raise CrossCheckError("discriminant quotient vanished on the chart")
    return min(sum(e) for e in s_aff.terms)


# ---- the genus-6 K3 pencil -----------------------------------------------


def build_mukai_data(seed, field=None):
    """Seeded model of the quadric system through a genus-6 K3 surface.

    The five Pfaffian quadrics cutting out Gr(2,5) in P^9 are restricted
    to a seeded 7-dimensional subspace (a P^6); together with one more
    seeded quadric they must span systems of linear dimension 5 and 6, or
    a ReseedError asks the caller for a fresh seed.
    """
    if field is None:
        field = GF(101)
    rng = SplitMix64(seed ^ 0x6B3A)
    plucker = [
        plucker_quadric_qw(
            [field.one() if k == m else field.zero() for k in range(5)], field
        )
        for m in range(5)
    ]
    R = ExactMatrix.random(10, 7, field, rng)
    if R.rank() != 7:
        raise ReseedError("restriction subspace is degenerate")
    restricted = []
    for q in plucker:
        g = R.transpose().matmul(q.gram).matmul(R)
        restricted.append(QuadricForm(g))
    flat = ExactMatrix.from_rows([q.flatten() for q in restricted], field)
    if flat.rank() != 5:
        raise ReseedError("restricted Pfaffian quadrics do not span dimension 5")
    qbar_g = ExactMatrix.zeros(7, 7, field)
    for i in range(7):
        for j in range(i, 7):
            c = field.random(rng)
            qbar_g.data[i * 7 + j] = c
            qbar_g.data[j * 7 + i] = c
    qbar = QuadricForm(qbar_g)
    system = QuadricSystem(restricted + [qbar], labels=[f"pf{m}" for m in range(5)] + ["qbar"])
    return {
        "plucker_p9": plucker,
        "restricted": restricted,
        "qbar": qbar,
        "system": system,
        "restriction": R,
    }


LVARS = tuple(f"l{i}" for i in range(6))


def discriminant_septic(data):
    """Determinant of the 7x7 symmetric pencil over the 6 system
    coordinates: degree 7, identically zero on the hyperplane spanned by
    the restricted Pfaffians, and the quotient by that coordinate is the
    degree-6 piece."""
    system = data["system"]
    F = system.basis[0].gram.field
    mat = []
    for a in range(7):
        row = []
        for b in range(7):
            lin = [q.gram.at(a, b) for q in system.basis]
            row.append(MultiPoly.affine(F.zero(), lin, LVARS, F))
        mat.append(row)
    septic = det_linear_matrix(mat)
    if septic.is_zero() or septic.degree() != 7 or not septic.is_homogeneous():
        raise ReseedError("pencil determinant is not a septic")
    if not septic.substitute("l5", F.zero()).is_zero():
        raise ReseedError("septic does not vanish on the Pfaffian hyperplane")
    l5 = MultiPoly.variable("l5", LVARS, F)
    sextic = septic.exact_divide(l5)
    if sextic.degree() != 6:
        raise ReseedError("quotient is not a sextic")
    if sextic.substitute("l5", F.zero()).is_zero():
        raise ReseedError("septic is divisible by the hyperplane twice")
    return {"septic": septic, "sextic": sextic}


def dimension_checks_66():
    """Binomial bookkeeping for the two guessed module decompositions."""
    dim_wedge3_6 = comb(6, 3)
    dim_sym3_3 = comb(3 + 2, 3)
    dim_sym2_4 = comb(4 + 1, 2)
    return {
        "wedge3_of_sym2_C3": {
            "ambient": dim_wedge3_6,
            "summands": [dim_sym3_3, dim_sym3_3],
            "matches": dim_wedge3_6 == 2 * dim_sym3_3,
        },
        "wedge3_of_wedge2_C4": {
            "ambient": dim_wedge3_6,
            "summands": [dim_sym2_4, dim_sym2_4],
            "matches": dim_wedge3_6 == 2 * dim_sym2_4,
        },
    }
