"""Degeneracy loci of a Lagrangian against the fiber family.

The locus where dim(A meet F_v) >= 1 is cut out, on the affine chart
where coordinate i is nonzero, by the determinant of a 10x10 matrix of
affine-linear forms: the columns are the frame vectors v(x) ^ e_j ^ e_k
(j, k != i) projected modulo A onto a coordinate complement.  The
determinant collapses from formal degree 10 to degree <= 6, and its
degree-6 homogenization is the sextic equation.

Two independent routes are kept: the chart determinant, and the 20x20
homogeneous determinant (A-basis columns next to the frame columns)
which must equal the sextic times the fourth power of the chart
coordinate; both are asserted against each other.
"""

from __future__ import annotations

import numpy as np

from . import kernels, wedge
from .errors import (
    CrossCheckError,
    DegenerateLagrangianError,
    InternalInvariantError,
    ShapeError,
    ZeroVectorError,
)
from .linalg import ExactMatrix
from .poly import MultiPoly, det_linear_matrix, minors_of_size
from .wedge import DIM, SUBSETS, WedgeVector, fiber_F

ALL_VARS = tuple(f"x{i}" for i in range(DIM))


def corank_at(A, v):
    """dim(A meet F_[v]) = 20 - rank of the stacked [A-basis; F_v-basis]."""
    if isinstance(v, (list, tuple)):
        v = WedgeVector(1, list(v), A.field, A.space)
    if v.is_zero():
        raise ZeroVectorError("corank at the zero vector")
    A.field.check_same(v.field)
    if v.space != A.space:
        raise ShapeError("point and subspace live in different spaces")
    stacked = A.basis.stack(fiber_F(v))
    return 20 - stacked.rank()


class ChartMatrix:
    """10x10 matrix of affine-linear forms in the 5 chart variables."""

    __slots__ = ("chart_index", "vars", "mat", "frame", "complement", "field")

    def __init__(self, chart_index, vars, mat, frame, complement, field):
        self.chart_index = chart_index
        self.vars = vars
        self.mat = mat
        self.frame = frame
        self.complement = complement
        self.field = field

    def det(self):
        return det_linear_matrix(self.mat)

    def evaluate(self, point):
        """Scalar 10x10 matrix at a chart point (list of 5 scalars)."""
        rows = [[p.evaluate(point) for p in row] for row in self.mat]
        return ExactMatrix.from_rows(rows, self.field)


def _reduce_mod_basis(vec, basis, pivots):
    """vec minus its projection onto the RREF row space of `basis`."""
    F = basis.field
    out = list(vec)
    for r, pc in enumerate(pivots):
        c = out[pc]
        if not F.is_zero(c):
            row = basis.row(r)
            out = [F.sub(a, F.mul(c, b)) for a, b in zip(out, row)]
    return out


def chart_matrix(A, i):
    """Frame columns v(x) ^ e_j ^ e_k (j, k != i) projected modulo A.

    v(x) = e_i + sum_{j != i} x_j e_j; rows are labeled by the 10
    standard basis positions complementary to A's pivot columns.
    """
    if not 0 <= i < DIM:
        raise ShapeError(f"chart index {i} out of range")
    F = A.field
    basis = A.basis
    _, pivots = basis.rref()  # basis is already RREF; this just reads pivots
    pivset = set(pivots)
    comp = [c for c in range(20) if c not in pivset]
    vars = tuple(f"x{j}" for j in range(DIM) if j != i)
    others = [j for j in range(DIM) if j != i]
    frame = [(a, b) for (a, b) in SUBSETS[2] if i not in (a, b)]
    mat = [[None] * 10 for _ in range(10)]
    for c, (a, b) in enumerate(frame):
        pair = WedgeVector.basis((a, b), F)
        consts = WedgeVector.basis((i,), F).wedge(pair).coords
        consts = _reduce_mod_basis(consts, basis, pivots)
        lin = {}
        for l in others:
            w = WedgeVector.basis((l,), F).wedge(pair).coords
            lin[l] = _reduce_mod_basis(w, basis, pivots)
        for r in range(10):
            pos = comp[r]
            coeffs = [lin[l][pos] for l in others]
            mat[r][c] = MultiPoly.affine(consts[pos], coeffs, vars, F)
    return ChartMatrix(i, vars, mat, frame, comp, F)


class SexticEquation:
    """Homogeneous degree-6 primitive-normalized equation of the locus."""

    __slots__ = ("poly", "chart", "cross_chart", "field")

    def __init__(self, poly, chart, cross_chart):
        if poly.is_zero() or not poly.is_homogeneous() or poly.degree() != 6:
            raise InternalInvariantError("equation is not a nonzero sextic")
        self.poly = poly
        self.chart = chart
        self.cross_chart = cross_chart
        self.field = poly.field

    def evaluate(self, point):
        return self.poly.evaluate(list(point))

    def gradient(self, point):
        return [self.poly.derivative(v).evaluate(list(point)) for v in ALL_VARS]

    def to_json(self):
        return self.poly.to_json()


def _homogenized(det_poly, i):
    full = det_poly.with_vars(ALL_VARS)
    return full.homogenize(6, f"x{i}").normalize_primitive()


def sextic_equation(A):
    """The sextic by the chart-determinant route, cross-checked on a
    second chart.

    Raises DegenerateLagrangianError when every chart determinant is
    identically zero, and InternalInvariantError if a chart determinant
    expands to degree > 6 (formal degree is 10; the collapse to 6 is a
    correctness assertion).
    """
    first = None
    for i in range(DIM):
        d = chart_matrix(A, i).det()
        if d.is_zero():
            continue
        if d.degree() > 6:
            raise InternalInvariantError(
                f"chart {i} determinant has degree {d.degree()} > 6"
            )
        first = (i, d)
        break
    if first is None:
        raise DegenerateLagrangianError(
            "degenerate-A: det of every chart matrix vanishes identically"
        )
    i, d = first
    f = _homogenized(d, i)
    j = next(k for k in range(DIM) if k != i)
    dj = chart_matrix(A, j).det()
    if dj.is_zero() or dj.degree() > 6:
        raise InternalInvariantError(f"chart {j} determinant inconsistent")
    fj = _homogenized(dj, j)
    if not f.proportional_to(fj):
        raise CrossCheckError(f"charts {i} and {j} give non-proportional sextics")
    return SexticEquation(f, i, j)


def sextic_cross_check_20x20(A, i, sextic=None):
    """Independent route: the 20x20 determinant with A-basis columns and
    homogeneous frame columns v(x) ^ e_j ^ e_k must equal
    constant * x_i^4 * sextic.

    The 20x20 determinant is evaluated exactly by determinant-preserving
    row elimination of the constant block, leaving a 10x10 determinant of
    linear forms.
    """
    if sextic is None:
        sextic = sextic_equation(A)
    F = A.field
    frame = [(a, b) for (a, b) in SUBSETS[2] if i not in (a, b)]
    # per row: constants (10 cols) and linear coefficients (10 cols x 6 vars)
    consts = [[F.zero()] * 10 for _ in range(20)]
    lins = [[[F.zero()] * DIM for _ in range(10)] for _ in range(20)]
    for c in range(10):
        col = A.basis.row(c)
        for r in range(20):
            consts[r][c] = col[r]
    for c, (a, b) in enumerate(frame):
        pair = WedgeVector.basis((a, b), F)
        for l in range(DIM):
            w = WedgeVector.basis((l,), F).wedge(pair).coords
            for r in range(20):
                if not F.is_zero(w[r]):
                    lins[r][c][l] = w[r]

    rows = list(range(20))
    detscale = F.one()
    sign = 1
    pivot_rows = []
    for col in range(10):
        piv = None
        for r in rows:
            if r not in pivot_rows and not F.is_zero(consts[r][col]):
                piv = r
                break
        if piv is None:
            raise InternalInvariantError("A-basis columns are rank-deficient")
        pivot_rows.append(piv)
        pc = consts[piv][col]
        detscale = F.mul(detscale, pc)
        inv = F.inv(pc)
        for r in range(20):
            if r == piv or F.is_zero(consts[r][col]):
                continue
            factor = F.mul(consts[r][col], inv)
            consts[r] = [
                F.sub(a_, F.mul(factor, b_)) for a_, b_ in zip(consts[r], consts[piv])
            ]
            for cc in range(10):
                lins[r][cc] = [
                    F.sub(a_, F.mul(factor, b_))
                    for a_, b_ in zip(lins[r][cc], lins[piv][cc])
                ]
    rest = [r for r in range(20) if r not in pivot_rows]
    # row permutation sign: pivot rows (in order) followed by the rest
    perm = pivot_rows + rest
    inv_count = sum(
        1 for a in range(20) for b in range(a + 1, 20) if perm[a] > perm[b]
    )
    sign = -1 if inv_count % 2 else 1

    sub = [
        [
            MultiPoly.affine(F.zero(), lins[r][c], ALL_VARS, F)
            for c in range(10)
        ]
        for r in rest
    ]
    d2 = det_linear_matrix(sub)
    scale = detscale if sign > 0 else F.neg(detscale)
    big = d2.scalar_mul(scale)
    if big.is_zero():
        raise CrossCheckError("20x20 determinant vanished unexpectedly")
    xi = MultiPoly.variable(f"x{i}", ALL_VARS, F)
    q = big
    try:
        for _ in range(4):
            q = q.exact_divide(xi)
    except Exception as exc:
        raise CrossCheckError(f"x{i}^4 does not divide the 20x20 determinant") from exc
    if not q.proportional_to(sextic.poly):
        raise CrossCheckError("20x20 route disagrees with the chart sextic")
    return True


def minors_ideal(A, i, j):
    """Generators of the corank->=j stratum on chart i: all
    (11-j) x (11-j) minors of the chart matrix, in (row set, column set)
    lex order."""
    if not 1 <= j <= 3:
        raise ShapeError("stratum index must be 1, 2 or 3")
    cm = chart_matrix(A, i)
    return minors_of_size(cm.mat, 11 - j)


class StrataReport:
    __slots__ = ("p", "histogram", "points")

    def __init__(self, p, histogram, points):
        self.p = p
        self.histogram = histogram  # {corank: count}
        self.points = points  # {corank: [6-tuples]} for corank >= collect_min

    def to_json(self):
        return {
            "p": self.p,
            "histogram": {str(c): n for c, n in sorted(self.histogram.items())},
            "points": {
                str(c): [list(pt) for pt in pts]
                for c, pts in sorted(self.points.items())
            },
        }


def strata_scan(A, collect_min=2):
    """Corank histogram over every point of P^5(F_p), with the point
    lists for coranks >= collect_min (deterministic lex order)."""
    if A.field.char == 0:
        raise ShapeError("strata_scan runs over a prime field")
    p = A.field.p
    basis = np.array(
        [[int(x) for x in A.basis.row(r)] for r in range(10)], dtype=np.int64
    )
    counts, pts = kernels.get().scan_p5(
        basis, wedge.pair_tensor_int(), p, collect_min=collect_min
    )
    histogram = {c: n for c, n in enumerate(counts) if n}
    return StrataReport(p, histogram, {c: list(v) for c, v in pts.items()})
