"""Pointwise geometry of the degeneracy locus: the symmetric-form map psi,
its exact derivative, tangent spaces, projective duality and the local
quadric model at corank-2 points.

Everything is exact.  Derivatives along a line [v0 + t*tau] are read off
first-order jet (dual number) arithmetic instead of finite differences.
"""

from __future__ import annotations

from . import wedge
from .errors import (
    InconsistencyError,
    PreconditionError,
    ShapeError,
    TransversalityError,
    VerificationError,
    ZeroVectorError,
)
from .fields import JetField
from .lagrangian import ChartTrivialization, LagrangianSubspace, perp
from .linalg import ExactMatrix
from .loci import ALL_VARS, corank_at, sextic_equation
from .wedge import DIM, SUBSETS, WedgeVector, fiber_F, sigma_gram

__all__ = [
    "PsiValue",
    "psi_at",
    "dpsi_check",
    "tangent_space",
    "dual_point_check",
    "local_model",
]


def _as_point(A, v):
    if isinstance(v, (list, tuple)):
        v = WedgeVector(1, list(v), A.field, A.space)
    if v.is_zero():
        raise ZeroVectorError("expected a nonzero point")
    return v


def _ldual_matrix(C):
    if isinstance(C, ChartTrivialization):
        return C.Ldual
    if isinstance(C, LagrangianSubspace):
        return C.basis
    return C


class PsiValue:
    """The symmetric bilinear form computed from a fiber graph at a point."""

    __slots__ = ("point", "A", "matrix")

    def __init__(self, point, A, matrix):
        self.point = point
        self.A = A
        self.matrix = matrix

    def kernel_dim(self):
        return 10 - self.matrix.rank()


def _psi_matrix(A, cmat, point, field=None):
    """Graph form of the fiber over the decomposition A + C.

    Returns the 10x10 matrix B[r][s] = sigma(psi(a_r), a_s) over `field`
    (defaults to A's field; pass a JetField to differentiate).  The fiber
    basis rows may be given jets as coordinates via `point` being a list
    of 15 spanning rows; normally `point` is a WedgeVector and the
    spanning rows are built here.
    """
    F = field or A.field
    if isinstance(point, WedgeVector):
        fib_rows = wedge.fiber_rows(point).row_space_basis()
        if fib_rows.rows != 10:
            raise ShapeError("fiber is degenerate")
        fib = fib_rows
        if F is not A.field:
            raise ShapeError("jet evaluation needs explicit fiber rows")
        abasis = A.basis
        cbasis = cmat
    else:
        fib = point  # ExactMatrix (10 x 20) over F
        abasis = A.basis.map_field(F, F.lift)
        cbasis = cmat.map_field(F, F.lift)
    # system columns: 10 fiber rows then 10 C rows
    system = fib.stack(cbasis).transpose()
    try:
        X = system.solve(abasis.transpose())
    except ShapeError as exc:
        raise TransversalityError("C is not transversal to the fiber") from exc
    W = ExactMatrix.from_rows([X.row(r) for r in range(10, 20)], F)
    gram = sigma_gram(A.field)
    if F is not A.field:
        gram = gram.map_field(F, F.lift)
    pairing = cbasis.matmul(gram).matmul(abasis.transpose())
    B = W.transpose().matmul(pairing).scale(F.from_int(-1))
    return B


def psi_at(A, C, point):
    """The symmetric form whose kernel dimension is the corank at the point."""
    point = _as_point(A, point)
    cmat = _ldual_matrix(C)
    A.field.check_same(cmat.field)
    if A.basis.stack(cmat).rank() != 20:
        raise TransversalityError("C is not transversal to A")
    B = _psi_matrix(A, cmat, point)
    if B != B.transpose():
        raise VerificationError("graph form failed to be symmetric")
    val = PsiValue(point, A, B)
    expected = corank_at(A, point)
    if val.kernel_dim() != expected:
        raise VerificationError(
            f"kernel dim {val.kernel_dim()} != corank {expected}"
        )
    return val


def _complement_indices(v0):
    """Pivot index of v0 and the complementary coordinate subspace of V."""
    F = v0.field
    pivot = next((i for i, c in enumerate(v0.coords) if not F.is_zero(c)), None)
    if pivot is None:
        raise ZeroVectorError("zero representative")
    others = [i for i in range(DIM) if i != pivot]
    return pivot, others


def _alpha_from_kernel(v0, kappa, others):
    """Solve v0 ^ alpha = kappa with alpha in the second wedge of the
    coordinate complement; returns alpha's coefficients on the pair basis."""
    F = v0.field
    pairs = [(a, b) for (a, b) in SUBSETS[2] if a in others and b in others]
    cols = []
    for (a, b) in pairs:
        cols.append(v0.wedge(WedgeVector.basis((a, b), F, v0.space)).coords)
    M = ExactMatrix.from_rows(cols, F).transpose()  # 20 x 10
    rhs = ExactMatrix.from_rows([kappa.coords], F).transpose()
    aug = M.transpose().stack(rhs.transpose()).transpose()  # 20 x 11
    R, pivots = aug.rref()
    if 10 in pivots:
        raise InconsistencyError("kernel vector is not divisible by v0")
    sol = [F.zero()] * 10
    for r, pc in enumerate(pivots):
        sol[pc] = R.at(r, 10)
    alpha2 = WedgeVector.zero(2, F, v0.space)
    for k, (a, b) in enumerate(pairs):
        if not F.is_zero(sol[k]):
            pos = SUBSETS[2].index((a, b))
            alpha2.coords[pos] = sol[k]
    return alpha2, pairs, sol


def dpsi_check(A, C, v0, tau):
    """Exact check of the derivative formula along t -> [v0 + t*tau].

    The psi matrix is computed over first-order jets, its t-derivative is
    restricted to the kernel at t = 0, and compared entrywise with
    -vol(v0 ^ tau ^ alpha_a ^ alpha_b) over a kernel basis {v0 ^ alpha_a}.
    """
    v0 = _as_point(A, v0)
    tau = tau if isinstance(tau, WedgeVector) else WedgeVector(
        1, list(tau), A.field, A.space
    )
    F = A.field
    cmat = _ldual_matrix(C)
    if corank_at(A, v0) < 1:
        raise PreconditionError("derivative formula needs corank >= 1")
    pivot, others = _complement_indices(v0)
    if not F.is_zero(tau.coords[pivot]):
        raise PreconditionError("tau must lie in the fixed complement of v0")
    J = JetField(F)
    pairs = [(a, b) for (a, b) in SUBSETS[2] if a in others and b in others]
    rows = []
    for (a, b) in pairs:
        pairbasis = WedgeVector.basis((a, b), F, v0.space)
        base = v0.wedge(pairbasis).coords
        deriv = tau.wedge(pairbasis).coords
        rows.append([(x, y) for x, y in zip(base, deriv)])
    fib_jets = ExactMatrix.from_rows(rows, J)
    B = _psi_matrix(A, cmat, fib_jets, field=J)
    B0 = B.map_field(F, lambda j: j[0])
    B1 = B.map_field(F, lambda j: j[1])
    _, kernel = B0.rank_kernel()
    if not kernel:
        raise PreconditionError("psi is invertible at v0")
    K = ExactMatrix.from_rows(kernel, F)  # m x 10, coords in the A-row basis
    R = K.matmul(B1).matmul(K.transpose())
    arows = A.rows_as_wedge()
    alphas = []
    for kvec in kernel:
        kappa = WedgeVector.zero(3, F, A.space)
        for c, a in zip(kvec, arows):
            if not F.is_zero(c):
                kappa = kappa.add(a.scale(c))
        alpha2, _, _ = _alpha_from_kernel(v0, kappa, others)
        alphas.append(alpha2)
    m = len(alphas)
    vt = v0.wedge(tau)
    expected = ExactMatrix.zeros(m, m, F)
    for a in range(m):
        for b in range(m):
            val = F.neg(vt.wedge(alphas[a]).wedge(alphas[b]).vol())
            expected.data[a * m + b] = val
    return R == expected


def tangent_space(A, point, sextic=None):
    """The 5-dimensional subspace projectivizing to the tangent hyperplane
    at a corank-1 point: the span of v0 and the support of alpha0.

    Also asserts that the gradient hyperplane of the sextic agrees.
    """
    point = _as_point(A, point)
    F = A.field
    if corank_at(A, point) != 1:
        raise PreconditionError("tangent_space needs a corank-1 point")
    pivot, others = _complement_indices(point)
    v0 = point.scale(F.inv(point.coords[pivot]))
    inter = A.basis.intersection(fiber_F(v0))
    kappa = WedgeVector(3, inter.row(0), F, A.space)
    alpha2, pairs, sol = _alpha_from_kernel(v0, kappa, others)
    # support of alpha0 as the column space of its antisymmetric matrix
    S = ExactMatrix.zeros(5, 5, F)
    for k, (a, b) in enumerate(pairs):
        ia, ib = others.index(a), others.index(b)
        S.data[ia * 5 + ib] = sol[k]
        S.data[ib * 5 + ia] = F.neg(sol[k])
    if S.rank() != 4:
        raise InconsistencyError(
            "kernel 2-form is decomposable; the point is not a smooth point"
        )
    jrows = []
    for r in range(5):
        col = [S.at(c, r) for c in range(5)]
        vec = [F.zero()] * DIM
        for idx, c in zip(others, col):
            vec[idx] = c
        jrows.append(vec)
    e0 = ExactMatrix.from_rows([v0.coords] + jrows, F).row_space_basis()
    if e0.rows != 5:
        raise InconsistencyError("tangent subspace has unexpected dimension")
    if sextic is None:
        sextic = sextic_equation(A)
    grad = sextic.gradient(v0.coords)
    if all(F.is_zero(g) for g in grad):
        raise InconsistencyError("gradient vanishes at a corank-1 point")
    hyper = ExactMatrix.from_rows([grad], F)
    _, ker = hyper.rank_kernel()
    kermat = ExactMatrix.from_rows(ker, F)
    if not kermat.row_space_equals(e0):
        raise VerificationError("gradient hyperplane differs from P(E0)")
    return e0


def dual_point_check(A, point, sextic=None, dual=None, dual_sextic=None):
    """The tangent hyperplane at a smooth point is a point of the dual
    locus of the annihilator subspace.

    Returns True when dim(perp(A) meet F_phi0) >= 1 and (when available)
    the dual sextic vanishes at phi0.
    """
    e0 = tangent_space(A, point, sextic=sextic)
    F = A.field
    _, ker = e0.rank_kernel()
    if len(ker) != 1:
        raise InconsistencyError("tangent hyperplane has no unique annihilator")
    dual_space = "Vdual" if A.space == "V" else "V"
    phi0 = WedgeVector(1, ker[0], F, dual_space)
    if dual is None:
        dual = perp(A)
    if corank_at(dual, phi0) < 1:
        return False
    if dual_sextic is None:
        dual_sextic = sextic_equation(dual)
    return F.is_zero(dual_sextic.evaluate(phi0.coords))


def local_model(A, point, sextic=None):
    """Order-2 model of the locus at a corank-2 point.

    Returns the three linear forms tau -> -vol(v0^tau^alpha_a^alpha_b),
    their independence, the rank of the sextic's Hessian at the point and
    whether its quadratic jet is proportional to x*z - y^2.
    """
    point = _as_point(A, point)
    F = A.field
    if F.char == 2:
        raise PreconditionError("local model needs characteristic != 2")
    if corank_at(A, point) != 2:
        raise PreconditionError("local_model needs a corank-2 point")
    pivot, others = _complement_indices(point)
    v0 = point.scale(F.inv(point.coords[pivot]))
    inter = A.basis.intersection(fiber_F(v0))
    alphas = []
    for r in range(2):
        kappa = WedgeVector(3, inter.row(r), F, A.space)
        alpha2, _, _ = _alpha_from_kernel(v0, kappa, others)
        alphas.append(alpha2)
    # linear forms on the complement: x, y, z for (1,1), (1,2), (2,2)
    forms = []
    for (a, b) in ((0, 0), (0, 1), (1, 1)):
        row = []
        for c in others:
            tau = WedgeVector.basis((c,), F, A.space)
            row.append(
                F.neg(v0.wedge(tau).wedge(alphas[a]).wedge(alphas[b]).vol())
            )
        forms.append(row)
    formmat = ExactMatrix.from_rows(forms, F)
    independent = formmat.rank() == 3

    if sextic is None:
        sextic = sextic_equation(A)
    grad = sextic.gradient(v0.coords)
    gradient_zero = all(F.is_zero(g) for g in grad)

    aff = sextic.poly.substitute(f"x{pivot}", F.one())
    shift_point = [F.zero()] * DIM
    for j in range(DIM):
        if j != pivot:
            shift_point[j] = v0.coords[j]
    jet = aff.shift_truncated(shift_point, 2)
    const = jet.coefficient((0,) * DIM)
    if not F.is_zero(const):
        raise InconsistencyError("point is not on the locus")
    half = F.inv(F.from_int(2))
    G = ExactMatrix.zeros(5, 5, F)
    for a in range(5):
        ea = [0] * DIM
        ea[others[a]] = 2
        G.data[a * 5 + a] = jet.coefficient(tuple(ea))
        for b in range(a + 1, 5):
            eab = [0] * DIM
            eab[others[a]] = 1
            eab[others[b]] = 1
            c = F.mul(jet.coefficient(tuple(eab)), half)
            G.data[a * 5 + b] = c
            G.data[b * 5 + a] = c
    hessian_rank = G.rank()

    x, y, z = forms
    M = ExactMatrix.zeros(5, 5, F)
    for a in range(5):
        for b in range(5):
            v = F.sub(
                F.mul(F.add(F.mul(x[a], z[b]), F.mul(x[b], z[a])), half),
                F.mul(y[a], y[b]),
            )
            M.data[a * 5 + b] = v
    quadric_match = _proportional_matrices(G, M)
    return {
        "linear_forms": forms,
        "independent": independent,
        "hessian_rank": hessian_rank,
        "quadric_match": quadric_match,
        "gradient_zero": gradient_zero,
    }


def _proportional_matrices(G, M):
    F = G.field
    gz = G.is_zero()
    mz = M.is_zero()
    if gz or mz:
        return gz and mz
    idx = next(i for i, v in enumerate(G.data) if not F.is_zero(v))
    a, b = G.data[idx], M.data[idx]
    if F.is_zero(b):
        return False
    return G.scale(b) == M.scale(a)
