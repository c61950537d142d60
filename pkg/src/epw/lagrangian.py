"""Lagrangian subspaces of the 20-dimensional symplectic space.

Subspaces are canonicalized to their reduced row-echelon basis; equality
of subspaces is echelon equality.  Sampling follows the graph
construction: over the coordinate Lagrangian spanned by the basis forms
whose subset contains 0, a symmetric 10x10 matrix Q gives the Lagrangian
{u + Q~u}, and symmetry of Q is exactly isotropy of the graph.
"""

from __future__ import annotations

import numpy as np

from . import kernels, wedge
from .errors import (
    BadPrimeError,
    NotLagrangianError,
    SearchFailureError,
    ShapeError,
    TransversalityError,
    ZeroVectorError,
)
from .fields import GF, QQ, field_from_tag
from .linalg import ExactMatrix
from .rng import SplitMix64
from .wedge import DIM, POSITION, SUBSETS, WedgeVector, complement, merge_sign

N3 = len(SUBSETS[3])  # 20


class LagrangianSubspace:
    """10-dimensional sigma-isotropic subspace, held as an RREF row basis."""

    __slots__ = ("basis", "field", "space", "provenance")

    def __init__(self, basis, space="V", provenance=None, check=True):
        if (basis.rows, basis.cols) != (10, N3):
            raise ShapeError("a Lagrangian basis must be 10 x 20")
        canon = basis.row_space_basis()
        if canon.rows != 10:
            raise NotLagrangianError("basis has rank < 10")
        self.basis = canon
        self.field = basis.field
        self.space = space
        self.provenance = dict(provenance or {})
        if check and not is_lagrangian(self.basis):
            raise NotLagrangianError("sigma does not vanish on the span")

    def __eq__(self, other):
        if not isinstance(other, LagrangianSubspace):
            return NotImplemented
        return self.space == other.space and self.basis == other.basis

    def __repr__(self):
        return f"LagrangianSubspace(over {self.field}, space {self.space})"

    def rows_as_wedge(self):
        return [
            WedgeVector(3, self.basis.row(i), self.field, self.space)
            for i in range(10)
        ]

    def contains(self, w):
        stacked = self.basis.stack(ExactMatrix.from_rows([w.coords], self.field))
        return stacked.rank() == 10

    def to_json(self):
        out = {
            "field": self.field.tag(),
            "basis": [
                [self.field.format(x) for x in self.basis.row(i)] for i in range(10)
            ],
        }
        if self.space != "V":
            out["space"] = self.space
        if self.provenance:
            out["provenance"] = self.provenance
        return out

    @classmethod
    def from_json(cls, obj):
        field = field_from_tag(obj["field"])
        rows = [[field.parse(s) for s in row] for row in obj["basis"]]
        return cls(
            ExactMatrix.from_rows(rows, field),
            space=obj.get("space", "V"),
            provenance=obj.get("provenance"),
        )


def is_lagrangian(basis):
    """True iff the rows span a 10-dimensional sigma-isotropic subspace."""
    if (basis.rows, basis.cols) != (10, N3):
        raise ShapeError("expected a 10 x 20 matrix")
    if basis.rank() != 10:
        return False
    gram = wedge.sigma_gram(basis.field)
    product = basis.matmul(gram).matmul(basis.transpose())
    return product.is_zero()


# ---- graph construction ----------------------------------------------------

# subsets containing a given index, used as coordinate Lagrangian bases
def coordinate_positions(index=0, containing=True):
    return [
        i
        for i, s in enumerate(SUBSETS[3])
        if (index in s) == containing
    ]


def coordinate_lagrangian(field, index=0, containing=True):
    rows = []
    z, o = field.zero(), field.one()
    for p in coordinate_positions(index, containing):
        row = [z] * N3
        row[p] = o
        rows.append(row)
    return LagrangianSubspace(ExactMatrix.from_rows(rows, field), check=False)


def graph_lagrangian(Q, field, base_index=0, containing=True, provenance=None):
    """Lagrangian {u + Q~u} over a coordinate Lagrangian base.

    Q is a symmetric 10x10 matrix of raw scalars; Q~ maps the base into
    the complementary coordinate Lagrangian through the sigma-dual basis.
    """
    base = coordinate_positions(base_index, containing)
    rows = []
    z = field.zero()
    for i, p in enumerate(base):
        row = [z] * N3
        row[p] = field.one()
        for j, pj in enumerate(base):
            c = Q[i][j]
            if field.is_zero(c):
                continue
            s = SUBSETS[3][pj]
            sc = complement(s)
            sgn = merge_sign(s, sc)
            target = POSITION[3][sc]
            val = c if sgn > 0 else field.neg(c)
            row[target] = field.add(row[target], val)
        rows.append(row)
    return LagrangianSubspace(
        ExactMatrix.from_rows(rows, field), provenance=provenance, check=False
    )


def _symmetric_from_rng(rng, field):
    Q = [[field.zero()] * 10 for _ in range(10)]
    for i in range(10):
        for j in range(i, 10):
            c = field.random(rng)
            Q[i][j] = c
            Q[j][i] = c
    return Q


def sample_lagrangian(seed, field):
    """Deterministic Lagrangian from (seed, field) via splitmix64."""
    rng = SplitMix64(seed)
    Q = _symmetric_from_rng(rng, field)
    prov = {"seed": seed, "construction": "graph", "field": str(field)}
    return graph_lagrangian(Q, field, provenance=prov)


# ---- duality ----------------------------------------------------------------


def perp(A):
    """Annihilator A-perp in the dual wedge space.

    The duality pairing is det(phi_i(v_j)); in the lex-subset bases its
    matrix is the identity, so the annihilator is the null space of the
    row basis.
    """
    if not isinstance(A, LagrangianSubspace):
        raise ShapeError("perp expects a LagrangianSubspace")
    _, ker = A.basis.rank_kernel()
    rows = ker
    newspace = "Vdual" if A.space == "V" else "V"
    m = ExactMatrix.from_rows(rows, A.field)
    return LagrangianSubspace(m, space=newspace, provenance={"perp_of": "input"})


# ---- transversality ---------------------------------------------------------


def is_transversal(m1, m2):
    return m1.stack(m2).rank() == N3


def find_transversal(obstacles, field=None, seed=0, retries=64):
    """A Lagrangian transversal to every obstacle (10-dim row spaces).

    Seeded retry of graph samples over the twelve coordinate
    decompositions in turn; raises SearchFailureError when the budget is
    exhausted (degenerate obstacles or a too-small field).
    """
    obs = []
    for o in obstacles:
        m = o.basis if isinstance(o, LagrangianSubspace) else o
        if (m.rows, m.cols) != (10, N3):
            raise ShapeError("obstacles must be 10 x 20 row bases")
        obs.append(m)
    if not obs:
        raise ValueError("obstacle list must be nonempty")
    if field is None:
        field = obs[0].field
    rng = SplitMix64(seed ^ 0xC0FFEE)
    bases = [(a, side) for a in range(DIM) for side in (True, False)]
    for attempt in range(retries):
        index, containing = bases[attempt % len(bases)]
        Q = _symmetric_from_rng(rng, field)
        cand = graph_lagrangian(Q, field, base_index=index, containing=containing)
        if all(is_transversal(cand.basis, m) for m in obs):
            cand.provenance.update({"transversal_attempt": attempt, "seed": seed})
            return cand
    raise SearchFailureError(
        f"no transversal Lagrangian within {retries} attempts"
    )


class ChartTrivialization:
    """Transversal Lagrangian pair (L, Ldual) with invertible sigma pairing."""

    __slots__ = ("L", "Ldual", "pairing")

    def __init__(self, L, Ldual):
        L.field.check_same(Ldual.field)
        gram = wedge.sigma_gram(L.field)
        self.L = L
        self.Ldual = Ldual
        self.pairing = L.matmul(gram).matmul(Ldual.transpose())
        if self.pairing.rank() != 10:
            raise TransversalityError("pairing between L and Ldual is singular")


def chart(A, point, seed=0, retries=64):
    """Symplectic trivialization adapted to (A, F at the point).

    Ldual is transversal to both A and the fiber at the point; L is taken
    to be A itself (it is Lagrangian and transversal to Ldual).
    """
    if point.is_zero():
        raise ZeroVectorError("chart needs a nonzero point")
    fib = wedge.fiber_F(point)
    ldual = find_transversal([A.basis, fib], seed=seed, retries=retries)
    return ChartTrivialization(A.basis, ldual.basis)


# ---- certification ----------------------------------------------------------


def gaussian_binomial(n, k, q):
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def projective_point_count(n, q):
    """Points of P^(n-1) over F_q."""
    return (q**n - 1) // (q - 1)


def reduce_basis_mod(A, p):
    """Entrywise reduction of the RREF basis mod p as an int64 array.

    Valid only when every denominator is prime to p (BadPrimeError
    otherwise); the RREF pivots survive, so the reduction has rank 10 and
    spans the reduction of every integer vector of A.
    """
    rows = []
    if A.field.char == 0:
        for i in range(10):
            out = []
            for fr in A.basis.row(i):
                if fr.denominator % p == 0:
                    raise BadPrimeError(f"denominator divisible by {p}")
                out.append(fr.numerator * pow(fr.denominator, -1, p) % p)
            rows.append(out)
    else:
        if A.field.p != p:
            raise BadPrimeError(
                f"subspace lives over F_{A.field.p}, cannot reduce mod {p}"
            )
        rows = [[int(x) for x in A.basis.row(i)] for i in range(10)]
    arr = np.array(rows, dtype=np.int64)
    if kernels.get().rank_mod(arr, p) != 10:
        raise BadPrimeError(f"basis drops rank mod {p}")
    return arr


def reduce_lagrangian_mod(A, p):
    """The reduction of A as a LagrangianSubspace over GF(p), p >= 5."""
    arr = reduce_basis_mod(A, p)
    field = GF(p)
    m = ExactMatrix.from_int_rows([list(map(int, r)) for r in arr], field)
    prov = dict(A.provenance)
    prov["reduced_mod"] = p
    return LagrangianSubspace(m, space=A.space, provenance=prov)


def _nullspace_mod(arr, p):
    """Basis of the right null space mod p (rows of the result)."""
    m = np.array(arr, dtype=np.int64) % p
    rows, cols = m.shape
    pivots = []
    rank = 0
    for col in range(cols):
        piv = None
        for r in range(rank, rows):
            if m[r, col]:
                piv = r
                break
        if piv is None:
            continue
        if piv != rank:
            m[[rank, piv]] = m[[piv, rank]]
        m[rank] = m[rank] * pow(int(m[rank, col]), p - 2, p) % p
        for r in range(rows):
            if r != rank and m[r, col]:
                m[r] = (m[r] - m[r, col] * m[rank]) % p
        pivots.append(col)
        rank += 1
    free = [c for c in range(cols) if c not in pivots]
    out = np.zeros((len(free), cols), dtype=np.int64)
    for k, fc in enumerate(free):
        out[k, fc] = 1
        for r, pc in enumerate(pivots):
            out[k, pc] = (-m[r, fc]) % p
    return out


def lg_certificates(A, grassmann_prime=3, corank_prime=5):
    """Finite-field certificates for the degeneracy structure of A.

    * ``no_decomposable_mod_p``: exhaustive scan of Gr(3,6)(F_p) testing
      membership of each decomposable 3-vector in A mod p through the 10
      annihilating functionals.  When A is rational this certifies that A
      itself contains no nonzero decomposable (a primitive integer
      decomposable would reduce to a nonzero decomposable mod p).
    * ``corank_le2_on_Fp_points``: scan of P^5(F_p) checking
      dim(A meet F_v) <= 2.  This certifies F_p-points only.
    """
    if A.field.char != 0:
        grassmann_prime = corank_prime = A.field.p
    gp, cp = grassmann_prime, corank_prime

    lag = is_lagrangian(A.basis)

    basis_gp = reduce_basis_mod(A, gp)
    annihilator = _nullspace_mod(basis_gp, gp)
    triples = np.array(SUBSETS[3], dtype=np.int64)
    total, hits = kernels.get().scan_gr36(annihilator, gp, triples)
    expected = gaussian_binomial(6, 3, gp)
    if total != expected:
        raise RuntimeError(f"enumerated {total} points, expected {expected}")

    basis_cp = reduce_basis_mod(A, cp)
    counts, _ = kernels.get().scan_p5(basis_cp, wedge.pair_tensor_int(), cp)
    max_corank = max(c for c, n in enumerate(counts) if n)

    return {
        "lagrangian": lag,
        "no_decomposable_mod_p": not hits,
        "corank_le2_on_Fp_points": max_corank <= 2,
        "grassmann_prime": gp,
        "grassmann_points": total,
        "decomposable_witnesses": [list(h) for h in hits[:5]],
        "corank_prime": cp,
        "p5_points": sum(counts),
        "corank_histogram": {str(c): n for c, n in enumerate(counts) if n},
    }
