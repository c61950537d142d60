"""Exterior algebra of a 6-dimensional space and its symplectic structure.

Basis conventions (fixed once, inherited everywhere):

* The k-th exterior power of V = field^6 has basis indexed by the
  lex-ordered strictly increasing k-subsets of {0,...,5}; for k = 3 the
  twenty 3-subsets are ranked 012 -> 0, 013 -> 1, 014 -> 2, 015 -> 3,
  023 -> 4, ..., 345 -> 19.
* Signs are permutation parities of the concatenation being sorted.
* vol is normalized by vol(e0^...^e5) = 1, and the same normalization is
  used on the dual side (vol_dual(e0*^...^e5*) = 1).

sigma(a, b) = vol(a ^ b) is the symplectic form on the third exterior
power; the fibers F_v = v ^ (second exterior power) are its canonical
Lagrangian family.
"""

from __future__ import annotations

from itertools import combinations

from .errors import (
    DegreeOverflowError,
    ShapeError,
    SpaceMismatchError,
    ZeroVectorError,
)
from .fields import QQ
from .linalg import ExactMatrix

DIM = 6

SUBSETS = {k: list(combinations(range(DIM), k)) for k in range(DIM + 1)}
POSITION = {k: {s: i for i, s in enumerate(SUBSETS[k])} for k in range(DIM + 1)}


def merge_sign(a, b):
    """Sign of sorting the concatenation of two disjoint sorted tuples.

    Returns 0 if they intersect.
    """
    if set(a) & set(b):
        return 0
    inv = sum(1 for x in a for y in b if y < x)
    return -1 if inv % 2 else 1


def complement(subset):
    return tuple(i for i in range(DIM) if i not in subset)


class WedgeVector:
    """Element of the k-th exterior power of V or of its dual."""

    __slots__ = ("degree", "field", "space", "coords")

    def __init__(self, degree, coords, field, space="V"):
        if not 1 <= degree <= DIM:
            raise ShapeError(f"degree {degree} out of range")
        if space not in ("V", "Vdual"):
            raise ShapeError(f"unknown space tag {space!r}")
        n = len(SUBSETS[degree])
        if len(coords) != n:
            raise ShapeError(f"degree {degree} needs {n} coordinates")
        self.degree = degree
        self.coords = list(coords)
        self.field = field
        self.space = space

    @classmethod
    def zero(cls, degree, field, space="V"):
        return cls(degree, [field.zero()] * len(SUBSETS[degree]), field, space)

    @classmethod
    def basis(cls, subset, field, space="V"):
        subset = tuple(sorted(subset))
        v = cls.zero(len(subset), field, space)
        v.coords[POSITION[len(subset)][subset]] = field.one()
        return v

    @classmethod
    def from_vector(cls, coords, field, space="V"):
        return cls(1, coords, field, space)

    def is_zero(self):
        return all(self.field.is_zero(c) for c in self.coords)

    def _check(self, other):
        self.field.check_same(other.field)
        if self.space != other.space:
            raise SpaceMismatchError("cannot mix V with its dual")

    def add(self, other):
        self._check(other)
        if self.degree != other.degree:
            raise ShapeError("degrees differ")
        F = self.field
        return WedgeVector(
            self.degree,
            [F.add(a, b) for a, b in zip(self.coords, other.coords)],
            F,
            self.space,
        )

    def scale(self, c):
        F = self.field
        return WedgeVector(
            self.degree, [F.mul(c, a) for a in self.coords], F, self.space
        )

    def wedge(self, other):
        self._check(other)
        k, l = self.degree, other.degree
        if k + l > DIM:
            raise DegreeOverflowError(f"wedge of degrees {k} and {l} exceeds {DIM}")
        F = self.field
        out = WedgeVector.zero(k + l, F, self.space)
        pos = POSITION[k + l]
        for i, a in enumerate(self.coords):
            if F.is_zero(a):
                continue
            sa = SUBSETS[k][i]
            for j, b in enumerate(other.coords):
                if F.is_zero(b):
                    continue
                sb = SUBSETS[l][j]
                sgn = merge_sign(sa, sb)
                if sgn == 0:
                    continue
                t = pos[tuple(sorted(sa + sb))]
                term = F.mul(a, b)
                if sgn < 0:
                    term = F.neg(term)
                out.coords[t] = F.add(out.coords[t], term)
        return out

    def vol(self):
        """Coefficient of the top form (degree 6 only)."""
        if self.degree != DIM:
            raise ShapeError("vol needs a top-degree form")
        return self.coords[0]

    def to_json(self):
        return {
            "degree": self.degree,
            "space": self.space,
            "coords": [self.field.format(c) for c in self.coords],
        }

    @classmethod
    def from_json(cls, obj, field):
        return cls(
            int(obj["degree"]),
            [field.parse(s) for s in obj["coords"]],
            field,
            obj.get("space", "V"),
        )

    def __repr__(self):
        bits = []
        for i, c in enumerate(self.coords):
            if not self.field.is_zero(c):
                name = "e" + "".join(str(x) for x in SUBSETS[self.degree][i])
                bits.append(f"{self.field.format(c)}*{name}")
        return " + ".join(bits) if bits else "0"


def sigma(a, b):
    """The symplectic form vol(a ^ b) on degree-3 vectors."""
    if a.degree != 3 or b.degree != 3:
        raise ShapeError("sigma is defined on degree-3 vectors")
    return a.wedge(b).vol()


def sigma_gram(field):
    """20x20 Gram matrix of sigma in the lex-subset basis."""
    n = len(SUBSETS[3])
    m = ExactMatrix.zeros(n, n, field)
    for i, s in enumerate(SUBSETS[3]):
        t = complement(s)
        j = POSITION[3][t]
        sgn = merge_sign(s, t)
        m.data[i * n + j] = field.from_int(sgn)
    return m


# (pair index, basis position, vector index) -> sign tables for building
# the fibers F_v without polynomial arithmetic: row k of the fiber matrix
# is v ^ e_a ^ e_b for the k-th 2-subset (a, b).
def pair_tensor_int():
    import numpy as np

    t = np.zeros((15, 20, DIM), dtype=np.int64)
    for k, (a, b) in enumerate(SUBSETS[2]):
        for l in range(DIM):
            sgn = merge_sign((l,), (a, b))
            if sgn:
                t[k, POSITION[3][tuple(sorted((l, a, b)))], l] = sgn
    return t


def fiber_rows(v):
    """The 15 spanning rows v ^ e_a ^ e_b of F_[v] (may be dependent)."""
    F = v.field
    rows = []
    for (a, b) in SUBSETS[2]:
        w = v.wedge(WedgeVector.basis((a, b), F, v.space))
        rows.append(w.coords)
    return ExactMatrix.from_rows(rows, F)


def fiber_F(v):
    """Canonical (RREF) 10x20 basis of F_[v] = {v ^ beta}."""
    if v.degree != 1:
        raise ShapeError("fiber is attached to a degree-1 vector")
    if v.is_zero():
        raise ZeroVectorError("fiber of the zero vector")
    basis = fiber_rows(v).row_space_basis()
    if basis.rows != 10:
        raise ShapeError(f"fiber has rank {basis.rows}, expected 10")
    return basis


def is_decomposable_3vector(a):
    """True iff a = v0 ^ v1 ^ v2 for independent vectors v_i.

    Decided by the rank of v -> v ^ a: the annihilator {v : v ^ a = 0}
    has dimension 3 exactly for nonzero decomposables.
    """
    if a.degree != 3:
        raise ShapeError("expected a degree-3 vector")
    if a.is_zero():
        raise ZeroVectorError("the zero vector is not classified")
    F = a.field
    rows = []
    for l in range(DIM):
        w = WedgeVector.basis((l,), F, a.space).wedge(a)
        rows.append(w.coords)
    m = ExactMatrix.from_rows(rows, F)
    return m.rows - m.rank() == 3


def symplectic_uniqueness(sample_lines, field=QQ):
    """Dimension of the space of antisymmetric forms vanishing on all F_v.

    Sets up the linear system on the 190 coordinates tau(e_I, e_J), I < J,
    with one constraint tau(a, b) = 0 per unordered pair of basis rows of
    each sampled fiber.  Returns (kernel_dim, generator) where generator
    is a 20x20 antisymmetric ExactMatrix when the kernel is a line, else
    None.
    """
    if not sample_lines:
        raise ValueError("sample_lines must be nonempty")
    n3 = len(SUBSETS[3])
    unknowns = list(combinations(range(n3), 2))
    uidx = {p: i for i, p in enumerate(unknowns)}
    rows = []
    for v in sample_lines:
        fb = fiber_F(v)
        base = fb.row_lists()
        F = fb.field
        field.check_same(F)
        for r in range(len(base)):
            for s in range(r + 1, len(base)):
                br, bs = base[r], base[s]
                row = [field.zero()] * len(unknowns)
                for i in range(n3):
                    if field.is_zero(br[i]) and field.is_zero(bs[i]):
                        continue
                    for j in range(i + 1, n3):
                        c = field.sub(
                            field.mul(br[i], bs[j]), field.mul(br[j], bs[i])
                        )
                        if not field.is_zero(c):
                            row[uidx[(i, j)]] = field.add(row[uidx[(i, j)]], c)
                rows.append(row)
    system = ExactMatrix.from_rows(rows, field)
    dim, kernel = system.rank_kernel()
    kdim = len(kernel)
    generator = None
    if kdim == 1:
        g = ExactMatrix.zeros(n3, n3, field)
        vec = kernel[0]
        for (i, j), k in uidx.items():
            g.data[i * n3 + j] = vec[k]
            g.data[j * n3 + i] = field.neg(vec[k])
        generator = g
    return kdim, generator
