"""Dense exact matrices over a coefficient field.

Plain Gaussian elimination; every entry is an exact scalar of the
matrix's field, so there is no pivot-growth concern beyond speed.  The
same code runs over Q, F_p and the jet ring (where pivoting is restricted
to unit entries).
"""

from __future__ import annotations

from .errors import ShapeError

__all__ = ["ExactMatrix"]


class ExactMatrix:
    __slots__ = ("rows", "cols", "field", "data")

    def __init__(self, rows, cols, field, data):
        if len(data) != rows * cols:
            raise ShapeError(f"expected {rows * cols} entries, got {len(data)}")
        self.rows = rows
        self.cols = cols
        self.field = field
        self.data = data  # row-major list of raw scalars

    # ---- construction -------------------------------------------------
    @classmethod
    def from_rows(cls, rowlist, field):
        rows = len(rowlist)
        cols = len(rowlist[0]) if rows else 0
        data = []
        for r in rowlist:
            if len(r) != cols:
                raise ShapeError("ragged rows")
            data.extend(r)
        return cls(rows, cols, field, data)

    @classmethod
    def from_int_rows(cls, rowlist, field):
        return cls.from_rows(
            [[field.from_int(x) for x in row] for row in rowlist], field
        )

    @classmethod
    def identity(cls, n, field):
        z, o = field.zero(), field.one()
        data = [o if i == j else z for i in range(n) for j in range(n)]
        return cls(n, n, field, data)

    @classmethod
    def zeros(cls, rows, cols, field):
        z = field.zero()
        return cls(rows, cols, field, [z] * (rows * cols))

    @classmethod
    def random(cls, rows, cols, field, rng):
        return cls(rows, cols, field, [field.random(rng) for _ in range(rows * cols)])

    # ---- access --------------------------------------------------------
    def at(self, i, j):
        return self.data[i * self.cols + j]

    def row(self, i):
        return self.data[i * self.cols : (i + 1) * self.cols]

    def row_lists(self):
        return [self.row(i) for i in range(self.rows)]

    def copy(self):
        return ExactMatrix(self.rows, self.cols, self.field, list(self.data))

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            return False
        self.field.check_same(other.field)
        eq = self.field.eq
        return all(eq(a, b) for a, b in zip(self.data, other.data))

    def __repr__(self):
        return f"ExactMatrix({self.rows}x{self.cols} over {self.field})"

    def is_zero(self):
        z = self.field.is_zero
        return all(z(a) for a in self.data)

    # ---- basic algebra --------------------------------------------------
    def transpose(self):
        d = [self.at(i, j) for j in range(self.cols) for i in range(self.rows)]
        return ExactMatrix(self.cols, self.rows, self.field, d)

    def matmul(self, other):
        self.field.check_same(other.field)
        if self.cols != other.rows:
            raise ShapeError("inner dimensions disagree")
        F = self.field
        out = []
        ocols = other.cols
        for i in range(self.rows):
            ri = self.row(i)
            for j in range(ocols):
                acc = F.zero()
                for k in range(self.cols):
                    a = ri[k]
                    if not F.is_zero(a):
                        acc = F.add(acc, F.mul(a, other.data[k * ocols + j]))
                out.append(acc)
        return ExactMatrix(self.rows, ocols, F, out)

    def scale(self, c):
        F = self.field
        return ExactMatrix(self.rows, self.cols, F, [F.mul(c, a) for a in self.data])

    def add(self, other):
        self.field.check_same(other.field)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeError("shape mismatch")
        F = self.field
        return ExactMatrix(
            self.rows, self.cols, F,
            [F.add(a, b) for a, b in zip(self.data, other.data)],
        )

    def sub(self, other):
        return self.add(other.scale(self.field.from_int(-1)))

    def stack(self, other):
        self.field.check_same(other.field)
        if self.cols != other.cols:
            raise ShapeError("column count mismatch")
        return ExactMatrix(
            self.rows + other.rows, self.cols, self.field, self.data + other.data
        )

    def apply_vector(self, vec):
        """Matrix times column vector (vec = list of raw scalars)."""
        if len(vec) != self.cols:
            raise ShapeError("vector length mismatch")
        F = self.field
        out = []
        for i in range(self.rows):
            acc = F.zero()
            ri = self.row(i)
            for k, v in enumerate(vec):
                if not F.is_zero(v):
                    acc = F.add(acc, F.mul(ri[k], v))
            out.append(acc)
        return out

    # ---- elimination ----------------------------------------------------
    def _eliminated(self):
        """Row-reduce a copy; returns (rows-as-lists, pivot column list)."""
        F = self.field
        m = [list(self.row(i)) for i in range(self.rows)]
        pivots = []
        prow = 0
        for col in range(self.cols):
            pr = None
            for r in range(prow, self.rows):
                if F.is_unit(m[r][col]):
                    pr = r
                    break
            if pr is None:
                continue
            m[prow], m[pr] = m[pr], m[prow]
            inv = F.inv(m[prow][col])
            m[prow] = [F.mul(inv, x) for x in m[prow]]
            for r in range(self.rows):
                if r != prow and not F.is_zero(m[r][col]):
                    c = m[r][col]
                    m[r] = [F.sub(a, F.mul(c, b)) for a, b in zip(m[r], m[prow])]
            pivots.append(col)
            prow += 1
            if prow == self.rows:
                break
        return m, pivots

    def rref(self):
        """Reduced row-echelon form and its pivot columns."""
        m, pivots = self._eliminated()
        return ExactMatrix.from_rows(m, self.field), pivots

    def rank(self):
        return len(self._eliminated()[1])

    def rank_kernel(self):
        """Exact rank and a basis of the right null space.

        The kernel basis is the standard one read off the RREF: one vector
        per free column, with free coordinates 0/1.  rank + len(kernel)
        equals the number of columns.
        """
        F = self.field
        m, pivots = self._eliminated()
        pivset = set(pivots)
        free = [c for c in range(self.cols) if c not in pivset]
        basis = []
        for fc in free:
            v = [F.zero()] * self.cols
            v[fc] = F.one()
            for r, pc in enumerate(pivots):
                v[pc] = F.neg(m[r][fc])
            basis.append(v)
        return len(pivots), basis

    def solve(self, rhs):
        """Solve self * x = rhs for square invertible self.

        `rhs` is an ExactMatrix whose columns are the right-hand sides.
        """
        if self.rows != self.cols:
            raise ShapeError("solve requires a square matrix")
        self.field.check_same(rhs.field)
        if rhs.rows != self.rows:
            raise ShapeError("rhs row count mismatch")
        F = self.field
        n = self.rows
        w = rhs.cols
        m = [list(self.row(i)) + list(rhs.row(i)) for i in range(n)]
        for col in range(n):
            pr = None
            for r in range(col, n):
                if F.is_unit(m[r][col]):
                    pr = r
                    break
            if pr is None:
                raise ShapeError("matrix is singular")
            m[col], m[pr] = m[pr], m[col]
            inv = F.inv(m[col][col])
            m[col] = [F.mul(inv, x) for x in m[col]]
            for r in range(n):
                if r != col and not F.is_zero(m[r][col]):
                    c = m[r][col]
                    m[r] = [F.sub(a, F.mul(c, b)) for a, b in zip(m[r], m[col])]
        return ExactMatrix.from_rows([row[n : n + w] for row in m], F)

    def det(self):
        """Scalar determinant by elimination (square matrices)."""
        if self.rows != self.cols:
            raise ShapeError("determinant of a non-square matrix")
        F = self.field
        n = self.rows
        m = [list(self.row(i)) for i in range(n)]
        det = F.one()
        for col in range(n):
            pr = None
            for r in range(col, n):
                if F.is_unit(m[r][col]):
                    pr = r
                    break
            if pr is None:
                return F.zero()
            if pr != col:
                m[col], m[pr] = m[pr], m[col]
                det = F.neg(det)
            piv = m[col][col]
            det = F.mul(det, piv)
            inv = F.inv(piv)
            for r in range(col + 1, n):
                if not F.is_zero(m[r][col]):
                    c = F.mul(m[r][col], inv)
                    m[r] = [F.sub(a, F.mul(c, b)) for a, b in zip(m[r], m[col])]
        return det

    # ---- subspace utilities (rows span the subspace) ---------------------
    def row_space_equals(self, other):
        a, _ = self.rref()
        b, _ = other.rref()
        ar = [r for r in a.row_lists() if not all(a.field.is_zero(x) for x in r)]
        br = [r for r in b.row_lists() if not all(b.field.is_zero(x) for x in r)]
        if len(ar) != len(br):
            return False
        eq = self.field.eq
        return all(eq(x, y) for ra, rb in zip(ar, br) for x, y in zip(ra, rb))

    def row_space_basis(self):
        """RREF rows with zero rows dropped (canonical basis)."""
        R, pivots = self.rref()
        return ExactMatrix.from_rows(
            [R.row(i) for i in range(len(pivots))], self.field
        ) if pivots else ExactMatrix.zeros(0, self.cols, self.field)

    def intersection(self, other):
        """Basis (rows) of the intersection of the two row spaces."""
        self.field.check_same(other.field)
        if self.cols != other.cols:
            raise ShapeError("ambient dimensions differ")
        F = self.field
        stacked = self.stack(other).transpose()  # cols: rows of self then other
        _, ker = stacked.rank_kernel()
        out = []
        for v in ker:
            # v = (c, d) with c . self + d . other = 0, so c . self = -d . other
            vec = [F.zero()] * self.cols
            for r in range(self.rows):
                if not F.is_zero(v[r]):
                    row = self.row(r)
                    vec = [F.add(a, F.mul(v[r], b)) for a, b in zip(vec, row)]
            out.append(vec)
        if not out:
            return ExactMatrix.zeros(0, self.cols, F)
        return ExactMatrix.from_rows(out, F).row_space_basis()

    # ---- conversions -----------------------------------------------------
    def map_field(self, newfield, convert):
        return ExactMatrix(
            self.rows, self.cols, newfield, [convert(a) for a in self.data]
        )

    def to_int_rows(self):
        """Integer row lists after clearing denominators row by row (Q only)."""
        from math import gcd, lcm

        out = []
        for i in range(self.rows):
            row = self.row(i)
            den = lcm(*[f.denominator for f in row]) if row else 1
            ints = [int(f * den) for f in row]
            g = 0
            for x in ints:
                g = gcd(g, x)
            if g > 1:
                ints = [x // g for x in ints]
            out.append(ints)
        return out
