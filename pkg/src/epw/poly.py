"""Sparse multivariate polynomials and determinants of linear-form matrices.

Terms are held in a dict keyed by exponent tuples; the canonical order for
iteration and serialization is graded lex, descending (higher total degree
first, then lex on the exponent tuple with the declared variable order).
The zero polynomial has degree -1 by convention.

`det_linear_matrix` expands the determinant of a square matrix whose
entries have total degree <= 1 by dynamic programming over column subsets
(memoized Laplace expansion), so at most n * 2^n polynomial multiply-adds.
Over a prime field the inner loop is delegated to the compiled/vectorized
kernel backend.
"""

from __future__ import annotations

from .errors import (
    FieldMismatchError,
    InternalInvariantError,
    RemainderError,
    ShapeError,
)
from . import kernels

__all__ = ["MultiPoly", "det_linear_matrix", "minors_of_size"]


def _grlex_key(exps):
    return (sum(exps), exps)


class MultiPoly:
    __slots__ = ("vars", "field", "terms")

    def __init__(self, vars, field, terms=None):
        self.vars = tuple(vars)
        self.field = field
        self.terms = {}
        if terms:
            for e, c in terms.items():
                if not field.is_zero(c):
                    self.terms[tuple(e)] = c

    # ---- constructors ----------------------------------------------------
    @classmethod
    def zero(cls, vars, field):
        return cls(vars, field)

    @classmethod
    def constant(cls, c, vars, field):
        p = cls(vars, field)
        if not field.is_zero(c):
            p.terms[(0,) * len(p.vars)] = c
        return p

    @classmethod
    def variable(cls, name, vars, field):
        p = cls(vars, field)
        e = [0] * len(p.vars)
        e[p.vars.index(name)] = 1
        p.terms[tuple(e)] = field.one()
        return p

    @classmethod
    def affine(cls, const, lin, vars, field):
        """const + sum lin[i] * vars[i] from raw scalars."""
        p = cls(vars, field)
        if not field.is_zero(const):
            p.terms[(0,) * len(p.vars)] = const
        for i, c in enumerate(lin):
            if not field.is_zero(c):
                e = [0] * len(p.vars)
                e[i] = 1
                p.terms[tuple(e)] = c
        return p

    # ---- inspection --------------------------------------------------------
    def is_zero(self):
        return not self.terms

    def degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self):
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def sorted_terms(self):
        """Terms in canonical graded-lex descending order."""
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def leading(self):
        """(exponent, coefficient) of the graded-lex leading term."""
        if not self.terms:
            return None
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    def num_terms(self):
        return len(self.terms)

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), self.field.zero())

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        if self.vars != other.vars or self.field != other.field:
            return False
        if set(self.terms) != set(other.terms):
            return False
        eq = self.field.eq
        return all(eq(c, other.terms[e]) for e, c in self.terms.items())

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for e, c in self.sorted_terms()[:8]:
            mono = "*".join(
                f"{v}^{k}" if k > 1 else v for v, k in zip(self.vars, e) if k
            )
            cs = self.field.format(c)
            bits.append(f"{cs}*{mono}" if mono else cs)
        s = " + ".join(bits)
        if len(self.terms) > 8:
            s += f" + ... ({len(self.terms)} terms)"
        return s

    def _check_compat(self, other):
        if self.vars != other.vars:
            raise FieldMismatchError(f"variable sets differ: {self.vars} vs {other.vars}")
        self.field.check_same(other.field)

    # ---- arithmetic -------------------------------------------------------
    def add(self, other):
        self._check_compat(other)
        F = self.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = F.add(out.get(e, F.zero()), c)
            if F.is_zero(s):
                out.pop(e, None)
            else:
                out[e] = s
        p = MultiPoly(self.vars, F)
        p.terms = out
        return p

    def neg(self):
        F = self.field
        p = MultiPoly(self.vars, F)
        p.terms = {e: F.neg(c) for e, c in self.terms.items()}
        return p

    def sub(self, other):
        return self.add(other.neg())

    def scalar_mul(self, c):
        F = self.field
        p = MultiPoly(self.vars, F)
        if F.is_zero(c):
            return p
        p.terms = {e: F.mul(c, v) for e, v in self.terms.items()}
        return p

    def mul(self, other):
        self._check_compat(other)
        F = self.field
        out = {}
        zero = F.zero()
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = F.add(out.get(e, zero), F.mul(c1, c2))
                if F.is_zero(s):
                    out.pop(e, None)
                else:
                    out[e] = s
        p = MultiPoly(self.vars, F)
        p.terms = out
        return p

    def pow(self, n):
        p = MultiPoly.constant(self.field.one(), self.vars, self.field)
        for _ in range(n):
            p = p.mul(self)
        return p

    def evaluate(self, point):
        """Value at a point given as a list of raw scalars."""
        if len(point) != len(self.vars):
            raise ShapeError("point length mismatch")
        F = self.field
        acc = F.zero()
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                for _ in range(k):
                    v = F.mul(v, x)
            acc = F.add(acc, v)
        return acc

    def substitute(self, name, value):
        """Replace one variable by a scalar; the variable stays declared."""
        idx = self.vars.index(name)
        F = self.field
        out = {}
        zero = F.zero()
        for e, c in self.terms.items():
            v = c
            for _ in range(e[idx]):
                v = F.mul(v, value)
            if F.is_zero(v):
                continue
            ne = list(e)
            ne[idx] = 0
            ne = tuple(ne)
            s = F.add(out.get(ne, zero), v)
            if F.is_zero(s):
                out.pop(ne, None)
            else:
                out[ne] = s
        p = MultiPoly(self.vars, F)
        p.terms = out
        return p

    def derivative(self, name):
        idx = self.vars.index(name)
        F = self.field
        out = {}
        for e, c in self.terms.items():
            k = e[idx]
            if k == 0:
                continue
            ne = list(e)
            ne[idx] = k - 1
            v = F.mul(c, F.from_int(k))
            if not F.is_zero(v):
                out[tuple(ne)] = v
        p = MultiPoly(self.vars, F)
        p.terms = out
        return p

    def exact_divide(self, divisor):
        """Quotient self / divisor; raises RemainderError if not exact."""
        self._check_compat(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        F = self.field
        rem = MultiPoly(self.vars, F)
        rem.terms = dict(self.terms)
        quo = MultiPoly(self.vars, F)
        dlead_e, dlead_c = divisor.leading()
        dlead_inv = F.inv(dlead_c)
        while rem.terms:
            e, c = rem.leading()
            qe = tuple(a - b for a, b in zip(e, dlead_e))
            if any(k < 0 for k in qe):
                raise RemainderError(
                    f"division leaves a remainder of degree {rem.degree()}",
                    rem.degree(),
                )
            qc = F.mul(c, dlead_inv)
            mono = MultiPoly(self.vars, F)
            mono.terms = {qe: qc}
            quo = quo.add(mono)
            rem = rem.sub(mono.mul(divisor))
        return quo

    def homogenize(self, target_degree, name):
        """Pad every term with `name` so all terms reach target_degree."""
        idx = self.vars.index(name)
        F = self.field
        out = {}
        for e, c in self.terms.items():
            d = sum(e)
            if d > target_degree:
                raise ShapeError(f"term of degree {d} exceeds target {target_degree}")
            if e[idx] != 0:
                raise ShapeError(f"{name} already occurs in the polynomial")
            ne = list(e)
            ne[idx] = target_degree - d
            out[tuple(ne)] = c
        p = MultiPoly(self.vars, F)
        p.terms = out
        return p

    def normalize_primitive(self):
        """Canonical scaling.

        Over Q: clear denominators and integer content, make the graded-lex
        leading coefficient positive.  Over F_p: make the leading
        coefficient 1.  The zero polynomial is returned unchanged.
        """
        if not self.terms:
            return self
        F = self.field
        if F.char == 0:
            from math import gcd, lcm

            den = 1
            for c in self.terms.values():
                den = lcm(den, c.denominator)
            num_gcd = 0
            for c in self.terms.values():
                num_gcd = gcd(num_gcd, abs(c.numerator * (den // c.denominator)))
            scale = F.div(F.from_int(den), F.from_int(num_gcd))
            p = self.scalar_mul(scale)
            if p.leading()[1] < 0:
                p = p.neg()
            return p
        lead = self.leading()[1]
        return self.scalar_mul(F.inv(lead))

    # ---- structural helpers -------------------------------------------------
    def with_vars(self, newvars):
        """Re-embed into a superset variable ring (by name)."""
        newvars = tuple(newvars)
        pos = []
        for v in self.vars:
            if v not in newvars:
                raise ShapeError(f"variable {v} missing from target ring")
            pos.append(newvars.index(v))
        out = {}
        for e, c in self.terms.items():
            ne = [0] * len(newvars)
            for p_, k in zip(pos, e):
                ne[p_] = k
            out[tuple(ne)] = c
        p = MultiPoly(newvars, self.field)
        p.terms = out
        return p

    def rename_vars(self, mapping):
        newvars = tuple(mapping.get(v, v) for v in self.vars)
        p = MultiPoly(newvars, self.field)
        p.terms = dict(self.terms)
        return p

    def shift_truncated(self, point, max_degree):
        """Taylor expansion self(point + x) truncated past max_degree."""
        from math import comb

        F = self.field
        n = len(self.vars)
        out = MultiPoly(self.vars, F)
        for e, c in self.terms.items():
            # expand prod_j (p_j + x_j)^{e_j}, keeping x-degree <= max_degree
            partial = {(0,) * n: c}
            for j, k in enumerate(e):
                if k == 0:
                    continue
                pj = point[j]
                powers = [F.one()]
                for _ in range(k):
                    powers.append(F.mul(powers[-1], pj))
                nxt = {}
                for ee, cc in partial.items():
                    used = sum(ee)
                    for t in range(min(k, max_degree - used) + 1):
                        coef = F.mul(cc, F.mul(F.from_int(comb(k, t)), powers[k - t]))
                        if F.is_zero(coef):
                            continue
                        ne = list(ee)
                        ne[j] = t
                        ne = tuple(ne)
                        s = F.add(nxt.get(ne, F.zero()), coef)
                        if F.is_zero(s):
                            nxt.pop(ne, None)
                        else:
                            nxt[ne] = s
                partial = nxt
            addend = MultiPoly(self.vars, F)
            addend.terms = partial
            out = out.add(addend)
        return out

    def substitute_linear(self, matrix):
        """Compose with the linear change x_i -> sum_j matrix[i][j] x_j."""
        F = self.field
        images = [
            MultiPoly.affine(F.zero(), row, self.vars, F) for row in matrix
        ]
        out = MultiPoly(self.vars, F)
        for e, c in self.terms.items():
            t = MultiPoly.constant(c, self.vars, F)
            for j, k in enumerate(e):
                for _ in range(k):
                    t = t.mul(images[j])
            out = out.add(t)
        return out

    def proportional_to(self, other):
        """Exact proportionality by cross-multiplied leading coefficients."""
        self._check_compat(other)
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        a = self.leading()[1]
        b = other.leading()[1]
        return self.scalar_mul(b) == other.scalar_mul(a)

    # ---- serialization ------------------------------------------------------
    def to_json(self):
        return {
            "vars": list(self.vars),
            "terms": [
                {"exp": list(e), "coeff": self.field.format(c)}
                for e, c in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json(cls, obj, field):
        p = cls(tuple(obj["vars"]), field)
        for t in obj["terms"]:
            e = tuple(int(k) for k in t["exp"])
            c = field.parse(t["coeff"])
            if not field.is_zero(c):
                p.terms[e] = c
        return p


# ---- determinants of matrices of (affine-)linear forms ------------------


def _validate_linear_matrix(mat):
    n = len(mat)
    for row in mat:
        if len(row) != n:
            raise ShapeError("determinant of a non-square matrix")
    if n == 0:
        raise ShapeError("empty matrix")
    if n > 20:
        raise ShapeError("matrices larger than 20x20 are not supported")
    first = mat[0][0]
    for row in mat:
        for p in row:
            if p.vars != first.vars:
                raise FieldMismatchError("entries live in different variable rings")
            first.field.check_same(p.field)
            if p.degree() > 1:
                raise ShapeError("entries must have total degree <= 1")
    return n, first.vars, first.field


def _linear_parts(mat, nvars):
    """Split entries into constant part and per-variable coefficient parts."""
    n = len(mat)
    F = mat[0][0].field
    zero = F.zero()
    const = [[zero] * n for _ in range(n)]
    lins = [[[zero] * n for _ in range(n)] for _ in range(nvars)]
    for i in range(n):
        for j in range(n):
            for e, c in mat[i][j].terms.items():
                if sum(e) == 0:
                    const[i][j] = c
                else:
                    v = e.index(1)
                    lins[v][i][j] = c
    return const, lins


def _dp_minors(mat, nrows, vars, field):
    """Column-subset DP over the first `nrows` rows of `mat`.

    Returns the dict {column bitmask of size nrows: minor polynomial}.
    Zero minors are dropped.
    """
    ncols = len(mat[0])
    one = MultiPoly.constant(field.one(), vars, field)
    level = {0: one}
    for r in range(nrows):
        row = mat[r]
        nxt = {}
        for mask, minor in level.items():
            for c in range(ncols):
                bit = 1 << c
                if mask & bit:
                    continue
                entry = row[c]
                if entry.is_zero():
                    continue
                term = entry.mul(minor)
                if (bin(mask & (bit - 1)).count("1") + r) % 2 == 1:
                    term = term.neg()
                nmask = mask | bit
                if nmask in nxt:
                    s = nxt[nmask].add(term)
                    if s.is_zero():
                        del nxt[nmask]
                    else:
                        nxt[nmask] = s
                else:
                    if not term.is_zero():
                        nxt[nmask] = term
        level = nxt
    return level


def det_linear_matrix(mat):
    """Exact determinant of a square matrix of degree <= 1 polynomials."""
    n, vars, field = _validate_linear_matrix(mat)
    if kernels.supports_field(field) and n <= 14:
        const, lins = _linear_parts(mat, len(vars))
        table = kernels.get().linear_minor_table(const, lins, field.p, n)
        dense = table.get((1 << n) - 1)
        p = MultiPoly(vars, field)
        if dense is not None:
            p.terms = {e: c for e, c in dense.items() if c}
        return p
    full = (1 << n) - 1
    table = _dp_minors(mat, n, vars, field)
    return table.get(full, MultiPoly.zero(vars, field))


def minors_of_size(mat, size):
    """All size x size minors, ordered by (row subset, column subset) lex.

    Returns a list of MultiPoly of length C(n, size)^2.
    """
    from itertools import combinations

    n, vars, field = _validate_linear_matrix(mat)
    if not 1 <= size <= n:
        raise ShapeError(f"minor size {size} out of range")
    out = []
    use_kernel = kernels.supports_field(field) and n <= 14
    for rows in combinations(range(n), size):
        sub = [mat[r] for r in rows]
        if use_kernel:
            const, lins = _linear_parts(sub, len(vars))
            table = kernels.get().linear_minor_table(const, lins, field.p, size)
            get = lambda mask: _poly_from_dense(table.get(mask), vars, field)
        else:
            table = _dp_minors(sub, size, vars, field)
            get = lambda mask: table.get(mask, MultiPoly.zero(vars, field))
        for cols in combinations(range(n), size):
            mask = 0
            for c in cols:
                mask |= 1 << c
            out.append(get(mask))
    return out


def _poly_from_dense(dense, vars, field):
    p = MultiPoly(vars, field)
    if dense:
        p.terms = {e: c for e, c in dense.items() if c}
    return p


def det_via_evaluation(mat, points):
    """Oracle: scalar determinants of `mat` evaluated at each point."""
    n, vars, field = _validate_linear_matrix(mat)
    from .linalg import ExactMatrix

    out = []
    for pt in points:
        rows = [[p.evaluate(pt) for p in row] for row in mat]
        out.append(ExactMatrix.from_rows(rows, field).det())
    return out
