"""Exact dense linear algebra over Q and GF(p).

Matrices are immutable row-major tuples of scalars; subspaces are kept in
canonical reduced row echelon form, so two subspaces are equal exactly when
their basis tuples are equal.  Everything is a value type, safe to share.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DimensionMismatchError
from .fields import Field, same_field


def validate_vector(field: Field, length: int, v) -> tuple:
    vec = tuple(field.validate(x) for x in v)
    if len(vec) != length:
        raise DimensionMismatchError(f"expected vector of length {length}, got {len(vec)}")
    return vec


def zero_vector(field: Field, length: int) -> tuple:
    return (field.zero,) * length


def unit_vector(field: Field, length: int, i: int) -> tuple:
    return tuple(field.one if j == i else field.zero for j in range(length))


def vec_add(field, u, v):
    return tuple(field.add(a, b) for a, b in zip(u, v))


def vec_sub(field, u, v):
    return tuple(field.sub(a, b) for a, b in zip(u, v))


def vec_scale(field, c, v):
    return tuple(field.mul(c, x) for x in v)


def vec_is_zero(field, v):
    z = field.zero
    return all(x == z for x in v)


def _rref_inplace(field, rows, ncols):
    """Reduce a list of row lists to RREF; returns the pivot column list."""
    zero = field.zero
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        pr = None
        for i in range(r, nrows):
            if rows[i][c] != zero:
                pr = i
                break
        if pr is None:
            continue
        if pr != r:
            rows[r], rows[pr] = rows[pr], rows[r]
        lead = rows[r][c]
        if lead != field.one:
            inv = field.inv(lead)
            rows[r] = [field.mul(inv, x) for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != zero:
                f = rows[i][c]
                ri, rr = rows[i], rows[r]
                rows[i] = [field.sub(ri[j], field.mul(f, rr[j])) for j in range(ncols)]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


@dataclass(frozen=True)
class Matrix:
    """Immutable exact matrix; ``rows`` is a tuple of row tuples."""

    field: Field
    nrows: int
    ncols: int
    rows: tuple

    @staticmethod
    def from_rows(field: Field, rows, ncols: int | None = None) -> "Matrix":
        rws = tuple(tuple(field.validate(x) for x in r) for r in rows)
        if rws:
            width = len(rws[0]) if ncols is None else ncols
            if any(len(r) != width for r in rws):
                raise DimensionMismatchError("ragged or mismatched rows")
        else:
            if ncols is None:
                raise DimensionMismatchError("empty matrix needs an explicit column count")
            width = ncols
        return Matrix(field, len(rws), width, rws)

    @staticmethod
    def identity(field: Field, n: int) -> "Matrix":
        return Matrix(field, n, n,
                      tuple(unit_vector(field, n, i) for i in range(n)))

    @staticmethod
    def zeros(field: Field, nrows: int, ncols: int) -> "Matrix":
        return Matrix(field, nrows, ncols, tuple(zero_vector(field, ncols) for _ in range(nrows)))

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def columns(self):
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self) -> "Matrix":
        return Matrix(self.field, self.ncols, self.nrows,
                      tuple(tuple(self.rows[i][j] for i in range(self.nrows))
                            for j in range(self.ncols)))

    def matvec(self, v) -> tuple:
        f = self.field
        v = validate_vector(f, self.ncols, v)
        out = []
        for row in self.rows:
            acc = f.zero
            for a, b in zip(row, v):
                if a != f.zero and b != f.zero:
                    acc = f.add(acc, f.mul(a, b))
            out.append(acc)
        return tuple(out)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        same_field(self.field, other.field)
        if self.ncols != other.nrows:
            raise DimensionMismatchError("matrix product shape mismatch")
        f = self.field
        cols = other.transpose().rows
        rows = tuple(
            tuple(_dot(f, r, c) for c in cols)
            for r in self.rows
        )
        return Matrix(f, self.nrows, other.ncols, rows)

    def rref(self) -> tuple["Matrix", tuple]:
        rows = [list(r) for r in self.rows]
        pivots = _rref_inplace(self.field, rows, self.ncols)
        return Matrix(self.field, self.nrows, self.ncols,
                      tuple(tuple(r) for r in rows)), tuple(pivots)

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel(self) -> "Subspace":
        """Right kernel {v : M v = 0} as a canonical subspace of F^ncols."""
        f = self.field
        red, pivots = self.rref()
        pivset = set(pivots)
        free = [c for c in range(self.ncols) if c not in pivset]
        vectors = []
        for fc in free:
            v = [f.zero] * self.ncols
            v[fc] = f.one
            for i, pc in enumerate(pivots):
                v[pc] = f.neg(red.rows[i][fc])
            vectors.append(tuple(v))
        return span(f, self.ncols, vectors)

    def det(self):
        if self.nrows != self.ncols:
            raise DimensionMismatchError("determinant of a non-square matrix")
        f = self.field
        n = self.nrows
        rows = [list(r) for r in self.rows]
        det = f.one
        for c in range(n):
            pr = None
            for i in range(c, n):
                if rows[i][c] != f.zero:
                    pr = i
                    break
            if pr is None:
                return f.zero
            if pr != c:
                rows[c], rows[pr] = rows[pr], rows[c]
                det = f.neg(det)
            det = f.mul(det, rows[c][c])
            inv = f.inv(rows[c][c])
            for i in range(c + 1, n):
                if rows[i][c] != f.zero:
                    factor = f.mul(inv, rows[i][c])
                    rows[i] = [f.sub(rows[i][j], f.mul(factor, rows[c][j])) for j in range(n)]
        return det

    def is_invertible(self) -> bool:
        return self.nrows == self.ncols and self.rank() == self.nrows

    def inverse(self) -> "Matrix":
        if self.nrows != self.ncols:
            raise DimensionMismatchError("inverse of a non-square matrix")
        f = self.field
        n = self.nrows
        aug = [list(self.rows[i]) + list(unit_vector(f, n, i)) for i in range(n)]
        pivots = _rref_inplace(f, aug, 2 * n)
        if tuple(pivots) != tuple(range(n)):
            raise DimensionMismatchError("matrix is singular")
        return Matrix(f, n, n, tuple(tuple(r[n:]) for r in aug))


def _dot(field, u, v):
    acc = field.zero
    for a, b in zip(u, v):
        if a != field.zero and b != field.zero:
            acc = field.add(acc, field.mul(a, b))
    return acc


@dataclass(frozen=True)
class Subspace:
    """Subspace of F^ambient_dim in canonical RREF; equality is representational."""

    field: Field
    ambient_dim: int
    basis: tuple      # RREF rows with no zero rows
    pivots: tuple     # strictly increasing pivot columns, one per basis row

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def is_zero(self) -> bool:
        return not self.basis

    @property
    def matrix(self) -> Matrix:
        return Matrix(self.field, self.dim, self.ambient_dim, self.basis)

    def reduce(self, v) -> tuple:
        """Residual of v after elimination against the basis rows."""
        f = self.field
        v = list(validate_vector(f, self.ambient_dim, v))
        for row, pc in zip(self.basis, self.pivots):
            c = v[pc]
            if c != f.zero:
                for j in range(self.ambient_dim):
                    if row[j] != f.zero:
                        v[j] = f.sub(v[j], f.mul(c, row[j]))
        return tuple(v)

    def contains_vector(self, v) -> bool:
        return vec_is_zero(self.field, self.reduce(v))

    def contains(self, other) -> bool:
        """Membership test for a vector or containment test for a subspace."""
        if isinstance(other, Subspace):
            _check_ambient(self, other)
            return all(self.contains_vector(row) for row in other.basis)
        return self.contains_vector(other)

    def __le__(self, other: "Subspace") -> bool:
        return other.contains(self)

    def coordinates(self, v) -> tuple:
        """Coefficients of v in the RREF basis (requires membership)."""
        if not self.contains_vector(v):
            raise DimensionMismatchError("vector not in subspace")
        vv = validate_vector(self.field, self.ambient_dim, v)
        return tuple(vv[pc] for pc in self.pivots)

    def sum(self, other: "Subspace") -> "Subspace":
        return subspace_sum(self, other)

    def intersect(self, other: "Subspace") -> "Subspace":
        return subspace_intersect(self, other)


def _check_ambient(u: Subspace, w: Subspace) -> None:
    same_field(u.field, w.field)
    if u.ambient_dim != w.ambient_dim:
        raise DimensionMismatchError("ambient dimension mismatch")


def subspace_from_rref_rows(field, ambient_dim, rows, pivots) -> Subspace:
    """Trusted constructor for rows already in canonical RREF."""
    return Subspace(field, ambient_dim, tuple(tuple(r) for r in rows), tuple(pivots))


def span(field: Field, ambient_dim: int, vectors) -> Subspace:
    """Smallest subspace containing the given vectors, in canonical form."""
    rows = [list(validate_vector(field, ambient_dim, v)) for v in vectors]
    pivots = _rref_inplace(field, rows, ambient_dim)
    basis = tuple(tuple(r) for r in rows[: len(pivots)])
    return Subspace(field, ambient_dim, basis, tuple(pivots))


def zero_subspace(field: Field, ambient_dim: int) -> Subspace:
    return Subspace(field, ambient_dim, (), ())


def full_subspace(field: Field, ambient_dim: int) -> Subspace:
    return Subspace(field, ambient_dim,
                    tuple(unit_vector(field, ambient_dim, i) for i in range(ambient_dim)),
                    tuple(range(ambient_dim)))


def coordinate_subspace(field: Field, ambient_dim: int, indices) -> Subspace:
    """Span of the listed coordinate basis vectors (0-based indices)."""
    idx = sorted(set(indices))
    return Subspace(field, ambient_dim,
                    tuple(unit_vector(field, ambient_dim, i) for i in idx),
                    tuple(idx))


def subspace_sum(u: Subspace, w: Subspace) -> Subspace:
    _check_ambient(u, w)
    return span(u.field, u.ambient_dim, list(u.basis) + list(w.basis))


def subspace_intersect(u: Subspace, w: Subspace) -> Subspace:
    _check_ambient(u, w)
    f = u.field
    if u.is_zero or w.is_zero:
        return zero_subspace(f, u.ambient_dim)
    # Solve a*U - b*W = 0; intersection vectors are a*U.
    stacked = Matrix.from_rows(
        f,
        [list(r) for r in u.basis] + [[f.neg(x) for x in r] for r in w.basis],
        u.ambient_dim,
    )
    ker = stacked.transpose().kernel()
    vectors = []
    for coeffs in ker.basis:
        a = coeffs[: u.dim]
        v = zero_vector(f, u.ambient_dim)
        for c, row in zip(a, u.basis):
            if c != f.zero:
                v = vec_add(f, v, vec_scale(f, c, row))
        vectors.append(v)
    return span(f, u.ambient_dim, vectors)
