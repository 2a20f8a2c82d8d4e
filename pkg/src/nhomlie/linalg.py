"""Exact dense linear algebra over Q and Q(i).

Small matrices only (the algebras here live in dimension <= 8 or so), so the
implementation favors clarity and exactness: fraction-free forward
elimination, division only when producing canonical reduced bases.
Subspaces are kept in canonical reduced-row-echelon form so that equality of
subspaces is literal equality of the stored bases.
"""

from __future__ import annotations

from .fields import QQ, Scalar


class Matrix:
    """An immutable exact matrix with a field tag."""

    __slots__ = ("rows", "nrows", "ncols", "field")

    def __init__(self, rows, field=QQ):
        coerced = tuple(tuple(field.coerce(x) for x in row) for row in rows)
        if coerced:
            width = len(coerced[0])
            assert all(len(row) == width for row in coerced), "ragged rows"
        object.__setattr__(self, "rows", coerced)
        object.__setattr__(self, "nrows", len(coerced))
        object.__setattr__(self, "ncols", len(coerced[0]) if coerced else 0)
        object.__setattr__(self, "field", field)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    # -------------------------------------------------------- constructors

    @classmethod
    def identity(cls, n, field=QQ):
        one, zero = field.one(), field.zero()
        return cls(
            [[one if i == j else zero for j in range(n)] for i in range(n)], field
        )

    @classmethod
    def zero(cls, nrows, ncols, field=QQ):
        z = field.zero()
        return cls([[z] * ncols for _ in range(nrows)], field)

    @classmethod
    def diagonal(cls, values, field=QQ):
        values = [field.coerce(v) for v in values]
        z = field.zero()
        n = len(values)
        return cls(
            [[values[i] if i == j else z for j in range(n)] for i in range(n)], field
        )

    @classmethod
    def from_columns(cls, columns, field=QQ):
        columns = [list(c) for c in columns]
        return cls(list(map(list, zip(*columns))), field) if columns else cls([], field)

    # ------------------------------------------------------------- basics

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j):
        return tuple(row[j] for row in self.rows)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        body = "; ".join(
            " ".join(self.field.format(x) for x in row) for row in self.rows
        )
        return f"Matrix[{body}]"

    def is_zero(self) -> bool:
        return all(not x for row in self.rows for x in row)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    # ---------------------------------------------------------- arithmetic

    def __add__(self, other):
        assert (self.nrows, self.ncols) == (other.nrows, other.ncols)
        return Matrix(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ],
            self.field,
        )

    def __sub__(self, other):
        assert (self.nrows, self.ncols) == (other.nrows, other.ncols)
        return Matrix(
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ],
            self.field,
        )

    def __neg__(self):
        return Matrix([[-a for a in row] for row in self.rows], self.field)

    def scale(self, c: Scalar) -> "Matrix":
        c = self.field.coerce(c)
        return Matrix([[c * a for a in row] for row in self.rows], self.field)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        assert self.ncols == other.nrows, (self.ncols, other.nrows)
        cols = list(zip(*other.rows))
        return Matrix(
            [
                [sum((a * b for a, b in zip(row, col)), self.field.zero()) for col in cols]
                for row in self.rows
            ],
            self.field,
        )

    def apply(self, vector) -> tuple:
        """Matrix times column vector (vector given as a sequence)."""
        assert len(vector) == self.ncols
        vec = [self.field.coerce(x) for x in vector]
        return tuple(
            sum((a * b for a, b in zip(row, vec)), self.field.zero())
            for row in self.rows
        )

    def transpose(self) -> "Matrix":
        return Matrix(list(zip(*self.rows)), self.field) if self.rows else self

    # --------------------------------------------------------- elimination

    def det(self) -> Scalar:
        """Determinant by fraction-free (Bareiss) elimination."""
        assert self.is_square(), "determinant of a non-square matrix"
        n = self.nrows
        if n == 0:
            return self.field.one()
        m = [list(row) for row in self.rows]
        sign = 1
        prev = self.field.one()
        for k in range(n - 1):
            if not m[k][k]:
                for r in range(k + 1, n):
                    if m[r][k]:
                        m[k], m[r] = m[r], m[k]
                        sign = -sign
                        break
                else:
                    return self.field.zero()
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev
                m[i][k] = self.field.zero()
            prev = m[k][k]
        value = m[n - 1][n - 1]
        return -value if sign < 0 else value

    def rref(self) -> tuple["Matrix", tuple[int, ...]]:
        """Reduced row echelon form and the tuple of pivot columns."""
        m = [list(row) for row in self.rows]
        nrows, ncols = self.nrows, self.ncols
        pivots = []
        r = 0
        for c in range(ncols):
            pivot_row = None
            for i in range(r, nrows):
                if m[i][c]:
                    pivot_row = i
                    break
            if pivot_row is None:
                continue
            m[r], m[pivot_row] = m[pivot_row], m[r]
            # Fraction-free elimination below the pivot.
            for i in range(r + 1, nrows):
                if m[i][c]:
                    piv, entry = m[r][c], m[i][c]
                    m[i] = [piv * a - entry * b for a, b in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
            if r == nrows:
                break
        # Normalize pivots to 1 and eliminate above them.
        for back in range(len(pivots) - 1, -1, -1):
            c = pivots[back]
            piv = m[back][c]
            m[back] = [a / piv for a in m[back]]
            for i in range(back):
                if m[i][c]:
                    entry = m[i][c]
                    m[i] = [a - entry * b for a, b in zip(m[i], m[back])]
        return Matrix(m, self.field), tuple(pivots)

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel(self) -> list[tuple]:
        """Basis of the right null space, as a list of vectors."""
        rref, pivots = self.rref()
        free = [c for c in range(self.ncols) if c not in pivots]
        zero, one = self.field.zero(), self.field.one()
        basis = []
        for f in free:
            v = [zero] * self.ncols
            v[f] = one
            for r, c in enumerate(pivots):
                v[c] = -rref.rows[r][f]
            basis.append(tuple(v))
        return basis

    def inverse(self) -> "Matrix":
        assert self.is_square()
        n = self.nrows
        aug = Matrix(
            [
                list(self.rows[i]) + list(Matrix.identity(n, self.field).rows[i])
                for i in range(n)
            ],
            self.field,
        )
        red, pivots = aug.rref()
        if pivots != tuple(range(n)):
            raise ValueError("matrix is singular")
        return Matrix([row[n:] for row in red.rows], self.field)


def reduce(m: Matrix):
    """One-stop reduction: (rref, rank, kernel as a Subspace, det or None)."""
    from collections import namedtuple

    Reduction = namedtuple("Reduction", "rref rank kernel det")
    rref, pivots = m.rref()
    kernel = Subspace.from_vectors(m.kernel(), m.ncols, m.field)
    det = m.det() if m.is_square() else None
    return Reduction(rref, len(pivots), kernel, det)


def solve(a: Matrix, b) -> tuple | None:
    """One solution x of a @ x = b, or None if inconsistent."""
    field = a.field
    bvec = [field.coerce(x) for x in b]
    assert len(bvec) == a.nrows
    aug = Matrix([list(row) + [bv] for row, bv in zip(a.rows, bvec)], field)
    red, pivots = aug.rref()
    if a.ncols in pivots:
        return None
    x = [field.zero()] * a.ncols
    for r, c in enumerate(pivots):
        x[c] = red.rows[r][a.ncols]
    return tuple(x)


def permutation_matrix(sigma, field=QQ) -> Matrix:
    """The matrix sending basis vector e_i to e_sigma(i) (sigma 1-based)."""
    n = len(sigma)
    assert sorted(sigma) == list(range(1, n + 1)), f"not a permutation: {sigma}"
    zero, one = field.zero(), field.one()
    rows = [[zero] * n for _ in range(n)]
    for i, image in enumerate(sigma):
        rows[image - 1][i] = one
    return Matrix(rows, field)


def permutation_sign(sigma) -> int:
    """Sign of a permutation given in one-line notation (1-based)."""
    n = len(sigma)
    sign = 1
    for i in range(n):
        for j in range(i + 1, n):
            if sigma[i] > sigma[j]:
                sign = -sign
    return sign


class Subspace:
    """A linear subspace with a canonical reduced-row-echelon basis.

    Two Subspace objects over the same field are equal exactly when they are
    the same subspace; the canonical basis makes that a tuple comparison.
    The zero subspace has an empty basis but remembers its ambient dimension.
    """

    __slots__ = ("basis", "ambient_dim", "field")

    def __init__(self, basis, ambient_dim, field=QQ):
        object.__setattr__(self, "basis", tuple(tuple(v) for v in basis))
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "field", field)

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    @classmethod
    def from_vectors(cls, vectors, ambient_dim, field=QQ) -> "Subspace":
        vectors = [tuple(field.coerce(x) for x in v) for v in vectors]
        for v in vectors:
            assert len(v) == ambient_dim
        if not vectors:
            return cls((), ambient_dim, field)
        red, pivots = Matrix(vectors, field).rref()
        return cls(red.rows[: len(pivots)], ambient_dim, field)

    @classmethod
    def zero(cls, ambient_dim, field=QQ) -> "Subspace":
        return cls((), ambient_dim, field)

    @classmethod
    def full(cls, ambient_dim, field=QQ) -> "Subspace":
        return cls(Matrix.identity(ambient_dim, field).rows, ambient_dim, field)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        vecs = ", ".join(
            "(" + ", ".join(self.field.format(x) for x in v) + ")" for v in self.basis
        )
        return f"Subspace<dim {self.dim} of {self.ambient_dim}: {vecs}>"

    def contains(self, vector) -> bool:
        vec = [self.field.coerce(x) for x in vector]
        assert len(vec) == self.ambient_dim
        # The basis is in RREF, so eliminating its pivots decides membership.
        for row in self.basis:
            pivot_col = next(j for j, x in enumerate(row) if x)
            if vec[pivot_col]:
                c = vec[pivot_col]
                vec = [a - c * b for a, b in zip(vec, row)]
        return not any(vec)

    def contains_subspace(self, other: "Subspace") -> bool:
        assert self.ambient_dim == other.ambient_dim
        return all(self.contains(v) for v in other.basis)

    def __le__(self, other: "Subspace") -> bool:
        return other.contains_subspace(self)

    def __add__(self, other: "Subspace") -> "Subspace":
        assert self.ambient_dim == other.ambient_dim
        return Subspace.from_vectors(
            list(self.basis) + list(other.basis), self.ambient_dim, self.field
        )

    def intersect(self, other: "Subspace") -> "Subspace":
        """Intersection via the Zassenhaus block trick."""
        assert self.ambient_dim == other.ambient_dim
        n = self.ambient_dim
        zero = self.field.zero()
        block = [list(v) + list(v) for v in self.basis]
        block += [list(v) + [zero] * n for v in other.basis]
        if not block:
            return Subspace.zero(n, self.field)
        red, pivots = Matrix(block, self.field).rref()
        inter = [
            row[n:]
            for row in red.rows
            if not any(row[:n]) and any(row[n:])
        ]
        return Subspace.from_vectors(inter, n, self.field)

    def image(self, matrix: Matrix) -> "Subspace":
        """The image of this subspace under a linear map."""
        assert matrix.ncols == self.ambient_dim
        return Subspace.from_vectors(
            [matrix.apply(v) for v in self.basis], matrix.nrows, self.field
        )
