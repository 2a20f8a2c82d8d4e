"""Core representation of n-ary skew-symmetric algebras with twisting maps.

A bracket is stored as a table of structure constants indexed by strictly
increasing 1-based tuples; evaluation extends multilinearly and totally
skew-symmetrically.  For algebras of dimension n+1 the bracket is equivalently
packaged as an (n+1)x(n+1) matrix B whose column i is the signed value of the
bracket with e_i omitted.  On top of these sit basis change, basis
permutation, the Yau twist, and the morphism test.
"""

from __future__ import annotations

from itertools import combinations, product

from .fields import QQ
from .linalg import Matrix


def sort_indices(indices):
    """Sort an index tuple, returning (sorted tuple, sign); sign 0 on repeats."""
    indices = tuple(indices)
    seq = list(indices)
    sign = 1
    # Insertion sort, counting swaps; n is tiny.
    for i in range(1, len(seq)):
        j = i
        while j > 0 and seq[j - 1] > seq[j]:
            seq[j - 1], seq[j] = seq[j], seq[j - 1]
            sign = -sign
            j -= 1
    for a, b in zip(seq, seq[1:]):
        if a == b:
            return tuple(seq), 0
    return tuple(seq), sign


class Bracket:
    """A totally skew-symmetric n-ary bracket on a d-dimensional space.

    The table maps strictly increasing 1-based index tuples to coefficient
    vectors; absent tuples are zero.  Input keys may come in any order and
    are normalized with the permutation sign.
    """

    __slots__ = ("dim", "arity", "field", "table")

    def __init__(self, dim, arity, table=None, field=QQ):
        assert 2 <= arity <= dim, f"need 2 <= arity <= dim, got {arity}, {dim}"
        normalized = {}
        for key, value in (table or {}).items():
            sorted_key, sign = sort_indices(key)
            if sign == 0:
                raise ValueError(f"repeated index in bracket key {key}")
            assert all(1 <= i <= dim for i in sorted_key), f"index out of range: {key}"
            assert len(sorted_key) == arity, f"key {key} has wrong arity"
            if sorted_key in normalized:
                raise ValueError(f"duplicate bracket key {key}")
            vec = tuple(field.coerce(x) for x in value)
            assert len(vec) == dim, f"value for {key} has wrong length"
            if sign < 0:
                vec = tuple(-x for x in vec)
            if any(vec):
                normalized[sorted_key] = vec
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "arity", arity)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "table", normalized)

    def __setattr__(self, name, value):
        raise AttributeError("Bracket is immutable")

    def __eq__(self, other):
        if not isinstance(other, Bracket):
            return NotImplemented
        return (
            self.dim == other.dim
            and self.arity == other.arity
            and self.table == other.table
        )

    def __hash__(self):
        return hash((self.dim, self.arity, tuple(sorted(self.table.items()))))

    def __repr__(self):
        parts = ", ".join(
            f"{key}->({', '.join(self.field.format(x) for x in value)})"
            for key, value in sorted(self.table.items())
        )
        return f"Bracket<dim {self.dim}, arity {self.arity}: {parts or '0'}>"

    def is_zero(self) -> bool:
        return not self.table

    def _zero_vector(self):
        return (self.field.zero(),) * self.dim

    def eval_basis(self, indices) -> tuple:
        """Bracket of basis vectors e_{i_1}, ..., e_{i_n} (1-based indices)."""
        assert len(indices) == self.arity, f"expected {self.arity} indices"
        assert all(1 <= i <= self.dim for i in indices), f"index out of range: {indices}"
        key, sign = sort_indices(indices)
        if sign == 0:
            return self._zero_vector()
        value = self.table.get(key)
        if value is None:
            return self._zero_vector()
        return value if sign > 0 else tuple(-x for x in value)

    def eval(self, vectors) -> tuple:
        """Multilinear evaluation on coordinate vectors."""
        assert len(vectors) == self.arity, f"expected {self.arity} arguments"
        supports = []
        for v in vectors:
            v = tuple(self.field.coerce(x) for x in v)
            assert len(v) == self.dim, "argument has wrong length"
            supports.append([(j + 1, c) for j, c in enumerate(v) if c])
        result = list(self._zero_vector())
        for combo in product(*supports):
            indices = tuple(i for i, _ in combo)
            base = self.eval_basis(indices)
            if not any(base):
                continue
            coeff = self.field.one()
            for _, c in combo:
                coeff = coeff * c
            for k in range(self.dim):
                result[k] = result[k] + coeff * base[k]
        return tuple(result)


class BMatrix:
    """Matrix view of an n-ary bracket in dimension n+1.

    Column i holds w_i with [e_1, ..., e_i omitted, ..., e_{n+1}] equal to
    (-1)^(n+1+i) * w_i; entry access b(p, i) is 1-based.
    """

    __slots__ = ("n", "matrix")

    def __init__(self, n, matrix: Matrix):
        assert matrix.nrows == matrix.ncols == n + 1, "B must be (n+1)x(n+1)"
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "matrix", matrix)

    def __setattr__(self, name, value):
        raise AttributeError("BMatrix is immutable")

    @property
    def field(self):
        return self.matrix.field

    def b(self, p, i):
        """Entry b(p, i), 1-based; out-of-range row/column 0 reads as 0."""
        if p == 0 or i == 0:
            return self.field.zero()
        return self.matrix[p - 1, i - 1]

    def column(self, i):
        """Column w_i, 1-based."""
        return self.matrix.column(i - 1)

    def __eq__(self, other):
        if not isinstance(other, BMatrix):
            return NotImplemented
        return self.n == other.n and self.matrix == other.matrix

    def __hash__(self):
        return hash((self.n, self.matrix))

    def __repr__(self):
        return f"BMatrix<n={self.n}, {self.matrix!r}>"


def to_bmatrix(bracket: Bracket) -> BMatrix:
    n = bracket.arity
    if bracket.dim != n + 1:
        raise ValueError("B-matrix view requires dim = arity + 1")
    columns = []
    for i in range(1, n + 2):
        indices = tuple(j for j in range(1, n + 2) if j != i)
        value = bracket.eval_basis(indices)
        if (n + 1 + i) % 2:
            value = tuple(-x for x in value)
        columns.append(value)
    return BMatrix(n, Matrix.from_columns(columns, bracket.field))


def from_bmatrix(bm: BMatrix) -> Bracket:
    n = bm.n
    field = bm.field
    table = {}
    for i in range(1, n + 2):
        indices = tuple(j for j in range(1, n + 2) if j != i)
        value = bm.column(i)
        if (n + 1 + i) % 2:
            value = tuple(-x for x in value)
        if any(value):
            table[indices] = value
    return Bracket(n + 1, n, table, field)


class HomAlgebra:
    """A bracket together with its arity-minus-one twisting maps."""

    __slots__ = ("bracket", "twists")

    def __init__(self, bracket: Bracket, twists):
        twists = tuple(twists)
        assert len(twists) == bracket.arity - 1, "need arity - 1 twisting maps"
        for a in twists:
            assert isinstance(a, Matrix)
            assert a.nrows == a.ncols == bracket.dim, "twist must be dim x dim"
        object.__setattr__(self, "bracket", bracket)
        object.__setattr__(self, "twists", twists)

    def __setattr__(self, name, value):
        raise AttributeError("HomAlgebra is immutable")

    @property
    def dim(self):
        return self.bracket.dim

    @property
    def arity(self):
        return self.bracket.arity

    @property
    def field(self):
        return self.bracket.field

    def uniform_twist(self) -> Matrix | None:
        """The single twisting map when all twists coincide, else None."""
        first = self.twists[0]
        return first if all(a == first for a in self.twists) else None

    def bmatrix(self) -> BMatrix:
        return to_bmatrix(self.bracket)

    def __eq__(self, other):
        if not isinstance(other, HomAlgebra):
            return NotImplemented
        return self.bracket == other.bracket and self.twists == other.twists

    def __repr__(self):
        return f"HomAlgebra<{self.bracket!r}, twists x{len(self.twists)}>"


def eval_bracket(a: HomAlgebra, args) -> tuple:
    """Evaluate the bracket on arguments given as 1-based indices or vectors."""
    if len(args) != a.arity:
        raise ValueError(f"expected {a.arity} arguments, got {len(args)}")
    if all(isinstance(x, int) for x in args):
        return a.bracket.eval_basis(args)
    vectors = []
    for x in args:
        if isinstance(x, int):
            assert 1 <= x <= a.dim
            e = [a.field.zero()] * a.dim
            e[x - 1] = a.field.one()
            vectors.append(e)
        else:
            if len(x) != a.dim:
                raise ValueError("argument vector has wrong length")
            vectors.append(x)
    return a.bracket.eval(vectors)


def basis_vector(i, dim, field=QQ) -> tuple:
    e = [field.zero()] * dim
    e[i - 1] = field.one()
    return tuple(e)


# ---------------------------------------------------------------- the family


def family_alpha(field=QQ) -> Matrix:
    """The fixed nilpotent twist: alpha(e3) = e2, alpha(e4) = e3, else 0."""
    zero, one = field.zero(), field.one()
    rows = [[zero] * 4 for _ in range(4)]
    rows[1][2] = one
    rows[2][3] = one
    return Matrix(rows, field)


class FamilyAlgebra:
    """The 4-dimensional ternary algebras with the fixed nilpotent twist.

    Determined by the eight structure constants c(1,2,4,p) and c(1,3,4,p);
    the brackets [e1,e2,e3] and [e2,e3,e4] vanish identically and
    alpha(e1) = alpha(e2) = 0, alpha(e3) = e2, alpha(e4) = e3.
    """

    __slots__ = ("c124", "c134", "field")

    def __init__(self, c124, c134, field=QQ):
        c124 = tuple(field.coerce(x) for x in c124)
        c134 = tuple(field.coerce(x) for x in c134)
        assert len(c124) == 4 and len(c134) == 4
        object.__setattr__(self, "c124", c124)
        object.__setattr__(self, "c134", c134)
        object.__setattr__(self, "field", field)

    def __setattr__(self, name, value):
        raise AttributeError("FamilyAlgebra is immutable")

    def __eq__(self, other):
        if not isinstance(other, FamilyAlgebra):
            return NotImplemented
        return self.c124 == other.c124 and self.c134 == other.c134

    def __hash__(self):
        return hash((self.c124, self.c134))

    def __repr__(self):
        f = self.field.format
        return (
            f"FamilyAlgebra<c124=({', '.join(f(x) for x in self.c124)}), "
            f"c134=({', '.join(f(x) for x in self.c134)})>"
        )

    def alpha(self) -> Matrix:
        return family_alpha(self.field)

    def to_hom(self) -> HomAlgebra:
        table = {}
        if any(self.c124):
            table[(1, 2, 4)] = self.c124
        if any(self.c134):
            table[(1, 3, 4)] = self.c134
        bracket = Bracket(4, 3, table, self.field)
        a = self.alpha()
        return HomAlgebra(bracket, (a, a))

    def bmatrix(self) -> BMatrix:
        zero = (self.field.zero(),) * 4
        minus_u = tuple(-x for x in self.c124)
        return BMatrix(3, Matrix.from_columns([zero, self.c134, minus_u, zero], self.field))

    @classmethod
    def from_bmatrix(cls, bm: BMatrix) -> "FamilyAlgebra":
        assert bm.n == 3
        if any(bm.column(1)) or any(bm.column(4)):
            raise ValueError("family B-matrices have zero first and last columns")
        return cls(tuple(-x for x in bm.column(3)), bm.column(2), bm.field)


# ------------------------------------------------------------- basis change


def change_basis(a: HomAlgebra, t: Matrix) -> HomAlgebra:
    """Transport the algebra along the invertible map x -> T x.

    The new bracket is T [T^-1 y_1, ..., T^-1 y_n] and the new twists are
    T [alpha_i] T^-1.  In dimension n+1 this realizes the matrix congruence
    B' = det(T)^-1 T B T^t, which is verified exactly as a cross-check.
    """

    assert t.nrows == t.ncols == a.dim
    t_inv = t.inverse()
    field = a.field
    table = {}
    for combo in combinations(range(1, a.dim + 1), a.arity):
        args = [t_inv.column(i - 1) for i in combo]
        value = t.apply(a.bracket.eval(args))
        if any(value):
            table[combo] = value
    bracket = Bracket(a.dim, a.arity, table, field)
    twists = tuple(t @ al @ t_inv for al in a.twists)
    result = HomAlgebra(bracket, twists)
    if a.dim == a.arity + 1 and not a.bracket.is_zero():
        # Independent route: the congruence law on the matrix view.
        b_old = to_bmatrix(a.bracket).matrix
        expected = (t @ b_old @ t.transpose()).scale(field.one() / t.det())
        assert to_bmatrix(bracket).matrix == expected, "basis-change congruence failed"
    return result


def permute_basis(bm: BMatrix, sigma) -> BMatrix:
    """Rewrite B under the relabeling e_i -> e_sigma(i) of the basis."""
    size = bm.n + 1
    sigma = tuple(sigma)
    if sorted(sigma) != list(range(1, size + 1)):
        raise ValueError(f"not a permutation of 1..{size}: {sigma}")
    inverse = [0] * (size + 1)
    for i, image in enumerate(sigma, start=1):
        inverse[image] = i
    sign = 1
    for i in range(size):
        for j in range(i + 1, size):
            if sigma[i] > sigma[j]:
                sign = -sign
    rows = [
        [bm.b(inverse[i], inverse[j]) for j in range(1, size + 1)]
        for i in range(1, size + 1)
    ]
    matrix = Matrix(rows, bm.field)
    if sign < 0:
        matrix = matrix.scale(bm.field.coerce(-1))
    return BMatrix(bm.n, matrix)


# ------------------------------------------------------- morphisms and twist


def is_morphism(f: Matrix, src: HomAlgebra, dst: HomAlgebra, weak=False):
    """Whether f intertwines brackets (and twists, unless weak).

    Returns (True, None), or (False, witness) where the witness is the first
    violating basis index tuple, or ("twist", i, defect) for a failed
    intertwining relation f alpha_i = beta_i f.
    """

    if src.arity != dst.arity:
        raise ValueError("arity mismatch")
    if f.ncols != src.dim or f.nrows != dst.dim:
        raise ValueError("map shape does not match source/target dimensions")
    for combo in combinations(range(1, src.dim + 1), src.arity):
        lhs = f.apply(src.bracket.eval_basis(combo))
        rhs = dst.bracket.eval([f.column(i - 1) for i in combo])
        if lhs != rhs:
            return False, combo
    if not weak:
        for i, (al_src, al_dst) in enumerate(zip(src.twists, dst.twists)):
            defect = f @ al_src - al_dst @ f
            if not defect.is_zero():
                return False, ("twist", i, defect)
    return True, None


class NotWeakMorphismError(ValueError):
    """Raised when a map fails the bracket-intertwining condition."""

    def __init__(self, witness):
        super().__init__(f"map is not a weak morphism; fails on basis tuple {witness}")
        self.witness = witness


def yau_twist(a: HomAlgebra, beta: Matrix) -> HomAlgebra:
    """Twist by a weak self-morphism: bracket becomes beta o [.], twists beta [alpha_i]."""
    ok, witness = is_morphism(beta, a, a, weak=True)
    if not ok:
        raise NotWeakMorphismError(witness)
    table = {}
    for key, value in a.bracket.table.items():
        new_value = beta.apply(value)
        if any(new_value):
            table[key] = new_value
    bracket = Bracket(a.dim, a.arity, table, a.field)
    return HomAlgebra(bracket, tuple(beta @ al for al in a.twists))
