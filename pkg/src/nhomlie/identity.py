"""Checking the defining identity and multiplicativity.

The defining identity for a bracket with twisting maps alpha_1..alpha_{n-1}
states that for all x_1..x_{n-1}, y_1..y_n:

    [a1(x1), ..., a_{n-1}(x_{n-1}), [y1, ..., yn]]
      = sum_i [a1(y1), ..., a_{i-1}(y_{i-1}), [x1, ..., x_{n-1}, yi],
               a_i(y_{i+1}), ..., a_{n-1}(yn)].

Brute force evaluates the defect of this identity on basis tuples.  With a
single twisting map the defect is skew-symmetric and vanishes on repeats in
each argument block, so strictly increasing tuples suffice; with distinct
twisting maps neither reduction is available and all index tuples are
checked.

For dimension n+1 and a twisting map in one of five template shapes, the
identity is equivalent to an explicit polynomial system in the entries of the
bracket matrix B; the equivalence is established by testing against brute
force, never assumed.
"""

from __future__ import annotations

from itertools import combinations, product

from .homalg import HomAlgebra, basis_vector, is_morphism
from .linalg import Matrix, Subspace


class InternalCheckError(AssertionError):
    """Two supposedly equivalent computations disagreed."""


# --------------------------------------------------------------- twist shapes


class TwistShape:
    """A template for the twisting map, in the basis the templates assume.

    Variants: diagonal invertible, diagonal with kernel dimension 1 or 2
    (zero eigenvalues first), the full nilpotent Jordan block, the nilpotent
    shape with two Jordan blocks and kernel <e1, e_i0>, or general (no
    polynomial system).
    """

    KINDS = (
        "diag_invertible",
        "diag_ker1",
        "diag_ker2",
        "nil_ker1",
        "nil_ker2",
        "general",
    )

    __slots__ = ("kind", "lambdas", "i0")

    def __init__(self, kind, lambdas=None, i0=None):
        assert kind in self.KINDS
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "lambdas", tuple(lambdas) if lambdas else None)
        object.__setattr__(self, "i0", i0)

    def __setattr__(self, name, value):
        raise AttributeError("TwistShape is immutable")

    @classmethod
    def diag_invertible(cls, lambdas):
        lambdas = tuple(lambdas)
        if not all(lambdas):
            raise ValueError("invertible diagonal shape requires nonzero eigenvalues")
        return cls("diag_invertible", lambdas)

    @classmethod
    def diag_ker1(cls, lambdas):
        lambdas = tuple(lambdas)
        if lambdas[0] or not all(lambdas[1:]):
            raise ValueError(
                "kernel-1 diagonal shape requires exactly the first eigenvalue zero"
            )
        return cls("diag_ker1", lambdas)

    @classmethod
    def diag_ker2(cls, lambdas):
        lambdas = tuple(lambdas)
        if lambdas[0] or lambdas[1] or not all(lambdas[2:]):
            raise ValueError(
                "kernel-2 diagonal shape requires exactly the first two eigenvalues zero"
            )
        return cls("diag_ker2", lambdas)

    @classmethod
    def nil_ker1(cls):
        return cls("nil_ker1")

    @classmethod
    def nil_ker2(cls, i0):
        assert i0 >= 2
        return cls("nil_ker2", i0=i0)

    @classmethod
    def general(cls):
        return cls("general")

    def __eq__(self, other):
        if not isinstance(other, TwistShape):
            return NotImplemented
        return (self.kind, self.lambdas, self.i0) == (other.kind, other.lambdas, other.i0)

    def __repr__(self):
        if self.lambdas is not None:
            return f"TwistShape.{self.kind}{self.lambdas}"
        if self.i0 is not None:
            return f"TwistShape.{self.kind}(i0={self.i0})"
        return f"TwistShape.{self.kind}"

    def to_matrix(self, size, field) -> Matrix:
        """The template twist matrix of the given size."""
        zero, one = field.zero(), field.one()
        rows = [[zero] * size for _ in range(size)]
        if self.kind in ("diag_invertible", "diag_ker1", "diag_ker2"):
            assert len(self.lambdas) == size, "eigenvalue count must match dimension"
            for i, lam in enumerate(self.lambdas):
                rows[i][i] = field.coerce(lam)
        elif self.kind == "nil_ker1":
            for j in range(1, size):
                rows[j - 1][j] = one
        elif self.kind == "nil_ker2":
            assert 2 <= self.i0 <= size
            for j in range(1, size):
                if j + 1 != self.i0:
                    rows[j - 1][j] = one
        else:
            raise ValueError("general shape has no template matrix")
        return Matrix(rows, field)

    def validate(self, alpha: Matrix):
        """Check alpha entry-wise against the template; name the first mismatch."""
        if self.kind == "general":
            return
        template = self.to_matrix(alpha.nrows, alpha.field)
        for i in range(alpha.nrows):
            for j in range(alpha.ncols):
                if alpha[i, j] != template[i, j]:
                    raise ValueError(
                        f"twist entry ({i + 1},{j + 1}) is "
                        f"{alpha.field.format(alpha[i, j])}, template requires "
                        f"{alpha.field.format(template[i, j])}"
                    )


def detect_shape(alpha: Matrix) -> TwistShape:
    """Match a twist matrix against the known templates."""
    size = alpha.nrows
    if all(not alpha[i, j] for i in range(size) for j in range(size) if i != j):
        lambdas = tuple(alpha[i, i] for i in range(size))
        zeros = [i for i, lam in enumerate(lambdas) if not lam]
        if not zeros:
            return TwistShape.diag_invertible(lambdas)
        if zeros == [0]:
            return TwistShape.diag_ker1(lambdas)
        if zeros == [0, 1]:
            return TwistShape.diag_ker2(lambdas)
        return TwistShape.general()
    field = alpha.field
    if alpha == TwistShape.nil_ker1().to_matrix(size, field):
        return TwistShape.nil_ker1()
    for i0 in range(2, size + 1):
        if alpha == TwistShape.nil_ker2(i0).to_matrix(size, field):
            return TwistShape.nil_ker2(i0)
    return TwistShape.general()


# ---------------------------------------------------------------- brute force


def hnf_defect(a: HomAlgebra, xs, ys) -> tuple:
    """Left side minus right side of the identity, on coordinate vectors."""
    n = a.arity
    assert len(xs) == n - 1 and len(ys) == n
    bracket, twists = a.bracket, a.twists
    twisted_x = [twists[i].apply(x) for i, x in enumerate(xs)]
    total = list(bracket.eval(twisted_x + [bracket.eval(list(ys))]))
    for m in range(n):
        args = [twists[j].apply(ys[j]) for j in range(m)]
        args.append(bracket.eval(list(xs) + [ys[m]]))
        args.extend(twists[j - 1].apply(ys[j]) for j in range(m + 1, n))
        term = bracket.eval(args)
        total = [t - s for t, s in zip(total, term)]
    return tuple(total)


def check_hnf_bruteforce(a: HomAlgebra):
    """Exhaustively test the identity on basis tuples.

    Returns (True, None) or (False, (x_indices, y_indices, defect)).

    Computes the same defect as hnf_defect, specialized to basis arguments:
    a twist applied to e_i is just its i-th column, and brackets of basis
    vectors are table lookups, so neither is worth a full multilinear
    evaluation inside the double loop.
    """

    n, d = a.arity, a.dim
    bracket = a.bracket
    images = [[t.column(i) for i in range(d)] for t in a.twists]
    if a.uniform_twist() is not None:
        x_tuples = combinations(range(1, d + 1), n - 1)
        y_tuples = list(combinations(range(1, d + 1), n))
    else:
        # With distinct twisting maps the defect is not skew-symmetric and
        # does not vanish on repeated arguments, so nothing short of all
        # index tuples is complete.
        x_tuples = product(range(1, d + 1), repeat=n - 1)
        y_tuples = list(product(range(1, d + 1), repeat=n))
    inner_y = {ys: bracket.eval_basis(ys) for ys in y_tuples}
    for xs in x_tuples:
        txs = [images[i][x - 1] for i, x in enumerate(xs)]
        for ys in y_tuples:
            total = list(bracket.eval(txs + [inner_y[ys]]))
            for m in range(n):
                mid = bracket.eval_basis(xs + (ys[m],))
                if not any(mid):
                    continue
                args = [images[j][ys[j] - 1] for j in range(m)]
                args.append(mid)
                args.extend(images[j - 1][ys[j] - 1] for j in range(m + 1, n))
                term = bracket.eval(args)
                total = [t - s for t, s in zip(total, term)]
            if any(total):
                return False, (xs, ys, tuple(total))
    return True, None


# --------------------------------------------------------- polynomial systems


def check_hnf_polynomial(a: HomAlgebra, shape: TwistShape):
    """Evaluate the shape's polynomial system on the bracket matrix.

    Returns (True, []) or (False, failures) where each failure names the
    system and the indices of a violated equation.  Independent of the brute
    force route; their equivalence is established by tests.
    """

    if a.dim != a.arity + 1:
        raise ValueError("polynomial systems require dim = arity + 1")
    alpha = a.uniform_twist()
    if alpha is None:
        raise ValueError("polynomial systems assume a single twisting map")
    shape.validate(alpha)
    bm = a.bmatrix()
    field = a.field
    size = a.dim
    failures = []
    if shape.kind == "diag_invertible":
        lam = [field.coerce(x) for x in shape.lambdas]
        for i, j, k in combinations(range(1, size + 1), 3):
            coeff_k = lam[i - 1] * bm.b(j, i) - lam[j - 1] * bm.b(i, j)
            coeff_j = lam[k - 1] * bm.b(i, k) - lam[i - 1] * bm.b(k, i)
            coeff_i = lam[j - 1] * bm.b(k, j) - lam[k - 1] * bm.b(j, k)
            for p in range(1, size + 1):
                if coeff_k * bm.b(p, k) + coeff_j * bm.b(p, j) + coeff_i * bm.b(p, i):
                    failures.append(("diag_invertible", i, j, k, p))
    elif shape.kind == "diag_ker1":
        lam = [field.coerce(x) for x in shape.lambdas]
        for j, k in combinations(range(2, size + 1), 2):
            for p in range(1, size + 1):
                value = (
                    lam[k - 1] * bm.b(1, k) * bm.b(p, j)
                    - lam[k - 1] * bm.b(j, k) * bm.b(p, 1)
                    - lam[j - 1] * bm.b(1, j) * bm.b(p, k)
                    + lam[j - 1] * bm.b(k, j) * bm.b(p, 1)
                )
                if value:
                    failures.append(("diag_ker1", j, k, p))
    elif shape.kind == "diag_ker2":
        for k in range(3, size + 1):
            for p in range(1, size + 1):
                if bm.b(1, k) * bm.b(p, 2) - bm.b(2, k) * bm.b(p, 1):
                    failures.append(("diag_ker2", k, p))
    elif shape.kind == "nil_ker1":
        # Index 1 is excluded from the quantifier range: the i = 1 equations
        # degenerate (their b-entries with index 0 vanish) into conditions
        # stronger than the identity itself, as brute-force comparison shows.
        for i, k in combinations(range(2, size + 1), 2):
            for p in range(1, size + 1):
                value = (
                    (bm.b(k - 1, i) - bm.b(i - 1, k)) * bm.b(p, size)
                    - bm.b(size, i) * bm.b(p, k - 1)
                    + bm.b(size, k) * bm.b(p, i - 1)
                )
                if value:
                    failures.append(("nil_ker1", i, k, p))
    elif shape.kind == "nil_ker2":
        i0 = shape.i0
        for j in range(2, size + 1):
            if j == i0:
                continue
            for p in range(1, size + 1):
                if bm.b(i0 - 1, j) * bm.b(p, size) - bm.b(size, j) * bm.b(p, i0 - 1):
                    failures.append(("nil_ker2", j, p))
    else:
        raise ValueError("no polynomial system for the general shape")
    return not failures, failures


# ------------------------------------------------------------ multiplicativity


def check_multiplicative(a: HomAlgebra) -> bool:
    """Whether the twisting map is an algebra morphism.

    The verdict comes from the direct morphism check.  Independent criteria
    are recomputed and compared whenever applicable: image containment in
    ker(alpha) when rank(alpha) < arity; [alpha]B = 0 in dimension n+1; the
    column conditions alpha(w_1) = (-1)^n w_{n+1}, alpha(w_i) = 0 for the
    full Jordan block.  Disagreement raises InternalCheckError.
    """

    alpha = a.uniform_twist()
    assert alpha is not None, "multiplicativity is defined for a single twisting map"
    verdict, _ = is_morphism(alpha, a, a, weak=True)
    if alpha.rank() < a.arity:
        kernel = Subspace.from_vectors(alpha.kernel(), a.dim, a.field)
        kernel_route = all(kernel.contains(v) for v in a.bracket.table.values())
        if kernel_route != verdict:
            raise InternalCheckError(
                f"kernel containment gives {kernel_route}, morphism check {verdict}"
            )
        if a.dim == a.arity + 1:
            b_route = (alpha @ a.bmatrix().matrix).is_zero()
            if b_route != verdict:
                raise InternalCheckError(
                    f"[alpha]B = 0 gives {b_route}, morphism check {verdict}"
                )
    if a.dim == a.arity + 1 and alpha == TwistShape.nil_ker1().to_matrix(a.dim, a.field):
        bm = a.bmatrix()
        w1_image = alpha.apply(bm.column(1))
        expected = bm.column(a.dim)
        if a.arity % 2:
            expected = tuple(-x for x in expected)
        w_route = w1_image == expected and all(
            not any(alpha.apply(bm.column(i))) for i in range(2, a.dim + 1)
        )
        if w_route != verdict:
            raise InternalCheckError(
                f"column conditions give {w_route}, morphism check {verdict}"
            )
    return verdict
