"""Derived and central series, center, solvability and nilpotency, and
subalgebra / ideal predicates for subspaces of an algebra.

Series conventions: the k-derived series iterates
D^(p+1) = <[D^p, ..., D^p, A, ..., A]> with k copies of the previous term;
the k-central descending series iterates
C^(p+1) = <[C^p, I, ..., I, A, ..., A]> with k-1 copies of the starting
ideal.  The class is the smallest r with the r-th term zero (0 for the zero
ideal, 1 for a nonzero abelian one), or None when the series stabilizes at a
nonzero term.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

from .homalg import HomAlgebra
from .identity import InternalCheckError
from .linalg import Matrix, Subspace


def full_space(a: HomAlgebra) -> Subspace:
    return Subspace.full(a.dim, a.field)


def bracket_span(a: HomAlgebra, parts) -> Subspace:
    """Span of all brackets with one basis vector drawn from each part.

    Equal parts are grouped: the bracket kills repeated vectors and is
    invariant (up to sign) under reordering, so strictly increasing
    selections within a group generate the same span.
    """

    parts = list(parts)
    if len(parts) != a.arity:
        raise ValueError(f"expected {a.arity} parts, got {len(parts)}")
    for part in parts:
        assert part.ambient_dim == a.dim, "part has wrong ambient dimension"
    if any(part.is_zero() for part in parts):
        return Subspace.zero(a.dim, a.field)
    groups = []
    for part in parts:
        if groups and groups[-1][0] == part:
            groups[-1][1] += 1
        else:
            groups.append([part, 1])
    selections_per_group = [
        list(combinations(part.basis, count)) for part, count in groups
    ]
    vectors = []
    for selection in product(*selections_per_group):
        args = [v for group in selection for v in group]
        value = a.bracket.eval(args)
        if any(value):
            vectors.append(value)
    return Subspace.from_vectors(vectors, a.dim, a.field)


@dataclass(frozen=True)
class SeriesReport:
    kind: str
    k: int
    terms: tuple
    cls: int | None

    @property
    def dims(self):
        return tuple(term.dim for term in self.terms)


def _series_terms(a: HomAlgebra, k: int, kind: str, start: Subspace):
    full = full_space(a)
    terms = [start]
    while len(terms) <= a.dim + 1:
        current = terms[-1]
        if current.is_zero():
            break
        if kind == "derived":
            parts = [current] * k + [full] * (a.arity - k)
        else:
            parts = [current] + [start] * (k - 1) + [full] * (a.arity - k)
        nxt = bracket_span(a, parts)
        if nxt == current:
            break
        terms.append(nxt)
    cls = len(terms) - 1 if terms[-1].is_zero() else None
    return tuple(terms), cls


def series(a: HomAlgebra, k: int, kind: str = "derived", ideal: Subspace | None = None) -> SeriesReport:
    """The k-derived or k-central descending series starting from an ideal.

    The ideal defaults to the whole algebra; the ideal property is not
    enforced, since the predicates are also applied to weak structures.
    """

    if kind not in ("derived", "central"):
        raise ValueError(f"unknown series kind {kind!r}")
    if not 2 <= k <= a.arity:
        raise ValueError(f"series index k must be within 2..{a.arity}, got {k}")
    start = full_space(a) if ideal is None else ideal
    assert start.ambient_dim == a.dim
    terms, cls = _series_terms(a, k, kind, start)
    if kind == "central" and start == full_space(a):
        # All central descending series of the whole algebra coincide.
        for other_k in range(2, a.arity + 1):
            if other_k == k:
                continue
            other_terms, other_cls = _series_terms(a, other_k, kind, start)
            if other_terms != terms or other_cls != cls:
                raise InternalCheckError(
                    f"central series differ between k={k} and k={other_k}"
                )
    return SeriesReport(kind, k, terms, cls)


def center(a: HomAlgebra) -> Subspace:
    """Elements z with [x_1, ..., x_{n-1}, z] = 0 for all x_i."""
    rows = []
    for combo in combinations(range(1, a.dim + 1), a.arity - 1):
        images = [a.bracket.eval_basis(combo + (j,)) for j in range(1, a.dim + 1)]
        for p in range(a.dim):
            rows.append([images[j][p] for j in range(a.dim)])
    if not rows:
        return full_space(a)
    kernel = Matrix(rows, a.field).kernel()
    return Subspace.from_vectors(kernel, a.dim, a.field)


@dataclass(frozen=True)
class SubspaceStatus:
    weak_subalgebra: bool
    hom_subalgebra: bool
    weak_ideal: bool
    hom_ideal: bool


def subspace_status(a: HomAlgebra, w: Subspace) -> SubspaceStatus:
    """Subalgebra and ideal predicates of a subspace, in weak and twisted form."""
    assert w.ambient_dim == a.dim, "subspace has wrong ambient dimension"
    closed = w.contains_subspace(bracket_span(a, [w] * a.arity))
    invariant = all(w.contains_subspace(w.image(alpha)) for alpha in a.twists)
    absorbing = w.contains_subspace(
        bracket_span(a, [full_space(a)] * (a.arity - 1) + [w])
    )
    status = SubspaceStatus(
        weak_subalgebra=closed,
        hom_subalgebra=closed and invariant,
        weak_ideal=absorbing,
        hom_ideal=absorbing and invariant,
    )
    if status.hom_ideal and not status.weak_ideal:
        raise InternalCheckError("hom_ideal without weak_ideal")
    if status.weak_ideal and not status.weak_subalgebra:
        raise InternalCheckError("absorbing subspace not closed under the bracket")
    return status


@dataclass(frozen=True)
class NilpotencyReport:
    nilpotent: bool
    cls: int | None
    center_dim: int


def nilpotency_profile(a: HomAlgebra) -> NilpotencyReport:
    """Nilpotency verdict and class from the central descending series.

    Cross-checks along the way: a nonzero nilpotent algebra has nonzero
    center; in dimension n+1 the center has dimension 0, 1 or n+1, and a
    nilpotent non-abelian algebra has a 1-dimensional center equal to
    [A, ..., A]; class p means the (p-1)-st term is nonzero and central.
    """

    report = series(a, a.arity, "central")
    z = center(a)
    nilpotent = report.cls is not None
    abelian = a.bracket.is_zero()
    if nilpotent and a.dim > 0 and z.is_zero():
        raise InternalCheckError("nilpotent algebra with trivial center")
    if a.dim == a.arity + 1:
        if z.dim not in (0, 1, a.dim):
            raise InternalCheckError(f"center dimension {z.dim} out of range")
        d1 = bracket_span(a, [full_space(a)] * a.arity)
        if (nilpotent and not abelian) != (z.dim == 1 and d1 == z):
            raise InternalCheckError(
                "nilpotent non-abelian does not match center characterization"
            )
    if nilpotent and report.cls >= 1:
        last_nonzero = report.terms[report.cls - 1]
        if last_nonzero.is_zero() or not z.contains_subspace(last_nonzero):
            raise InternalCheckError("last nonzero central term is not central")
    return NilpotencyReport(nilpotent, report.cls, z.dim)
