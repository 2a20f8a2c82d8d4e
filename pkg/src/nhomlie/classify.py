"""Classification engine for the 4-dimensional ternary family.

The family is determined by the two coefficient vectors u = c(1,2,4,*) and
v = c(1,3,4,*).  Its isomorphisms are exactly the basis changes whose matrix
P commutes with the fixed twist, i.e.

        [p11   0    0   p14]
        [p21  p33  p23  p24]        det P = p11 * p33^3,
        [ 0    0   p33  p23]
        [ 0    0    0   p33]

acting on the bracket matrix by B' = det(P)^-1 P B P^T.  The engine computes
the 2x2 minor invariants d(p,q), walks the five-subclass decision tree,
reduces any nonzero instance to one of 26 canonical cases by an explicitly
constructed P, and decides isomorphism by comparing canonical forms.  The
free scaling parameter p33 is fixed so that the case's square-class residual
(when there is one) becomes its canonical square-class representative, which
makes equality of canonical forms literal matrix equality.

Every reduction is verified on the spot: P must commute with the twist, be
invertible, and the congruence must land exactly on the case's shape mask.
Any mismatch raises InternalCheckError rather than producing a wrong answer.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import partial
from itertools import product

from .fields import QQ, get_field, sqrt_exact, square_class
from .homalg import BMatrix, FamilyAlgebra, family_alpha
from .identity import InternalCheckError, check_multiplicative
from .linalg import Matrix
from .structure import bracket_span, center, full_space, nilpotency_profile, series


# ------------------------------------------------------------------ invariants


@dataclass(frozen=True)
class MinorTable:
    """The minors d(p,q) = u_p v_q - u_q v_p and the matrix M of the four
    that drive the subclass split."""

    d: dict
    m: Matrix

    def __getitem__(self, pq):
        p, q = pq
        return self.d[(p, q)]


def minors(f: FamilyAlgebra) -> MinorTable:
    u, v = f.c124, f.c134
    d = {}
    for p in range(1, 5):
        for q in range(p + 1, 5):
            d[(p, q)] = u[p - 1] * v[q - 1] - u[q - 1] * v[p - 1]
    m = Matrix([[d[(2, 4)], d[(3, 4)]], [d[(1, 2)], d[(1, 3)]]], f.field)
    if m.det() != d[(2, 3)] * d[(1, 4)]:
        raise InternalCheckError("minor identity det M = d(2,3) d(1,4) failed")
    return MinorTable(d, m)


# ------------------------------------------------------------------ subclasses


@dataclass(frozen=True)
class SubclassLabel:
    name: str
    solvable2: int | None
    solvable3: int | None
    nilpotency_class: int | None
    center_dim: int


# Expected profile per subclass: (solvable2, solvable3, nilpotency class,
# center dimension); computed values must match exactly.
_EXPECTED_PROFILE = {
    "Abelian": (1, 1, 1, 4),
    "S1": (None, 2, None, 0),
    "S2": (3, 2, None, 0),
    "S3": (2, 2, None, 0),
    "S4": (2, 2, None, 1),
    "S5": (2, 2, 2, 1),
}


def subclass(f: FamilyAlgebra) -> SubclassLabel:
    """Decision tree on rank and minors, cross-checked against the computed
    structural profile."""

    alg = f.to_hom()
    rank_b = f.bmatrix().matrix.rank()
    table = minors(f)
    if rank_b == 0:
        name = "Abelian"
    elif rank_b == 2:
        if table[(1, 4)]:
            name = "S1"
        elif not table.m.is_zero():
            name = "S2"
        else:
            name = "S3"
    else:
        d1 = bracket_span(alg, [full_space(alg)] * 3)
        name = "S5" if center(alg) == d1 else "S4"
    solvable2 = series(alg, 2, "derived").cls
    solvable3 = series(alg, 3, "derived").cls
    profile = nilpotency_profile(alg)
    actual = (solvable2, solvable3, profile.cls, profile.center_dim)
    if actual != _EXPECTED_PROFILE[name]:
        raise InternalCheckError(
            f"subclass {name} expected profile {_EXPECTED_PROFILE[name]}, got {actual}"
        )
    return SubclassLabel(name, solvable2, solvable3, profile.cls, profile.center_dim)


def is_multiplicative_family(f: FamilyAlgebra) -> bool:
    """Coefficient criterion: both brackets lie in <e1, e2>."""
    verdict = not (f.c124[2] or f.c124[3] or f.c134[2] or f.c134[3])
    direct = check_multiplicative(f.to_hom())
    if verdict != direct:
        raise InternalCheckError(
            f"coefficient test gives {verdict}, morphism check {direct}"
        )
    return verdict


# ------------------------------------------------------------ canonical cases


@dataclass(frozen=True)
class CaseSpec:
    u_mask: tuple
    v_mask: tuple
    sq: frozenset
    nonzero: frozenset
    ratios: dict
    flags: tuple


def _spec(u_mask, v_mask, sq=(), nonzero=(), ratios=None, flags=()):
    return CaseSpec(
        tuple(u_mask), tuple(v_mask), frozenset(sq), frozenset(nonzero),
        ratios or {}, tuple(flags),
    )


# Mask tokens: "0" and "1" are pinned entries, "free" is unconstrained
# (covered by a ratio residual), anything else names the residual stored at
# that position.  Ratio residuals are quotients of two positions, written
# ("u"|"v", index).
_CASES = {
    "1a": _spec("0001", ("c134_1", "0", "c134_3", "c134_4"),
                sq={"c134_1"}, nonzero={"c134_1"}),
    "1b": _spec(("c124_1", "0", "1", "0"), ("0", "0", "0", "c134_4"),
                sq={"c124_1"}, nonzero={"c124_1", "c134_4"}, flags=("inferred",)),
    "1c": _spec(("c124_1", "0", "1", "0"), ("0", "0", "c134_3", "1"),
                sq={"c124_1"}, nonzero={"c124_1"}, flags=("inferred",)),
    "1d": _spec(("c124_1", "0", "0", "0"), "0001",
                sq={"c124_1"}, nonzero={"c124_1"}),
    "2a": _spec("0001", ("0", "c134_2", "c134_3", "c134_4")),
    "2b": _spec(("c124_1", "0", "1", "0"), ("free", "c134_2", "0", "0"),
                sq={"c124_1"}, nonzero={"c124_1"},
                ratios={"c134_1/c124_1": (("v", 0), ("u", 0))}, flags=("inferred",)),
    "2c": _spec(("c124_1", "0", "0", "0"), ("free", "0", "1", "0"),
                sq={"c124_1"}, nonzero={"c124_1"},
                ratios={"c134_1/c124_1": (("v", 0), ("u", 0))}, flags=("inferred",)),
    "2d": _spec(("c124_1", "0", "0", "0"), "0100",
                sq={"c124_1"}, nonzero={"c124_1"}),
    "2e": _spec("0010", ("0", "0", "c134_3", "c134_4"), nonzero={"c134_4"}),
    "2f": _spec(("0", "c124_2", "0", "0"), "0001",
                nonzero={"c124_2"}, flags=("inferred",)),
    "2g": _spec(("0", "c124_2", "0", "0"), ("c134_1", "0", "1", "0"),
                sq={"c134_1"}, nonzero={"c124_2", "c134_1"}),
    "2h": _spec("0100", ("c134_1", "0", "0", "0"),
                sq={"c134_1"}, nonzero={"c134_1"}),
    "2i": _spec(("0", "c124_2", "1", "0"), ("c134_1", "0", "0", "0"),
                sq={"c134_1"}, nonzero={"c134_1"},
                flags=("case gap in source theorem",)),
    "3a": _spec(("0", "c124_2", "1", "0"), ("0", "c134_2", "0", "0"),
                nonzero={"c134_2"}, flags=("inferred",)),
    "3b": _spec(("0", "c124_2", "0", "0"), "0010",
                nonzero={"c124_2"}, flags=("inferred",)),
    "3c": _spec("0100", ("0", "c134_2", "1", "0"), flags=("inferred",)),
    "4a": _spec("0001", ("0", "0", "0", "c134_4")),
    "4b": _spec(("c124_1", "0", "1", "0"), "0000",
                sq={"c124_1"}, nonzero={"c124_1"}, flags=("inferred",)),
    "4c": _spec("0010", ("0", "0", "c134_3", "0"),
                nonzero={"c134_3"}, flags=("inferred",)),
    "4d": _spec(("c124_1", "0", "0", "0"), "0000",
                sq={"c124_1"}, nonzero={"c124_1"}, flags=("inferred",)),
    "4e": _spec("0100", "0000"),
    "4f": _spec("0000", "0001"),
    "4g": _spec("0000", ("c134_1", "0", "1", "0"), sq={"c134_1"}),
    "4h": _spec("0000", ("c134_1", "0", "0", "0"),
                sq={"c134_1"}, nonzero={"c134_1"}),
    "5a": _spec("0000", "0100"),
    "5b": _spec("0010", "0000"),
}


def _dependency_coefficient(u, v, field):
    """lambda with v = lambda * u for a rank-one pair with u nonzero."""
    for i in range(4):
        if u[i]:
            lam = v[i] / u[i]
            assert all(v[j] == lam * u[j] for j in range(4)), "pair is not rank one"
            return lam
    raise AssertionError("u is zero")


def _dispatch(f: FamilyAlgebra, name: str):
    """Case id and the P-entry builder for an instance of a known subclass.

    A builder maps the scaling parameter p33 to the dict of remaining P
    entries; entries not mentioned default to 0 (and p11 to 1).
    """

    u, v = f.c124, f.c134
    u1, u2, u3, u4 = u
    v1, v2, v3, v4 = v
    flags = ()

    if name == "S1":
        if u4:
            def build(p33):
                p11 = u4 / p33
                p23 = -p33 * u3 / u4
                p14 = -p11 * u1 / u4
                r1 = -(p33 * u2 + p23 * u3)
                r2 = -(p33 * v2 + p23 * v3)
                det = u1 * v4 - u4 * v1
                p21 = (r1 * v4 - r2 * u4) / det
                p24 = (u1 * r2 - v1 * r1) / det
                return dict(p11=p11, p21=p21, p23=p23, p14=p14, p24=p24)
            return "1a", build, flags
        if u3 and u3 != v4:
            def build(p33):
                p11 = u3 / p33
                p23 = p33 * v3 / (u3 - v4)
                p21 = -(p33 * u2 + p23 * u3) / u1
                p14 = (p23 * p11 * u1 / p33 - p11 * v1) / v4
                p24 = -(p21 * v1 + p33 * v2 + p23 * v3) / v4
                return dict(p11=p11, p21=p21, p23=p23, p14=p14, p24=p24)
            return "1b", build, flags
        if u3:
            def build(p33):
                p11 = u3 / p33
                p21 = -p33 * u2 / u1
                p14 = -p11 * v1 / v4
                p24 = -(p21 * v1 + p33 * v2) / v4
                return dict(p11=p11, p21=p21, p14=p14, p24=p24)
            return "1c", build, flags

        def build(p33):
            p11 = v4 / p33
            p23 = -p33 * v3 / v4
            p21 = -p33 * u2 / u1
            p14 = p11 * (p23 * u1 / p33 - v1) / v4
            p24 = -(p21 * v1 + p33 * v2 + p23 * v3) / v4
            return dict(p11=p11, p21=p21, p23=p23, p14=p14, p24=p24)
        return "1d", build, flags

    if name == "S2":
        if u1 or u4:
            if u4:
                def build(p33):
                    p11 = u4 / p33
                    p23 = -p33 * u3 / u4
                    p14 = -p11 * u1 / u4
                    p24 = -(p33 * u2 + p23 * u3) / u4
                    return dict(p11=p11, p23=p23, p14=p14, p24=p24)
                return "2a", build, flags
            if u3:
                def build(p33):
                    p11 = u3 / p33
                    p23 = p33 * v3 / u3
                    p21 = -(p33 * u2 + p23 * u3) / u1
                    return dict(p11=p11, p21=p21, p23=p23)
                return "2b", build, flags
            if v3:
                def build(p33):
                    p11 = v3 / p33
                    p21 = -p33 * u2 / u1
                    p23 = -(p21 * v1 + p33 * v2) / v3
                    return dict(p11=p11, p21=p21, p23=p23)
                return "2c", build, flags

            def build(p33):
                d12 = u1 * v2 - u2 * v1
                p11 = d12 / (u1 * p33)
                p21 = -p33 * u2 / u1
                p23 = p33 * v1 / u1
                return dict(p11=p11, p21=p21, p23=p23)
            return "2d", build, flags
        if u3:
            if v4:
                def build(p33):
                    p11 = u3 / p33
                    p23 = -p33 * u2 / u3
                    p14 = -p11 * v1 / v4
                    p24 = -(p33 * v2 + p23 * v3) / v4
                    return dict(p11=p11, p23=p23, p14=p14, p24=p24)
                return "2e", build, flags

            def build(p33):
                p11 = u3 / p33
                p23 = p33 * v3 / u3
                p21 = p33 * (u2 * v3 - u3 * v2) / (u3 * v1)
                return dict(p11=p11, p21=p21, p23=p23)
            return "2i", build, flags
        if v4:
            def build(p33):
                p11 = v4 / p33
                p23 = -p33 * v3 / v4
                p14 = -p11 * v1 / v4
                p24 = -(p33 * v2 + p23 * v3 - p23 * u2) / v4
                return dict(p11=p11, p23=p23, p14=p14, p24=p24)
            return "2f", build, flags
        if v3:
            def build(p33):
                p11 = v3 / p33
                p21 = -p33 * v2 / v1
                return dict(p11=p11, p21=p21)
            return "2g", build, flags

        def build(p33):
            p11 = u2 / p33
            p21 = -p33 * v2 / v1
            return dict(p11=p11, p21=p21)
        return "2h", build, flags

    if name == "S3":
        if u3:
            def build(p33):
                p11 = u3 / p33
                p23 = p33 * v3 / u3
                return dict(p11=p11, p23=p23)
            return "3a", build, flags
        if v3 != u2:
            def build(p33):
                p11 = v3 / p33
                p23 = p33 * v2 / (u2 - v3)
                return dict(p11=p11, p23=p23)
            return "3b", build, flags

        def build(p33):
            return dict(p11=u2 / p33)
        return "3c", build, flags

    if name == "S4":
        if any(u):
            lam = _dependency_coefficient(u, v, f.field)
            if u4:
                def build(p33):
                    p11 = u4 / p33
                    p23 = -p33 * u3 / u4
                    p14 = -p11 * u1 / u4
                    p24 = -(p33 * u2 + p23 * u3) / u4
                    return dict(p11=p11, p23=p23, p14=p14, p24=p24)
                return "4a", build, flags
            if u3 and u1:
                def build(p33):
                    p11 = u3 / p33
                    p23 = lam * p33
                    p21 = -p33 * (u2 + lam * u3) / u1
                    return dict(p11=p11, p21=p21, p23=p23)
                return "4b", build, flags
            if u3:
                def build(p33):
                    p11 = u3 / p33
                    p23 = -p33 * u2 / u3
                    return dict(p11=p11, p23=p23)
                return "4c", build, flags
            if u1:
                def build(p33):
                    p23 = lam * p33
                    p21 = -p33 * u2 / u1
                    return dict(p21=p21, p23=p23)
                return "4d", build, flags

            def build(p33):
                return dict(p11=u2 / p33, p23=lam * p33)
            return "4e", build, flags
        if v4:
            def build(p33):
                p11 = v4 / p33
                p23 = -p33 * v3 / v4
                p14 = -p11 * v1 / v4
                p24 = -(p33 * v2 + p23 * v3) / v4
                return dict(p11=p11, p23=p23, p14=p14, p24=p24)
            return "4f", build, flags
        if v3:
            if not v1:
                flags = ("case gap in source theorem",)

            def build(p33):
                p11 = v3 / p33
                p23 = -p33 * v2 / v3
                return dict(p11=p11, p23=p23)
            return "4g", build, flags

        def build(p33):
            return dict(p21=-p33 * v2 / v1)
        return "4h", build, flags

    assert name == "S5"
    if any(u):
        def build(p33):
            p11 = u3 / p33
            p23 = -p33 * u2 / u3
            return dict(p11=p11, p23=p23)
        return "5b", build, flags

    def build(p33):
        return dict(p11=v2 / p33)
    return "5a", build, flags


def commutant_matrix(field, p33, p11=None, p21=0, p23=0, p14=0, p24=0) -> Matrix:
    """Assemble the general matrix commuting with the family twist."""
    zero = field.zero()
    p33 = field.coerce(p33)
    p11 = p33 if p11 is None else field.coerce(p11)
    p21, p23 = field.coerce(p21), field.coerce(p23)
    p14, p24 = field.coerce(p14), field.coerce(p24)
    return Matrix(
        [
            [p11, zero, zero, p14],
            [p21, p33, p23, p24],
            [zero, zero, p33, p23],
            [zero, zero, zero, p33],
        ],
        field,
    )


def congruent_bmatrix(p: Matrix, bm: BMatrix) -> BMatrix:
    """B' = det(P)^-1 P B P^T."""
    field = p.field
    det = p.det()
    assert det, "congruence by a singular matrix"
    return BMatrix(bm.n, (p @ bm.matrix @ p.transpose()).scale(field.one() / det))


@dataclass(frozen=True)
class CanonicalForm:
    case_id: str
    subclass: str
    residuals: dict
    square_class_params: dict
    canonical_family: FamilyAlgebra
    canonical_b: BMatrix
    witness_p: Matrix
    flags: tuple


def _extract(case_id: str, spec: CaseSpec, fam: FamilyAlgebra, p: Matrix, original: FamilyAlgebra):
    """Verify the shape mask and pull out named residuals."""
    field = fam.field
    one = field.one()
    values = {"u": fam.c124, "v": fam.c134}
    residuals = {}
    for vec_name, mask in (("u", spec.u_mask), ("v", spec.v_mask)):
        for idx, token in enumerate(mask):
            value = values[vec_name][idx]
            if token == "0":
                if value:
                    raise InternalCheckError(
                        f"case {case_id}: entry {vec_name}[{idx + 1}] should be 0, "
                        f"got {field.format(value)}; P={p!r}, B={original.bmatrix()!r}, "
                        f"B'={fam.bmatrix()!r}"
                    )
            elif token == "1":
                if value != one:
                    raise InternalCheckError(
                        f"case {case_id}: entry {vec_name}[{idx + 1}] should be 1, "
                        f"got {field.format(value)}; P={p!r}"
                    )
            elif token != "free":
                residuals[token] = value
    for ratio_name, (num_pos, den_pos) in spec.ratios.items():
        num = values[num_pos[0]][num_pos[1]]
        den = values[den_pos[0]][den_pos[1]]
        assert den, f"case {case_id}: zero denominator for {ratio_name}"
        residuals[ratio_name] = num / den
    for nonzero_name in spec.nonzero:
        if not residuals[nonzero_name]:
            raise InternalCheckError(
                f"case {case_id}: residual {nonzero_name} must be nonzero"
            )
    return residuals


def canonical_reduce(f: FamilyAlgebra) -> CanonicalForm:
    """Reduce a nonabelian instance to its canonical case representative.

    The square-class residual, when the case has one, is normalized to its
    canonical square-class representative by the choice of p33; with that,
    two instances are isomorphic exactly when their canonical forms are
    literally equal.
    """

    return _canonical_reduce(f, subclass(f))


def _canonical_reduce(f: FamilyAlgebra, label: SubclassLabel) -> CanonicalForm:
    if label.name == "Abelian":
        raise ValueError("abelian: the zero bracket has no canonical case")
    field = f.field
    case_id, build, extra_flags = _dispatch(f, label.name)
    spec = _CASES[case_id]
    alpha = family_alpha(field)
    bm = f.bmatrix()

    def reduce_at(p33):
        p = commutant_matrix(field, p33, **build(field.coerce(p33)))
        if p @ alpha != alpha @ p:
            raise InternalCheckError(f"case {case_id}: P does not commute with the twist")
        b2 = congruent_bmatrix(p, bm)
        try:
            fam2 = FamilyAlgebra.from_bmatrix(b2)
        except ValueError as err:
            raise InternalCheckError(
                f"case {case_id}: congruence left the family shape: {err}"
            ) from err
        return p, b2, fam2

    p, b2, fam2 = reduce_at(field.one())
    residuals = _extract(case_id, spec, fam2, p, f)
    if spec.sq:
        (sq_name,) = spec.sq
        value = residuals[sq_name]
        if value:
            scale = sqrt_exact(value / square_class(value))
            if scale != field.one():
                p, b2, fam2 = reduce_at(scale)
                residuals = _extract(case_id, spec, fam2, p, f)
                if residuals[sq_name] != square_class(value):
                    raise InternalCheckError(
                        f"case {case_id}: square-class normalization failed"
                    )
    square_class_params = {
        name: (residuals[name] if residuals[name] else None) for name in spec.sq
    }
    return CanonicalForm(
        case_id=case_id,
        subclass=label.name,
        residuals=residuals,
        square_class_params=square_class_params,
        canonical_family=fam2,
        canonical_b=b2,
        witness_p=p,
        flags=spec.flags + extra_flags,
    )


# ------------------------------------------------------------------ isomorphism


def isomorphic(f: FamilyAlgebra, g: FamilyAlgebra):
    """Decide isomorphism; on success return a verified witness matrix T
    with B_g = det(T)^-1 T B_f T^t and T commuting with the twist."""

    if f.bmatrix().matrix.is_zero() or g.bmatrix().matrix.is_zero():
        raise ValueError("abelian input: isomorphism classes need a nonzero bracket")
    assert f.field is g.field, "instances live over different fields"
    cf = canonical_reduce(f)
    cg = canonical_reduce(g)
    if cf.case_id != cg.case_id or cf.canonical_b != cg.canonical_b:
        return False, None
    t = cg.witness_p.inverse() @ cf.witness_p
    alpha = family_alpha(f.field)
    if t @ alpha != alpha @ t:
        raise InternalCheckError("isomorphism witness does not commute with the twist")
    if congruent_bmatrix(t, f.bmatrix()) != g.bmatrix():
        raise InternalCheckError("isomorphism witness fails the congruence")
    return True, t


# ------------------------------------------------------------------- the atlas


@dataclass(frozen=True)
class ClassReport:
    subclass: str
    case_id: str | None
    solvable2: int | None
    solvable3: int | None
    nilpotency_class: int | None
    center_dim: int
    multiplicative: bool
    flags: tuple


def classify_report(f: FamilyAlgebra) -> ClassReport:
    label = subclass(f)
    multiplicative = is_multiplicative_family(f)
    if label.name == "Abelian":
        case_id, flags = None, ()
    else:
        form = _canonical_reduce(f, label)
        case_id, flags = form.case_id, form.flags
    return ClassReport(
        subclass=label.name,
        case_id=case_id,
        solvable2=label.solvable2,
        solvable3=label.solvable3,
        nilpotency_class=label.nilpotency_class,
        center_dim=label.center_dim,
        multiplicative=multiplicative,
        flags=flags,
    )


def _report_for_params(field_name, params):
    field = get_field(field_name)
    fam = FamilyAlgebra(params[:4], params[4:], field)
    return params, classify_report(fam)


def enumerate_grid(values, field=QQ, subclass_filter=None, workers=1):
    """Classify every family instance with parameters from the grid.

    Yields (FamilyAlgebra, ClassReport) in deterministic lexicographic order
    of the 8 parameters (c124 then c134), regardless of worker count.
    """

    scalars = [field.coerce(x) for x in values]
    combos = product(scalars, repeat=8)
    if workers <= 1:
        results = map(partial(_report_for_params, field.name), combos)
    else:
        from multiprocessing import Pool

        pool = Pool(workers)
        results = pool.imap(
            partial(_report_for_params, field.name), combos, chunksize=256
        )
    try:
        for params, report in results:
            if subclass_filter is not None and report.subclass != subclass_filter:
                continue
            yield FamilyAlgebra(params[:4], params[4:], field), report
    finally:
        if workers > 1:
            pool.close()
            pool.join()
