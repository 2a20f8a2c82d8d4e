import random
from fractions import Fraction

import pytest

from nhomlie.classify import (
    canonical_reduce,
    classify_report,
    congruent_bmatrix,
    enumerate_grid,
    is_multiplicative_family,
    isomorphic,
    minors,
    subclass,
)
from nhomlie.fields import QI, QQ
from nhomlie.homalg import FamilyAlgebra, family_alpha
from nhomlie.linalg import Matrix

from support import CASE_IDS, random_commutant, sample_case


def fam(u, v, field=QQ):
    return FamilyAlgebra(u, v, field)


def transformed(f, p):
    return FamilyAlgebra.from_bmatrix(congruent_bmatrix(p, f.bmatrix()))


# ----------------------------------------------------------------- invariants


def test_minors_hand_values():
    table = minors(fam((1, 2, 3, 4), (5, 6, 7, 8)))
    assert table[(1, 2)] == -4
    assert table[(1, 3)] == -8
    assert table[(1, 4)] == -12
    assert table[(2, 3)] == -4
    assert table[(2, 4)] == -8
    assert table[(3, 4)] == -4
    assert table.m == Matrix([[-8, -4], [-4, -8]], QQ)


def test_minors_skew():
    rng = random.Random(1)
    for _ in range(20):
        f = fam([rng.randint(-3, 3) for _ in range(4)],
                [rng.randint(-3, 3) for _ in range(4)])
        table = minors(f)
        u, v = f.c124, f.c134
        for (p, q), value in table.d.items():
            assert value == -(u[q - 1] * v[p - 1] - u[p - 1] * v[q - 1])


# ----------------------------------------------------------------- subclasses


REPRESENTATIVES = {
    "S1": ((1, 0, 0, 0), (0, 0, 0, 1)),
    "S2": ((0, 0, 0, 1), (0, 1, 0, 0)),
    "S3": ((0, 1, 0, 0), (0, 0, 2, 0)),
    "S4": ((0, 0, 0, 0), (0, 0, 0, 1)),
    "S5": ((0, 0, 0, 0), (0, 1, 0, 0)),
}

PROFILES = {
    "S1": (None, 2, None, 0),
    "S2": (3, 2, None, 0),
    "S3": (2, 2, None, 0),
    "S4": (2, 2, None, 1),
    "S5": (2, 2, 2, 1),
}


@pytest.mark.parametrize("name", sorted(REPRESENTATIVES))
def test_subclass_representatives(name):
    u, v = REPRESENTATIVES[name]
    label = subclass(fam(u, v))
    assert label.name == name
    profile = (label.solvable2, label.solvable3,
               label.nilpotency_class, label.center_dim)
    assert profile == PROFILES[name]


def test_subclass_abelian():
    label = subclass(fam((0, 0, 0, 0), (0, 0, 0, 0)))
    assert label.name == "Abelian"
    assert label.center_dim == 4


def test_subclass_d14_wins_over_vanishing_m():
    # u = e1, v = e4 has M = 0 yet d(1,4) = 1; it belongs to S1, where the
    # derived pair stabilizes at <e1, e4> without reaching zero.
    label = subclass(fam((1, 0, 0, 0), (0, 0, 0, 1)))
    assert label.name == "S1"


def test_subclass_rank_one_split():
    assert subclass(fam((0, 2, 1, 0), (0, -4, -2, 0))).name == "S5"
    assert subclass(fam((0, 2, 1, 0), (0, 4, 2, 0))).name == "S4"


def test_multiplicative_examples():
    assert is_multiplicative_family(fam((1, 0, 0, 0), (0, 1, 0, 0)))
    assert not is_multiplicative_family(fam((0, 0, 1, 0), (0, 0, 0, 0)))
    assert not is_multiplicative_family(fam((1, 0, 0, 0), (0, 0, 0, 1)))


def test_multiplicative_fuzz_routes_agree():
    # the coefficient test is cross-checked against the morphism check inside
    rng = random.Random(2)
    seen = set()
    for trial in range(60):
        u = [rng.randint(-2, 2) for _ in range(4)]
        v = [rng.randint(-2, 2) for _ in range(4)]
        if trial % 2:
            u[2] = u[3] = v[2] = v[3] = 0
        seen.add(is_multiplicative_family(fam(u, v)))
    assert seen == {True, False}


# ------------------------------------------------------------ canonical forms


def test_canonical_reduce_rejects_abelian():
    with pytest.raises(ValueError, match="abelian"):
        canonical_reduce(fam((0, 0, 0, 0), (0, 0, 0, 0)))


def test_canonical_golden_1d():
    form = canonical_reduce(fam((4, 0, 0, 0), (0, 0, 0, 1)))
    assert form.case_id == "1d"
    assert form.subclass == "S1"
    # 4 is a rational square, so the residual normalizes to 1
    assert form.residuals == {"c124_1": Fraction(1)}
    assert form.square_class_params == {"c124_1": Fraction(1)}
    assert form.canonical_family.c124 == (1, 0, 0, 0)
    assert form.canonical_family.c134 == (0, 0, 0, 1)


def test_canonical_golden_4a():
    form = canonical_reduce(fam((0, 0, 6, 2), (0, 0, 0, 0)))
    assert form.case_id == "4a"
    assert form.residuals == {"c134_4": Fraction(3)}
    assert form.canonical_family.c124 == (0, 0, 0, 1)
    assert form.canonical_family.c134 == (0, 0, 0, 3)


def test_canonical_golden_5a_identity_witness():
    form = canonical_reduce(fam((0, 0, 0, 0), (0, 1, 0, 0)))
    assert form.case_id == "5a"
    assert form.witness_p == Matrix.identity(4, QQ)
    assert form.canonical_b == fam((0, 0, 0, 0), (0, 1, 0, 0)).bmatrix()


def test_canonical_gap_flags():
    form = canonical_reduce(fam((0, 1, 2, 0), (3, 0, 1, 0)))
    assert form.case_id == "2i"
    assert "case gap in source theorem" in form.flags

    gap = canonical_reduce(fam((0, 0, 0, 0), (0, 2, 3, 0)))
    assert gap.case_id == "4g"
    assert "case gap in source theorem" in gap.flags
    assert gap.square_class_params == {"c134_1": None}

    printed = canonical_reduce(fam((0, 0, 0, 0), (2, 2, 3, 0)))
    assert printed.case_id == "4g"
    assert "case gap in source theorem" not in printed.flags
    assert printed.square_class_params == {"c134_1": Fraction(2)}


def test_canonical_square_class_normalization_gaussian():
    # -1 is a square in Q(i), so the 1d residual collapses to 1
    form = canonical_reduce(fam((-1, 0, 0, 0), (0, 0, 0, 1), QI))
    assert form.residuals["c124_1"] == QI.one()


@pytest.mark.parametrize("case_id", CASE_IDS)
def test_case_reduction_and_witness(case_id):
    rng = random.Random(sum(ord(c) for c in case_id))
    alpha = family_alpha(QQ)
    for _ in range(10):
        f = sample_case(case_id, rng)
        form = canonical_reduce(f)
        assert form.case_id == case_id
        p = form.witness_p
        assert p.det() != 0
        assert p @ alpha == alpha @ p
        assert congruent_bmatrix(p, f.bmatrix()) == form.canonical_b
        assert form.canonical_family.bmatrix() == form.canonical_b


@pytest.mark.parametrize("case_id", CASE_IDS)
def test_canonical_idempotent(case_id):
    rng = random.Random(len(case_id) * 997 + ord(case_id[0]))
    for _ in range(5):
        form = canonical_reduce(sample_case(case_id, rng))
        again = canonical_reduce(form.canonical_family)
        assert again.case_id == form.case_id
        assert again.canonical_b == form.canonical_b
        assert again.residuals == form.residuals


def test_invariance_under_commutant_transforms():
    rng = random.Random(7)
    for _ in range(40):
        case_id = rng.choice(CASE_IDS)
        f = sample_case(case_id, rng)
        form = canonical_reduce(f)
        g = transformed(f, random_commutant(rng))
        other = canonical_reduce(g)
        assert other.case_id == form.case_id
        assert other.canonical_b == form.canonical_b
        assert other.residuals == form.residuals
        assert other.square_class_params == form.square_class_params


# --------------------------------------------------------------- isomorphism


def check_witness(t, f, g):
    alpha = family_alpha(f.field)
    assert t.det() != 0
    assert t @ alpha == alpha @ t
    assert congruent_bmatrix(t, f.bmatrix()) == g.bmatrix()


def test_isomorphic_square_class_pairs():
    one = fam((1, 0, 0, 0), (0, 0, 0, 1))
    four = fam((4, 0, 0, 0), (0, 0, 0, 1))
    two = fam((2, 0, 0, 0), (0, 0, 0, 1))

    verdict, witness = isomorphic(one, four)
    assert verdict
    check_witness(witness, one, four)

    verdict, witness = isomorphic(one, two)
    assert not verdict and witness is None

    g_one = fam((1, 0, 0, 0), (0, 0, 0, 1), QI)
    g_minus = fam((-1, 0, 0, 0), (0, 0, 0, 1), QI)
    verdict, witness = isomorphic(g_one, g_minus)
    assert verdict
    check_witness(witness, g_one, g_minus)


def test_isomorphic_transform_pairs():
    rng = random.Random(13)
    for _ in range(25):
        case_id = rng.choice(CASE_IDS)
        f = sample_case(case_id, rng)
        g = transformed(f, random_commutant(rng))
        verdict, witness = isomorphic(f, g)
        assert verdict
        check_witness(witness, f, g)


def test_non_isomorphic_different_residual():
    a = fam((0, 0, 1, 2), (0, 0, 0, 0))  # case 4a, residual 1/2
    b = fam((0, 0, 3, 2), (0, 0, 0, 0))  # case 4a, residual 3/2
    ra = canonical_reduce(a).residuals["c134_4"]
    rb = canonical_reduce(b).residuals["c134_4"]
    assert ra != rb
    verdict, witness = isomorphic(a, b)
    assert not verdict and witness is None


def test_non_isomorphic_different_case():
    a = fam((0, 0, 1, 0), (0, 0, 0, 0))  # 5b
    b = fam((0, 0, 0, 0), (0, 1, 0, 0))  # 5a
    assert canonical_reduce(a).case_id != canonical_reduce(b).case_id
    verdict, _ = isomorphic(a, b)
    assert not verdict


def test_isomorphic_rejects_abelian():
    with pytest.raises(ValueError, match="abelian"):
        isomorphic(fam((0, 0, 0, 0), (0, 0, 0, 0)), fam((1, 0, 0, 0), (0, 0, 0, 1)))


# ------------------------------------------------------------------- the atlas


def test_classify_report_5a():
    report = classify_report(fam((0, 0, 0, 0), (0, 1, 0, 0)))
    assert report.subclass == "S5"
    assert report.case_id == "5a"
    assert report.nilpotency_class == 2
    assert report.center_dim == 1
    assert report.multiplicative


def test_grid_counts_over_01():
    # Hand counts over {0,1}^8.  S1: d(1,4) = u1 v4 - u4 v1 is nonzero for
    # exactly 2 * 3 * 16 parameter choices.  S3 needs u, v supported on
    # coordinates 2,3 with an invertible 0/1 2x2 block: 6 instances.  Rank-one
    # pairs: v = 0, u = 0, or u = v, 45 in all, of which (0,0,1,0)/0 and
    # 0/(0,1,0,0) are the two nilpotent ones.
    records = list(enumerate_grid([0, 1]))
    assert len(records) == 256
    counts = {}
    for _, report in records:
        counts[report.subclass] = counts.get(report.subclass, 0) + 1
    assert counts == {"Abelian": 1, "S1": 96, "S2": 108, "S3": 6,
                      "S4": 43, "S5": 2}


def test_grid_filter_and_order():
    records = list(enumerate_grid([0, 1], subclass_filter="S5"))
    assert [r.case_id for _, r in records] == ["5a", "5b"]
    assert records[0][0].c134 == (0, 1, 0, 0)
    assert records[1][0].c124 == (0, 0, 1, 0)


def test_grid_parallel_matches_serial():
    serial = [(f.c124, f.c134, r) for f, r in enumerate_grid([0, 1])]
    parallel = [(f.c124, f.c134, r) for f, r in enumerate_grid([0, 1], workers=2)]
    assert serial == parallel


def test_grid_gaussian_field():
    records = list(enumerate_grid([0, QI.i()], field=QI, subclass_filter="S5"))
    assert len(records) == 2
    for f, report in records:
        assert report.nilpotency_class == 2
