"""Shared random generators for the classification tests.

Each sampler produces a family instance satisfying the preconditions of one
canonical case, with small integer parameters.  Used by both the unit tests
and the acceptance suite.
"""

from nhomlie.classify import commutant_matrix
from nhomlie.fields import QQ
from nhomlie.homalg import FamilyAlgebra

CASE_IDS = (
    "1a", "1b", "1c", "1d",
    "2a", "2b", "2c", "2d", "2e", "2f", "2g", "2h", "2i",
    "3a", "3b", "3c",
    "4a", "4b", "4c", "4d", "4e", "4f", "4g", "4h",
    "5a", "5b",
)


def _nz(rng, lo=-4, hi=4):
    while True:
        x = rng.randint(lo, hi)
        if x:
            return x


def sample_case(case_id, rng, field=QQ):
    """A random family instance that belongs to the given canonical case."""
    a = rng.randint  # shorthand for a bounded random integer

    if case_id == "1a":
        while True:
            u = (a(-4, 4), a(-4, 4), a(-4, 4), _nz(rng))
            v = (a(-4, 4), a(-4, 4), a(-4, 4), a(-4, 4))
            if u[0] * v[3] - u[3] * v[0]:
                return FamilyAlgebra(u, v, field)
    if case_id == "1b":
        while True:
            u3, v4 = _nz(rng), _nz(rng)
            if u3 != v4:
                return FamilyAlgebra(
                    (_nz(rng), a(-4, 4), u3, 0),
                    (a(-4, 4), a(-4, 4), a(-4, 4), v4), field)
    if case_id == "1c":
        u3 = _nz(rng)
        return FamilyAlgebra(
            (_nz(rng), a(-4, 4), u3, 0),
            (a(-4, 4), a(-4, 4), a(-4, 4), u3), field)
    if case_id == "1d":
        return FamilyAlgebra(
            (_nz(rng), a(-4, 4), 0, 0),
            (a(-4, 4), a(-4, 4), a(-4, 4), _nz(rng)), field)

    if case_id in ("2a", "2b", "2c", "2d"):
        # v = k*u + w with w supported on coordinates 2, 3 keeps d(1,4) = 0;
        # a nonzero w keeps the pair nonparallel, so M has rank 1.
        if case_id == "2a":
            u = (a(-4, 4), a(-4, 4), a(-4, 4), _nz(rng))
            w = (0, _nz(rng), a(-4, 4), 0)
        elif case_id == "2b":
            u = (_nz(rng), a(-4, 4), _nz(rng), 0)
            w = (0, a(-4, 4), a(-4, 4), 0)
            if not (w[1] or w[2]):
                w = (0, 1, 0, 0)
        elif case_id == "2c":
            u = (_nz(rng), a(-4, 4), 0, 0)
            w = (0, a(-4, 4), _nz(rng), 0)
        else:
            u = (_nz(rng), a(-4, 4), 0, 0)
            w = (0, _nz(rng), 0, 0)
        k = a(-2, 2)
        return FamilyAlgebra(u, tuple(k * x + y for x, y in zip(u, w)), field)
    if case_id == "2e":
        return FamilyAlgebra(
            (0, a(-4, 4), _nz(rng), 0),
            (a(-4, 4), a(-4, 4), a(-4, 4), _nz(rng)), field)
    if case_id == "2f":
        return FamilyAlgebra(
            (0, _nz(rng), 0, 0),
            (a(-4, 4), a(-4, 4), a(-4, 4), _nz(rng)), field)
    if case_id == "2g":
        return FamilyAlgebra(
            (0, _nz(rng), 0, 0), (_nz(rng), a(-4, 4), _nz(rng), 0), field)
    if case_id == "2h":
        return FamilyAlgebra(
            (0, _nz(rng), 0, 0), (_nz(rng), a(-4, 4), 0, 0), field)
    if case_id == "2i":
        return FamilyAlgebra(
            (0, a(-4, 4), _nz(rng), 0),
            (_nz(rng), a(-4, 4), a(-4, 4), 0), field)

    if case_id == "3a":
        while True:
            u = (0, a(-4, 4), _nz(rng), 0)
            v = (0, a(-4, 4), a(-4, 4), 0)
            if u[1] * v[2] - u[2] * v[1]:
                return FamilyAlgebra(u, v, field)
    if case_id == "3b":
        while True:
            u2, v3 = _nz(rng), _nz(rng)
            if u2 != v3:
                return FamilyAlgebra((0, u2, 0, 0), (0, a(-4, 4), v3, 0), field)
    if case_id == "3c":
        u2 = _nz(rng)
        return FamilyAlgebra((0, u2, 0, 0), (0, a(-4, 4), u2, 0), field)

    if case_id in ("4a", "4b", "4d", "4e"):
        lam = a(-2, 2)
        if case_id == "4a":
            u = (a(-4, 4), a(-4, 4), a(-4, 4), _nz(rng))
        elif case_id == "4b":
            u = (_nz(rng), a(-4, 4), _nz(rng), 0)
        elif case_id == "4d":
            u = (_nz(rng), a(-4, 4), 0, 0)
        else:
            u = (0, _nz(rng), 0, 0)
        return FamilyAlgebra(u, tuple(lam * x for x in u), field)
    if case_id == "4c":
        while True:
            u = (0, a(-4, 4), _nz(rng), 0)
            lam = a(-2, 2)
            if lam * u[2] + u[1]:
                return FamilyAlgebra(u, tuple(lam * x for x in u), field)
    if case_id == "4f":
        return FamilyAlgebra(
            (0, 0, 0, 0), (a(-4, 4), a(-4, 4), a(-4, 4), _nz(rng)), field)
    if case_id == "4g":
        v1 = a(-4, 4) if rng.random() < 0.75 else 0
        return FamilyAlgebra((0, 0, 0, 0), (v1, a(-4, 4), _nz(rng), 0), field)
    if case_id == "4h":
        return FamilyAlgebra((0, 0, 0, 0), (_nz(rng), a(-4, 4), 0, 0), field)

    if case_id == "5a":
        return FamilyAlgebra((0, 0, 0, 0), (0, _nz(rng), 0, 0), field)
    assert case_id == "5b"
    u3, k = _nz(rng), a(-2, 2)
    return FamilyAlgebra(
        (0, k * u3, u3, 0), (0, -k * k * u3, -k * u3, 0), field)


def random_commutant(rng, field=QQ):
    """A random invertible matrix commuting with the family twist."""
    a = rng.randint
    while True:
        m = commutant_matrix(
            field, _nz(rng, -3, 3), p11=_nz(rng, -3, 3), p21=a(-3, 3),
            p23=a(-3, 3), p14=a(-3, 3), p24=a(-3, 3))
        if m.det():
            return m
