from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cubic_elliptic.linalg import (
    GroupInvariants,
    IntMatrix,
    abelian_quotient,
    nullspace,
    primitive,
    rank,
    snf,
    solve,
    strict_positive_functional,
)
from oracles import determinantal_invariants

matrices = st.integers(1, 4).flatmap(
    lambda m: st.integers(1, 4).flatmap(
        lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=m, max_size=m)
    )
)


@settings(max_examples=1000, deadline=None)
@given(matrices)
def test_snf_contract(rows):
    A = IntMatrix(rows)
    r = snf(A)
    assert r.U @ A @ r.V == r.D
    assert abs(r.U.det()) == 1 and abs(r.V.det()) == 1
    assert r.D.is_diagonal()
    d = r.invariant_factors
    assert all(x > 0 for x in d)
    assert all(b % a == 0 for a, b in zip(d, d[1:]))
    assert d == determinantal_invariants(rows)


def test_snf_small_example():
    assert snf(IntMatrix([[2, 4], [6, 8]])).invariant_factors == [2, 4]
    assert snf(IntMatrix([[2, 0], [0, 12]])).D.diagonal() == [2, 12]


def test_snf_rejects_empty():
    with pytest.raises(ValueError):
        snf(IntMatrix([], 0))


@pytest.mark.parametrize(
    "relations, expected",
    [
        ([], "Z + Z + Z + Z"),
        ([(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 3)], "Z/3Z"),
        ([(2, 0, 0, 0), (0, 2, 0, 0)], "Z + Z + Z/2Z + Z/2Z"),
    ],
)
def test_abelian_quotient(relations, expected):
    assert str(abelian_quotient(4, relations)) == expected


def test_group_invariants_validation():
    with pytest.raises(ValueError):
        GroupInvariants(0, (2, 3))
    with pytest.raises(ValueError):
        GroupInvariants(-1)
    assert GroupInvariants(0, (2, 4)).order == 8
    assert GroupInvariants(1).order is None


def test_relation_length_checked():
    with pytest.raises(ValueError):
        abelian_quotient(4, [(1, 2, 3)])


@settings(max_examples=200, deadline=None)
@given(matrices)
def test_nullspace_is_kernel(rows):
    n = len(rows[0])
    ker = nullspace(rows)
    assert len(ker) == n - rank(rows)
    for v in ker:
        assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in rows)


def test_solve():
    assert solve([[2, 0], [0, 3]], [1, 1]) == (Fraction(1, 2), Fraction(1, 3))
    assert solve([[1, 1], [1, 1]], [1, 2]) is None
    with pytest.raises(ValueError):
        solve([[1, 1]], [1])


def test_primitive():
    assert primitive([Fraction(1, 2), Fraction(-3, 4)]) == (2, -3)
    assert primitive([0, 0]) == (0, 0)


vectors = st.lists(st.lists(st.integers(-4, 4), min_size=3, max_size=3), min_size=1, max_size=7)


@settings(max_examples=300, deadline=None)
@given(vectors)
def test_positive_functional(vs):
    phi = strict_positive_functional(vs, 3)
    if phi is not None:
        assert all(sum(a * b for a, b in zip(phi, v)) > 0 for v in vs)
    else:
        # infeasible: some nonnegative combination of the vectors is zero
        from scipy.optimize import linprog

        res = linprog([0] * len(vs), A_eq=[[v[i] for v in vs] for i in range(3)] + [[1] * len(vs)],
                      b_eq=[0, 0, 0, 1], bounds=[(0, None)] * len(vs))
        assert res.status == 0


def test_positive_functional_limits():
    with pytest.raises(ValueError):
        strict_positive_functional([[1] * 9])
    assert strict_positive_functional([(1, 0), (-1, 0)]) is None
