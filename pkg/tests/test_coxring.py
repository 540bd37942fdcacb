import random

import pytest

from cubic_elliptic import coxring as cx
from cubic_elliptic.linalg import IntMatrix
from cubic_elliptic.polynom import homogeneous_degree
from cubic_elliptic.varieties import EXTREMAL_TYPES, W, VarietyType as V
from oracles import hilbert_by_dp, positive_weight

GENERATOR_DEGREES = {
    V.X3: [(2, -2, -1, 0), (3, -3, 0, 0)],
    V.XS: [(3, -3, 0, 0)],
    V.XS2: [(2, -2, 0, 0), (3, -3, -3, -3)],
    V.XSSS: [(1, 0, 0, 0), (3, -3, -3, -3)],
}

# ambient polynomial-ring count at W for n = 3 (equal to the printed values)
AMBIENT_AT_W = {V.X3: 66, V.XS: 53, V.XS2: 64, V.XSSS: 75}


def small_degrees(Q, count=24, seed=0):
    rng = random.Random(seed)
    cols = Q.columns()
    out = {(0, 0, 0, 0), tuple(W)}
    while len(out) < count:
        x = [rng.choice((0, 0, 0, 1, 1, 2)) for _ in cols]
        out.add(Q @ x)
    return sorted(out)


@pytest.mark.parametrize("t", EXTREMAL_TYPES)
def test_hilbert_matches_dp_oracle(t):
    Q = cx.grading_matrix(t, 3)
    degrees = small_degrees(Q) + [(1, -1, 0, 0), (0, 1, 0, 0), (-1, 0, 0, 0)]
    assert len(degrees) >= 20
    weight = positive_weight(Q.columns())
    for w in degrees:
        assert cx.hilbert_dim(Q, w) == hilbert_by_dp(Q.columns(), w, weight), w


@pytest.mark.parametrize("t", EXTREMAL_TYPES)
def test_hilbert_independent_of_column_order(t):
    Q = cx.grading_matrix(t, 3)
    cols = Q.columns()
    random.Random(5).shuffle(cols)
    P = IntMatrix.from_columns(cols)
    for w in small_degrees(Q, 10, seed=3):
        assert cx.hilbert_dim(P, w) == cx.hilbert_dim(Q, w)


@pytest.mark.parametrize("t", EXTREMAL_TYPES)
def test_ambient_count_at_w(t):
    assert cx.hilbert_dim(cx.grading_matrix(t, 3), W) == AMBIENT_AT_W[t]


def test_hilbert_trivial_degree():
    assert cx.hilbert_dim(cx.grading_matrix(V.XS, 3), (0, 0, 0, 0)) == 1


def test_non_pointed_grading():
    with pytest.raises(cx.NonPointedGrading):
        cx.hilbert_dim(IntMatrix([[1, -1]]), (0,))


def test_beta_solver_reproduces_printed_tables():
    for t in (V.X3, V.XS):
        Q = cx.grading_matrix(t, 3)
        assert cx.solve_beta_exponents(Q) == cx.beta_table(t, 3).exponents


def test_beta_solver_repairs():
    xs2 = cx.solve_beta_exponents(cx.grading_matrix(V.XS2, 3))
    assert xs2[:2] == ((1, 2, 1),) * 2
    xsss = cx.solve_beta_exponents(cx.grading_matrix(V.XSSS, 3))
    assert xsss[:3] == ((1, 1, 1),) * 3


def test_beta_solver_reports_failure():
    Q = IntMatrix.from_columns([(1, 5, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)])
    with pytest.raises(cx.NoCompatibleExponents):
        cx.solve_beta_exponents(Q)


@pytest.mark.parametrize("t", EXTREMAL_TYPES)
@pytest.mark.parametrize("n", [3, 4, 5])
def test_presentation_degrees(t, n):
    p = cx.build_presentation(t, n, seed=3)
    assert p.generator_degrees == GENERATOR_DEGREES[t]
    for g, d in zip(p.generators, p.generator_degrees):
        assert homogeneous_degree(g, p.Q) == d
    assert p.extracted_denominators == p.printed_denominators


@pytest.mark.parametrize("t", EXTREMAL_TYPES)
def test_koszul_equals_euler_characteristic(t):
    for seed in range(3):
        p = cx.build_presentation(t, 3, seed)
        assert cx.koszul_quotient_dim(p) == cx.euler_characteristic_w(3) == 50


def test_euler_characteristic_formula():
    assert [cx.euler_characteristic_w(n) for n in (3, 4, 5)] == [50, 99, 175]


def test_degenerate_coefficients_rejected():
    coeffs = cx.random_admissible("XS", 3, 0)
    coeffs.forms["a2"] = coeffs.forms["a2"] - coeffs.forms["a2"]
    with pytest.raises(cx.DegenerateCoefficients):
        cx.build_from_coefficients(V.XS, 3, coeffs)


def test_nonextremal_has_no_presentation():
    with pytest.raises(ValueError):
        cx.grading_matrix(V.X111, 3)


def test_moving_cone_of_degrees_list_semantics():
    degs = [(1, 0), (1, 0), (0, 1)]
    # (1,0) appears twice, so every leave-one-out cone keeps it
    assert cx.moving_cone_of_degrees(degs).rays == [(1, 0)]
    assert cx.moving_cone_of_degrees(degs + [(1, 0)]) == cx.moving_cone_of_degrees(degs)


@pytest.mark.parametrize("t", EXTREMAL_TYPES)
def test_w_in_moving_cone_of_degrees(t):
    p = cx.build_presentation(t, 3)
    assert cx.moving_cone_of_degrees(p.degrees).contains(W)


EXPECTED_FAMILIES = {
    V.X3: {("i", "n+1", "n+2"), ("i", "n", "n+4"), ("n+3", "n+4", "n+5")},
    V.XS: {("i", "n", "n+3")},
    V.XS2: {("i", "n+2", "n+4"), ("n", "n+2", "n+4")},
    V.XSSS: set(),
}


@pytest.mark.parametrize("t", EXTREMAL_TYPES)
@pytest.mark.parametrize("n", [3, 4])
def test_git_chamber(t, n):
    r = cx.git_chamber_report(cx.build_presentation(t, n), strict=True)
    assert r.two_cones_containing_w == []
    assert set(r.families_found) == EXPECTED_FAMILIES[t]
    assert r.ok


def test_git_certificate_degree_typo_reported():
    r = cx.git_chamber_report(cx.build_presentation(V.X3, 3))
    assert r.families_found[("i", "n+1", "n+2")] == [(1, "T_{n+1}T_{n+2}")]
    assert len(r.certificate_mismatches) == 1


def test_uncertified_cone_raises():
    from cubic_elliptic.polynom import MultiPoly

    p = cx.build_presentation(V.XS, 3)
    # T3^3 + T1*T3^2 keeps two terms on the chamber cone {T1, T3, S1}
    p.generators = [MultiPoly.monomial(p.ctx, (0, 0, 3, 0, 0, 0, 0, 0))
                    + MultiPoly.monomial(p.ctx, (1, 0, 2, 0, 0, 0, 0, 0))]
    with pytest.raises(cx.UncertifiedCone):
        cx.git_chamber_report(p, strict=True)


@pytest.mark.parametrize("t", EXTREMAL_TYPES)
@pytest.mark.parametrize("n", [4, 5])
def test_restriction(t, n):
    p = cx.build_presentation(t, n, seed=2)
    r = cx.restrict_to_hyperplane(p)
    assert r.n == n - 1
    assert r.Q == cx.grading_matrix(t, n - 1)
    assert r.generator_degrees == p.generator_degrees


def test_restriction_needs_n_above_three():
    with pytest.raises(ValueError):
        cx.restrict_to_hyperplane(cx.build_presentation(V.XS, 3))


def test_restricting_twice_drops_two_variables():
    p = cx.build_presentation(V.XSSS, 5, seed=1)
    twice = cx.restrict_to_hyperplane(cx.restrict_to_hyperplane(p))
    ctx = cx.ring_context(V.XSSS, 3)
    assert twice.generators == [g.drop_variables(ctx, [0, 1]) for g in p.generators]
