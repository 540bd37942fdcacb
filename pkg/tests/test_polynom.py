from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cubic_elliptic.linalg import IntMatrix
from cubic_elliptic.polynom import (
    BetaMap,
    InhomogeneousGenerator,
    MultiPoly,
    PolySyntaxError,
    UnknownVariable,
    VariableContext,
    homogeneous_degree,
    parse_poly,
    random_admissible,
    restrict,
    s_gcd_divide,
    substitute_beta,
)

CTX = VariableContext.standard(3, 2)

terms = st.dictionaries(
    st.tuples(*[st.integers(0, 3)] * CTX.arity),
    st.fractions(min_value=-5, max_value=5, max_denominator=4),
    max_size=6,
)
polys = terms.map(lambda t: MultiPoly(CTX, t))


@settings(max_examples=300, deadline=None)
@given(polys)
def test_parse_round_trip(p):
    assert parse_poly(str(p), CTX) == p


@settings(max_examples=200, deadline=None)
@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert a - a == MultiPoly.zero(CTX)


def test_canonical_print():
    p = parse_poly("T1^3 - 2/3*T2*T3^2 + 0*T1", CTX)
    assert str(p) == "T1^3 - 2/3*T2*T3^2"
    assert str(MultiPoly.zero(CTX)) == "0"
    assert str(parse_poly("-T1 + 1", CTX)) == "-T1 + 1"


@pytest.mark.parametrize("text, pos", [("T1 +* T2", 4), ("T1^", 3), ("(T1)", 0), ("T1 T2", 3)])
def test_syntax_errors(text, pos):
    with pytest.raises(PolySyntaxError) as exc:
        parse_poly(text, CTX)
    assert exc.value.position == pos


def test_unknown_variable():
    with pytest.raises(UnknownVariable):
        parse_poly("T1*X9", CTX)


def test_derivative_and_evaluate():
    p = parse_poly("T1^2*T2 + 3*T3", CTX)
    assert p.derivative(0) == parse_poly("2*T1*T2", CTX)
    assert p.evaluate([1, 2, 3, 0, 0]) == 11


def test_compose_substitutes():
    p = parse_poly("T1*T2", CTX)
    img = [parse_poly("T1 + T2", CTX), parse_poly("T1 - T2", CTX)] + [MultiPoly.var(CTX, i) for i in range(2, 5)]
    assert p.compose(img) == parse_poly("T1^2 - T2^2", CTX)


def test_beta_multiplicative():
    src = VariableContext.standard(3)
    beta = BetaMap(src, CTX, ((1, 0), (0, 2), (1, 1)))
    a = parse_poly("T1*T2 + T3^2", src)
    b = parse_poly("T1 - 2*T3", src)
    assert substitute_beta(a * b, beta) == substitute_beta(a, beta) * substitute_beta(b, beta)
    g, mono = s_gcd_divide(substitute_beta(parse_poly("T1*T3 + T3^2", src), beta))
    assert mono == (0, 0, 0, 2, 1)
    assert g == parse_poly("T1*T3 + T3^2*S2", CTX)


def test_homogeneous_degree():
    Q = IntMatrix([[1, 1, 2, 0, 0], [0, 1, 0, 1, 0]])
    assert homogeneous_degree(parse_poly("T1^2 + T3", CTX), Q) == (2, 0)
    with pytest.raises(InhomogeneousGenerator):
        homogeneous_degree(parse_poly("T1 + T2", CTX), Q)


def test_restrict_composes():
    p = parse_poly("T1*T2 + T2*T3 + S1", CTX)
    assert restrict(restrict(p, {0, 1, 2}), {1, 2}) == restrict(p, {1, 2}) == parse_poly("T2*T3", CTX)


def test_random_admissible_deterministic():
    a = random_admissible("X3", 4, 11)
    b = random_admissible("X3", 4, 11)
    assert a.forms == b.forms
    assert random_admissible("X3", 4, 12).forms != a.forms


@pytest.mark.parametrize("n", [3, 4, 5])
def test_random_admissible_constraints(n):
    ctx = VariableContext.standard(n + 3)
    mono = lambda **e: tuple(e.get(f"T{i}", 0) for i in range(1, n + 4))
    for seed in range(20):
        x3 = random_admissible("X3", n, seed)
        assert x3["b'"].coefficient(mono(**{f"T{n}": 2})) == 0
        assert x3["b1"].coefficient(mono(**{f"T{n}": 3})) != 0
        xs2 = random_admissible("XS2", n, seed)
        a3 = xs2["a3"]
        assert a3.coefficient(mono(**{f"T{n+1}": 2})) == 0
        assert a3.coefficient(mono(**{f"T{n+1}": 1, f"T{n+2}": 1})) == 0
        assert all(m[n + 2] == 0 for f in x3.forms.values() for m in f.terms)
        assert {d for f in random_admissible("XSSS", n, seed).forms.values() for d in f.total_degrees()} <= {1, 3}
