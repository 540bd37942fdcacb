import pytest
from hypothesis import assume, given, settings, strategies as st

from cubic_elliptic.cones import Cone, extreme_rays, intersect_all
from cubic_elliptic.linalg import IntMatrix, rank
from cubic_elliptic import varieties as va
from cubic_elliptic.coxring import grading_matrix
from oracles import facets_by_brute_force


def corpus_cones():
    out = []
    for t in va.VarietyType:
        out.append(Cone([va.twist(c) for c in va.mori_generators(t)]))
        out.append(Cone(va.printed_nef_generators(t)))
    for t in (va.VarietyType.X3, va.VarietyType.XS2):
        out.append(Cone([va.twist(c) for c in va.flop_dual_generators(t)]))
    for t in va.EXTREMAL_TYPES:
        out.append(Cone(grading_matrix(t, 3).columns()))
    return out


@pytest.mark.parametrize("cone", corpus_cones(), ids=lambda c: str(len(c.rays)))
def test_biduality_on_corpus(cone):
    assert cone.dual().dual() == cone


@pytest.mark.parametrize("cone", corpus_cones(), ids=lambda c: str(len(c.rays)))
def test_facets_match_brute_force(cone):
    if cone.dim < cone.ambient_dim or not cone.is_pointed:
        pytest.skip("oracle handles full-dimensional pointed cones")
    assert cone.facet_normals == facets_by_brute_force(cone.rays, cone.ambient_dim)


gens = st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=1, max_size=6)


@settings(max_examples=200, deadline=None)
@given(gens)
def test_random_biduality(g):
    assume(any(any(v) for v in g))
    c = Cone(g, 3)
    assert c.dual().dual() == c
    for v in g:
        assert c.contains(v)


@settings(max_examples=150, deadline=None)
@given(gens, gens)
def test_intersection_is_monotone(a, b):
    A, B = Cone(a, 3), Cone(b, 3)
    I = A.intersect(B)
    assert A.contains_cone(I) and B.contains_cone(I)
    U = A.hull_union(B)
    assert U.contains_cone(A) and U.contains_cone(B)
    # dual reverses inclusion
    assert A.dual().contains_cone(U.dual())


def test_dual_of_half_line():
    c = Cone([(1, 1)])
    assert c.dual().rays == [(1, -1), (-1, 1), (1, 1)]


def test_lineality_and_pointedness():
    plane = Cone([(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0)])
    assert not plane.is_pointed
    assert plane.dim == 2
    assert plane.equations == [(0, 0, 1)]
    assert plane.contains((5, -7, 0)) and not plane.contains((0, 0, 1))


def test_relative_interior():
    c = Cone([(1, 0), (0, 1)])
    assert c.contains((1, 1), "relative_interior")
    assert not c.contains((1, 0), "relative_interior")
    assert c.contains((1, 0))
    with pytest.raises(ValueError):
        c.contains((1, 0), "nowhere")


def test_extreme_rays_drops_redundant():
    lin, rays = extreme_rays([(1, 0), (0, 1), (1, 1)], 2)
    assert lin == [] and rays == [(0, 1), (1, 0)]


def test_map_and_intersect_all():
    c = Cone([(1, 0), (0, 1)])
    swap = IntMatrix([[0, 1], [1, 0]])
    assert c.map(swap) == c
    assert intersect_all([c, Cone([(1, 1), (1, -1)])]) == Cone([(1, 0), (1, 1)])


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        Cone([(1, 0), (1, 0, 0)])
    with pytest.raises(ValueError):
        Cone([(1, 0)]).contains((1, 0, 0))
