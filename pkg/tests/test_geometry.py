from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from avclab.errors import DimensionMismatch, NoSupportError, PreconditionError, UnsupportedBodyError
from avclab.exact import SignedRoot
from avclab.geometry import INF, ConstraintSet, dual_seminorm, lineality, seminorm, support_vertex
from conftest import rvec, small_rationals
from oracles import box_vertices, cross_vertices, dot, dual_by_vertices

E1 = (1, 0)


def linf(d, eps, lin=()):
    return ConstraintSet.lp_ball(d, "inf", eps, lin)


def l1(d, eps, lin=()):
    return ConstraintSet.lp_ball(d, 1, eps, lin)


# documented examples


def test_seminorm_examples():
    assert seminorm(ConstraintSet.lp_ball(2, 2, 1), (2, 0)) == 2
    assert seminorm(linf(2, 1, [E1]), (5, 0)) == 0
    assert seminorm(ConstraintSet.polytope([(1, 0), (-1, 0)]), (0, 1)) == INF


def test_dual_seminorm_examples():
    assert dual_seminorm(linf(2, 1), (3, -4)) == 7
    assert dual_seminorm(linf(2, 2), (3, -4)) == 14
    assert dual_seminorm(linf(2, 1, [E1]), (1, 0)) == INF


def test_support_vertex_examples():
    assert support_vertex(linf(2, 1), (3, -4)) == (1, -1)
    assert support_vertex(l1(2, 1), (3, -4)) == (0, -1)
    assert support_vertex(l1(2, 1), (1, 1)) == (1, 0)
    with pytest.raises(UnsupportedBodyError):
        support_vertex(ConstraintSet.lp_ball(2, 2, 1), (1, 1))
    with pytest.raises(NoSupportError):
        support_vertex(linf(2, 1, [E1]), (1, 1))


def test_lineality_examples():
    assert lineality(ConstraintSet.lp_ball(2, 2, 1)) == (0, [])
    dim, basis = lineality(linf(3, 1, [(0, 0, 1)]))
    assert dim == 1 and basis == [(0, 0, 1)]
    assert lineality(ConstraintSet.identity(2)) == (0, [])


def test_identity_is_zero_radius_ball():
    assert linf(2, 0) == ConstraintSet.identity(2)
    assert dual_seminorm(ConstraintSet.identity(2), (3, 4)) == 0
    assert seminorm(ConstraintSet.identity(2), (0, 0)) == 0
    assert seminorm(ConstraintSet.identity(2), (0, 1)) == INF


def test_invalid_bodies():
    with pytest.raises(PreconditionError):
        ConstraintSet.polytope([(1, 0), (0, 1)])  # not symmetric
    with pytest.raises(PreconditionError):
        linf(2, 1, [(1, 0), (2, 0)])  # dependent lineality
    with pytest.raises(PreconditionError):
        linf(2, -1)
    with pytest.raises(DimensionMismatch):
        dual_seminorm(linf(2, 1), (1, 2, 3))


def test_l2_dual_is_exact_surd():
    D = dual_seminorm(ConstraintSet.lp_ball(2, 2, 1), (1, 1))
    assert isinstance(D, SignedRoot) and D.square == 2


# properties

bodies = st.sampled_from(["linf", "l1"])


def make(kind, d, eps):
    return (linf if kind == "linf" else l1)(d, eps)


@given(bodies, st.integers(1, 3), st.fractions(Fraction(1, 4), 4, max_denominator=8), st.data())
def test_dual_matches_vertex_enumeration(kind, d, eps, data):
    w = data.draw(rvec(d))
    verts = box_vertices(d, eps) if kind == "linf" else cross_vertices(d, eps)
    assert dual_seminorm(make(kind, d, eps), w) == dual_by_vertices(verts, w)


@given(bodies, st.integers(1, 3), st.fractions(Fraction(1, 4), 4, max_denominator=8), small_rationals(), st.data())
def test_homogeneity_and_symmetry(kind, d, eps, t, data):
    B = make(kind, d, eps)
    x = data.draw(rvec(d))
    assert seminorm(B, [t * c for c in x]) == abs(t) * seminorm(B, x)
    assert seminorm(B, [-c for c in x]) == seminorm(B, x)
    assert dual_seminorm(B, [t * c for c in x]) == abs(t) * dual_seminorm(B, x)


@given(bodies, st.integers(1, 3), st.data())
def test_triangle_inequality(kind, d, data):
    B = make(kind, d, 1)
    x, y = data.draw(rvec(d)), data.draw(rvec(d))
    assert seminorm(B, [a + b for a, b in zip(x, y)]) <= seminorm(B, x) + seminorm(B, y)


@given(bodies, st.integers(1, 3), st.fractions(Fraction(1, 4), 4, max_denominator=8), st.data())
def test_duality_pairing(kind, d, eps, data):
    B = make(kind, d, eps)
    w, x = data.draw(rvec(d)), data.draw(rvec(d))
    assert abs(dot(w, x)) <= dual_seminorm(B, w) * seminorm(B, x)
    # the support vertex attains the dual value and lies on the boundary
    v = support_vertex(B, w)
    assert dot(w, v) == dual_seminorm(B, w)
    assert B.contains(v)


@given(st.integers(1, 3), st.fractions(Fraction(1, 4), 4, max_denominator=8), st.data())
def test_polytope_agrees_with_named_ball(d, eps, data):
    x = data.draw(rvec(d))
    for named, verts in ((linf(d, eps), box_vertices(d, eps)), (l1(d, eps), cross_vertices(d, eps))):
        P = ConstraintSet.polytope(verts)
        assert seminorm(P, x) == seminorm(named, x)
        assert dual_seminorm(P, x) == dual_seminorm(named, x)


@given(st.data())
def test_lineality_seminorm_via_lp_matches_closed_form(data):
    # linf in coordinates 1-2 with e3 free: gauge is the linf norm of the first two coordinates
    x = data.draw(rvec(3))
    B = ConstraintSet.polytope([(a, b, 0) for a, b in box_vertices(2, 1)], [(0, 0, 1)])
    assert seminorm(B, x) == max(abs(x[0]), abs(x[1]))


@given(st.fractions(Fraction(0), 3, max_denominator=4), st.fractions(Fraction(0), 3, max_denominator=4), st.data())
def test_nested_budgets_give_monotone_dual(e1, e2, data):
    assume(e1 <= e2)
    w = data.draw(rvec(2))
    assert dual_seminorm(linf(2, e1), w) <= dual_seminorm(linf(2, e2), w)
