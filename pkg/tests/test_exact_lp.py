from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.optimize import linprog

from avclab import lp
from avclab.exact import SignedRoot, fmt, nullspace, project_out, rank, rational, root, sqrt_lower_bound, sqrt_upper_bound
from conftest import small_rationals


def test_rational_parsing():
    assert rational("3/4") == Fraction(3, 4)
    assert rational(0.1) == Fraction(1, 10)
    assert rational(" -2 ") == -2
    with pytest.raises(TypeError):
        rational(True)
    with pytest.raises(ValueError):
        rational(float("inf"))


@given(small_rationals())
def test_fmt_round_trip(q):
    assert rational(fmt(q)) == q


def test_signed_root_orders_exactly():
    s2 = SignedRoot(1, 2)
    assert Fraction(141, 100) < s2 < Fraction(142, 100)
    assert -s2 < 0 < s2
    assert s2 < float("inf") and -s2 > float("-inf")
    assert SignedRoot(1, 8) == 2 * s2
    assert root(Fraction(9, 4)) == Fraction(3, 2)
    assert isinstance(root(2), SignedRoot)


@given(st.fractions(min_value=0, max_value=1000, max_denominator=50))
def test_sqrt_bounds_bracket(q):
    lo, hi = sqrt_lower_bound(q), sqrt_upper_bound(q)
    assert lo * lo <= q <= hi * hi
    assert hi - lo <= Fraction(2, 10**30) * max(1, hi)


def test_nullspace_canonical():
    (v,) = nullspace([[1, 1, 1], [0, 1, 2]], 3)
    assert v == (1, -2, 1)
    assert rank([[1, 2], [2, 4]]) == 1


def test_project_out():
    assert project_out((3, 4, 5), [(0, 0, 1)]) == (3, 4, 0)
    p = project_out((1, 0), [(1, 1)])
    assert p == (Fraction(1, 2), Fraction(-1, 2))


def test_lp_statuses():
    # max x + y  s.t.  x + 2y <= 4, 3x + y <= 6, x, y >= 0
    res = lp.maximize([1, 1], [[1, 2], [3, 1]], [4, 6])
    assert res.status == lp.OPTIMAL and res.value == Fraction(14, 5)
    assert res.x == (Fraction(8, 5), Fraction(6, 5))
    assert lp.maximize([1], [[-1]], [-2], [[1]], [1]).status == lp.INFEASIBLE
    assert lp.maximize([1, 0], [[0, 1]], [1]).status == lp.UNBOUNDED


def test_lp_matches_highs_on_random_instances():
    rng = np.random.default_rng(0)
    for _ in range(80):
        m, k = rng.integers(2, 6), rng.integers(2, 5)
        A = rng.integers(-5, 6, size=(m, k))
        b = rng.integers(-3, 8, size=m)
        c = rng.integers(-4, 5, size=k)
        ours = lp.maximize(c.tolist(), A.tolist(), b.tolist(), nonneg=[False] * k)
        ref = linprog(-c, A_ub=A, b_ub=b, bounds=[(None, None)] * k, method="highs")
        want = {0: lp.OPTIMAL, 2: lp.INFEASIBLE, 3: lp.UNBOUNDED}[ref.status]
        assert ours.status == want
        if want == lp.OPTIMAL:
            assert abs(float(ours.value) + ref.fun) < 1e-7
            assert all(sum(Fraction(int(a)) * x for a, x in zip(row, ours.x)) <= int(bi) for row, bi in zip(A, b))
