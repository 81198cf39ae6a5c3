import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from avclab.corruption import identity_relation, lattice_relation
from avclab.errors import CapacityError, PreconditionError
from avclab.geometry import ConstraintSet, dual_seminorm
from avclab.hypotheses import Halfspace, LabeledDataset
from avclab.risk import (
    LossVectorSet,
    RademacherEstimate,
    adversarial_empirical_risk,
    generalization_bound,
    loss_vector,
    margin_loss,
    massart_bound,
    rademacher_complexity,
    sample_complexity_bound,
)
from conftest import rvec, small_rationals
from oracles import generalization_mp, rademacher_bruteforce, sample_complexity_mp


def test_risk_examples():
    data = LabeledDataset(((2, 0), (-1, 0)), (1, -1))
    h = Halfspace((1, 0), 0)
    assert adversarial_empirical_risk(h, ConstraintSet.identity(2), data) == 0
    assert adversarial_empirical_risk(Halfspace((0, 0), 0), ConstraintSet.lp_ball(2, 1, 1), data) == 1
    data2 = LabeledDataset(((2, 0), (Fraction(1, 2), 0)), (1, 1))
    assert adversarial_empirical_risk(h, ConstraintSet.lp_ball(2, 2, 1), data2) == Fraction(1, 2)


def test_tabular_risk():
    data = LabeledDataset(((0,), (1,)), (1, -1))
    R = lattice_relation(data.points, 1)
    row = {(Fraction(k),): (1 if k <= 0 else -1) for k in range(-1, 3)}
    # each point's neighbourhood straddles the switch from +1 to -1
    assert adversarial_empirical_risk(row, R, data) == 1
    assert adversarial_empirical_risk(row, identity_relation(data.points), data) == 0


def test_margin_loss_examples():
    assert margin_loss(1, 2) == 0
    assert margin_loss(1, 1) == 1
    assert margin_loss(-1, Fraction(-1, 2)) == 1
    with pytest.raises(PreconditionError):
        margin_loss(0, 3)


@given(st.sampled_from(["inf", 1]), st.integers(1, 3), st.fractions(Fraction(1, 4), 3, max_denominator=4), st.data())
def test_margin_loss_equals_corrupted_loss(p, d, eps, data):
    """After scaling to unit dual seminorm the corrupted loss is the margin loss."""
    B = ConstraintSet.lp_ball(d, p, eps)
    a = data.draw(rvec(d))
    if all(v == 0 for v in a):
        return
    D = dual_seminorm(B, a)
    a = [v / D for v in a]
    b = data.draw(small_rationals())
    x = data.draw(rvec(d))
    c = data.draw(st.sampled_from([-1, 1]))
    h = Halfspace(a, b)
    got = loss_vector(h, B, LabeledDataset((x,), (c,)))[0]
    assert got == margin_loss(c, h.score(x))


def test_rademacher_examples():
    assert rademacher_complexity(LossVectorSet.of([(1, 1, 1)])) == 0
    assert rademacher_complexity(LossVectorSet.of([(0, 0)])) == 0
    cube = LossVectorSet.of(itertools.product((0, 1), repeat=2))
    assert rademacher_complexity(cube) == Fraction(1, 2)


@given(st.integers(1, 7), st.integers(0, 2**30))
def test_rademacher_matches_bruteforce(n, seed):
    rng = np.random.default_rng(seed)
    k = int(rng.integers(1, 2**n + 1))
    vecs = {tuple(int(b) for b in rng.integers(0, 2, n)) for _ in range(k)}
    T = LossVectorSet.of(vecs)
    r = rademacher_complexity(T)
    assert r == rademacher_bruteforce(vecs)
    if len(T) > 1:
        # Massart's finite-class lemma for 0/1 vectors (||t|| <= sqrt(n))
        assert float(r) <= massart_bound(len(T), n) + 1e-12


def test_rademacher_cap_and_sampling():
    T = LossVectorSet.of([tuple([1] * 17), tuple([0] * 17)])
    with pytest.raises(CapacityError):
        rademacher_complexity(T)
    est = rademacher_complexity(T, samples=2000, seed=3)
    assert isinstance(est, RademacherEstimate) and not est.exact
    assert est == rademacher_complexity(T, samples=2000, seed=3)
    # exact value is E[max(0, sum s)]/17
    exact = sum(math.comb(17, k) * max(0, 2 * k - 17) for k in range(18)) / (17 * 2**17)
    assert abs(est.value - exact) < 0.02
    with pytest.raises(PreconditionError):
        rademacher_complexity(T, samples=10)


def test_loss_vector_set_validation():
    with pytest.raises(PreconditionError):
        LossVectorSet.of([(0, 1), (1,)])
    with pytest.raises(PreconditionError):
        LossVectorSet.of([(0, 2)])
    with pytest.raises(PreconditionError):
        LossVectorSet.of([])


def test_generalization_bound():
    # log(4/delta) = 2 with n = 64 gives sqrt(1) = 1
    delta = 4 / math.e**2
    assert generalization_bound(0, 64, delta) == pytest.approx(1.0, abs=1e-12)
    assert generalization_bound(Fraction(1, 2), 10**12, Fraction(1, 2)) == pytest.approx(1.0, abs=1e-4)
    for rad, n, dl in [(Fraction(1, 8), 100, Fraction(1, 20)), (0, 5, Fraction(9, 10))]:
        assert generalization_bound(rad, n, dl) == pytest.approx(float(generalization_mp(rad, n, dl)), rel=1e-14)
    with pytest.raises(PreconditionError):
        generalization_bound(0, 32, 1)


def test_sample_complexity_bound():
    want, raw = sample_complexity_mp(3, Fraction(1, 10), Fraction(1, 20))
    assert 1319 < raw < 1320  # the ceiling is 1320
    assert sample_complexity_bound(3, Fraction(1, 10), Fraction(1, 20), 1) == want == 1320
    assert sample_complexity_bound(1, Fraction(1, 2), Fraction(1, 2), 2) == sample_complexity_mp(1, Fraction(1, 2), Fraction(1, 2), 2)[0]
    with pytest.raises(PreconditionError):
        sample_complexity_bound(3, 2, Fraction(1, 2))
    with pytest.raises(PreconditionError):
        sample_complexity_bound(0, Fraction(1, 2), Fraction(1, 2))


@given(st.integers(1, 6), st.fractions(Fraction(1, 100), Fraction(99, 100)), st.fractions(Fraction(1, 100), Fraction(99, 100)))
def test_sample_complexity_matches_high_precision(d, eps, delta):
    want, raw = sample_complexity_mp(d, eps, delta)
    if abs(raw - round(raw)) < 1e-9:
        return  # ceiling too close to call in double precision
    assert sample_complexity_bound(d, eps, delta) == want
