import json
from fractions import Fraction

import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from avclab import io as jio
from avclab.aerm import aerm_halfspace
from avclab.corruption import TabularRelation, lattice_relation
from avclab.geometry import ConstraintSet
from avclab.hypotheses import Halfspace, LabeledDataset
from avclab.shattering import halfspace_pattern_feasible, random_rational_dataset, unachievable_pattern
from conftest import rvec, small_rationals


def through_text(doc):
    return json.loads(json.dumps(doc))


@given(st.sampled_from(["inf", 1, 2]), st.fractions(Fraction(0), 5, max_denominator=97))
def test_body_round_trip(p, eps):
    for B in (ConstraintSet.lp_ball(3, p, eps), ConstraintSet.lp_ball(3, p, eps, [(0, 0, 1)])):
        assert jio.body_from_json(through_text(jio.body_to_json(B))) == B
    P = ConstraintSet.polytope([(eps, 1), (-eps, -1)])
    assert jio.body_from_json(through_text(jio.body_to_json(P))) == P


def test_body_schema_shape():
    doc = jio.body_to_json(ConstraintSet.lp_ball(2, "inf", Fraction(1, 3)))
    assert doc == {"dim": 2, "body": {"kind": "lp", "p": "inf", "eps": "1/3"}, "lineality": []}


@given(st.integers(0, 2**30))
def test_dataset_round_trip(seed):
    data = random_rational_dataset(np.random.default_rng(seed), 5, 3, den=7)
    assert jio.dataset_from_json(through_text(jio.dataset_to_json(data))) == data


@given(rvec(3, den=13), small_rationals(den=11))
def test_halfspace_round_trip(a, b):
    h = Halfspace(a, b)
    assert jio.halfspace_from_json(through_text(jio.halfspace_to_json(h))) == h


def test_relation_round_trip():
    R = lattice_relation([(0, 0), (3, 1)], 1)
    assert jio.relation_from_json(through_text(jio.relation_to_json(R))) == R
    ids = TabularRelation({0: {0, 1}, 1: {1}})
    assert jio.relation_from_json(through_text(jio.relation_to_json(ids))) == ids


def test_certificate_documents():
    B = ConstraintSet.lp_ball(1, "inf", 1)
    data = LabeledDataset(((0,), (1,), (2,)), (1, 1, 1))
    eta, cert = unachievable_pattern(data, B)
    doc = jio.certificate_to_json(cert)
    assert doc["status"] == "infeasible"
    assert doc["appendix_cert"]["a"] == ["1/2", "-1/1", "1/2"]
    assert doc["appendix_cert"]["J"] == [0, 2] and doc["appendix_cert"]["eta"] == [0, 1, 0]
    ok = jio.certificate_to_json(halfspace_pattern_feasible(data, (0, 1, 1), B))
    assert ok["status"] == "feasible" and set(ok["witness"]) >= {"a", "b", "vertex"}
    erm = jio.erm_to_json(aerm_halfspace(data.relabel((1, -1, 1)), B))
    assert jio.risk_from_json(erm) == aerm_halfspace(data.relabel((1, -1, 1)), B).risk
    assert erm["pattern"] and "witness" in erm
