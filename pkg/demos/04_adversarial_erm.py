#!/usr/bin/env python3
"""Exact adversarial ERM, and how the optimum moves with the budget."""

from fractions import Fraction

import numpy as np

from avclab import ConstraintSet, LabeledDataset, aerm_halfspace
from avclab.aerm import threshold_erm_1d
from avclab.shattering import random_rational_dataset

data = LabeledDataset(((0,), (2,)), (1, -1))
for eps in (0, Fraction(1, 2), 1):
    res = aerm_halfspace(data, ConstraintSet.lp_ball(1, "inf", eps))
    print(f"eps={eps}: risk {res.risk}, witness a={res.hypothesis.a[0]} b={res.hypothesis.b}, pattern {res.pattern}")

# a noisy 2-D sample: the optimal risk can only grow with the budget
rng = np.random.default_rng(4)
data = random_rational_dataset(rng, 10, 2, -3, 3, 2)
for eps in (0, Fraction(1, 4), Fraction(1, 2), 1, 2):
    res = aerm_halfspace(data, ConstraintSet.lp_ball(2, "inf", eps))
    print(f"eps={str(eps):>4}: risk {res.risk}  ({res.stats.lps_solved} LPs, {res.stats.pruned} subsets pruned)")

# budget zero is ordinary ERM
one_d = random_rational_dataset(rng, 9, 1)
print("1-D, eps=0:", aerm_halfspace(one_d, ConstraintSet.identity(1)).risk, "vs threshold sweep", threshold_erm_1d(one_d))
