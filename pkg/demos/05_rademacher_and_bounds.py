#!/usr/bin/env python3
"""Loss classes, their Rademacher complexity, and the resulting bounds."""

from fractions import Fraction

import numpy as np

from avclab import ConstraintSet, HalfspaceClass, LossVectorSet, loss_pattern_set, rademacher_complexity, sauer_bound
from avclab.risk import generalization_bound, massart_bound, sample_complexity_bound
from avclab.shattering import random_rational_dataset

rng = np.random.default_rng(1)
for n in (4, 6, 8):
    data = random_rational_dataset(rng, n, 2, -3, 3, 2)
    B = ConstraintSet.lp_ball(2, 1, Fraction(1, 2))
    T = LossVectorSet.of(loss_pattern_set(HalfspaceClass(2), B, data))
    rad = rademacher_complexity(T)
    print(f"n={n}: {len(T)} loss patterns (Sauer cap {sauer_bound(n, 3)}), "
          f"R = {rad} = {float(rad):.4f} <= Massart {massart_bound(len(T), n):.4f}")
    print(f"      generalization bound at delta=0.05: {generalization_bound(rad, n, Fraction(1, 20)):.3f}")

for d in (1, 3, 10):
    print(f"d={d}: m(0.1, 0.05) <= {sample_complexity_bound(d, Fraction(1, 10), Fraction(1, 20))} with C=1")
