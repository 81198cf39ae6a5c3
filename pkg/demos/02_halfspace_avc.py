#!/usr/bin/env python3
"""Adversarial VC dimension of halfspaces, from both sides.

Lower side: a witness of d+1 points (fewer with free directions) on which
every loss pattern is realized, checked with exact LPs. Upper side: for any
d+2 points, a coefficient certificate names one pattern no halfspace can
realize, and the LP oracle agrees.
"""

import itertools

import numpy as np

from avclab import ConstraintSet, avc_theorem_value, halfspace_pattern_feasible, shattered_witness, unachievable_pattern
from avclab.shattering import random_rational_dataset

for d in (1, 2, 3):
    B = ConstraintSet.lp_ball(d, "inf", 1)
    w = shattered_witness(B)
    ok = all(halfspace_pattern_feasible(w, p, B).feasible for p in itertools.product((0, 1), repeat=w.n))
    print(f"d={d}: theorem value {avc_theorem_value(d, B)}, witness {[tuple(map(int, x)) for x in w.points]} shattered={ok}")

# one pattern, with its witness hyperplane
B = ConstraintSet.lp_ball(2, "inf", 1)
w = shattered_witness(B, labels=(1, -1, 1))
cert = halfspace_pattern_feasible(w, (0, 1, 0), B)
print("pattern 010:", cert.status, "a =", [str(v) for v in cert.witness.a], "b =", cert.witness.b, "via vertex", cert.vertex)

# the other direction
rng = np.random.default_rng(0)
data = random_rational_dataset(rng, 4, 2)
eta, cert = unachievable_pattern(data, B)
app = cert.appendix
print("4 random points; certificate a =", [str(v) for v in app.coefficients], "J =", app.J, "K =", app.K)
print("unachievable pattern", eta, "-> LP oracle says", halfspace_pattern_feasible(data, eta, B).status)

# a free coordinate lowers the dimension count by one
lin = ConstraintSet.lp_ball(3, "inf", 1, lineality=[(0, 0, 1)])
print("linf in R^3 with e3 free: theorem value", avc_theorem_value(3, lin), "witness size", shattered_witness(lin).n)
