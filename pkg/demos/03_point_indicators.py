#!/usr/bin/env python3
"""A class with VC dimension 1 whose adversarial VC dimension grows with d.

Hypotheses are indicators of single lattice points; the adversary moves a
point by at most 1 in every coordinate. Each indicator alone labels at most
one point +1, yet once corrupted the class realizes every loss pattern on d
points.
"""

from avclab.hypotheses import lattice_box, tabulate
from avclab.corruption import corrupt_point
from avclab.hypotheses import BOT, PointIndicatorClass
from avclab.shattering import loss_pattern_set, point_indicator_construction, vc_pair_check

con = point_indicator_construction(2)
print("points", [tuple(map(int, x)) for x in con.data.points], "labels", con.data.labels)
for k, centre in enumerate(con.centers):
    row = con.hypotheses.row(k)
    labs = [corrupt_point(row, con.relation, x) for x in con.data.points]
    print(f"  indicator at {tuple(map(int, centre))}: corrupted {['BOT' if v == BOT else v for v in labs]}")

for d in range(2, 6):
    con = point_indicator_construction(d)
    pats = loss_pattern_set(con.hypotheses, con.relation, con.data)
    vc = vc_pair_check(tabulate(PointIndicatorClass(d), lattice_box(d, -2, 2))).vc
    print(f"d={d}: {len(pats)} of {2**d} loss patterns, VC on [-2,2]^d = {vc}")
