#!/usr/bin/env python3
"""Dual norms, signed distances and what an adversary does to a halfspace."""

from fractions import Fraction

from avclab import ConstraintSet, Halfspace, corrupted_evaluate, dual_seminorm, seminorm, signed_distance
from avclab.hypotheses import BOT

box = ConstraintSet.lp_ball(2, "inf", 1)     # every coordinate moves by at most 1
diamond = ConstraintSet.lp_ball(2, 1, 1)     # total movement at most 1
disk = ConstraintSet.lp_ball(2, 2, 1)

w = (3, -4)
print("dual of (3,-4):  box", dual_seminorm(box, w), " diamond", dual_seminorm(diamond, w), " disk", dual_seminorm(disk, w))
print("gauge of (2,0):  box", seminorm(box, (2, 0)), " diamond", seminorm(diamond, (2, 0)))

# a vertical boundary through the origin
h = Halfspace((1, 0), 0)
for x in [(2, 0), (Fraction(1, 2), 0), (1, 0), (-3, 0)]:
    lab = corrupted_evaluate(h, disk, x)
    print(f"x={tuple(map(str, x))}: plain {h(x):+d}, corrupted {'BOT' if lab == BOT else f'{lab:+d}'}, "
          f"signed distance {signed_distance(h, x, 1, disk)}")

# the adversary wins exactly when the signed distance is at most 1
x = (Fraction(5, 4), 7)
print("distance", signed_distance(h, x, 1, box), "->", corrupted_evaluate(h, box, x))

# a free direction in the body: any normal not orthogonal to it is always corrupted
slab = ConstraintSet.lp_ball(2, "inf", 1, lineality=[(1, 0)])
print("with e1 free, (1,1) has dual", dual_seminorm(slab, (1, 1)), "and labels everything",
      corrupted_evaluate(Halfspace((1, 1), 0), slab, (100, 100)))
