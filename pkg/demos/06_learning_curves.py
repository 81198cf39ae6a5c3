#!/usr/bin/env python3
"""Learning curves on a synthetic robustly separable distribution.

One draw of one distribution: evidence of the trend, not a proof of
learnability. Pass a directory to also write records.jsonl and summary.csv.
"""

import sys
from fractions import Fraction
from pathlib import Path

from avclab import ConstraintSet
from avclab.experiments import DistributionSpec, median_excess, run_monotonicity, run_sample_complexity, summary_csv, to_jsonl

out = Path(sys.argv[1]) if len(sys.argv) > 1 else None
spec = DistributionSpec.uniform_margin(2, Fraction(21, 10), width=4, height=4)

for eps in (0, 1):
    B = ConstraintSet.lp_ball(2, "inf", eps)
    recs = run_sample_complexity(spec, B, [10, 20, 40, 80, 160], trials=20, seed=7)
    curve = {n: float(m) for n, m in median_excess(recs).items()}
    print(f"eps={eps}: median excess holdout risk by n: {curve}")
    if eps == 1 and out is not None:
        out.mkdir(parents=True, exist_ok=True)
        (out / "records.jsonl").write_text(to_jsonl(recs))
        (out / "summary.csv").write_text(summary_csv(recs))

noisy = DistributionSpec.gaussian_mixture([(-1, 0), (1, 0)], scale=1)
recs = run_monotonicity(noisy, [0, Fraction(1, 4), Fraction(1, 2), 1], n=10, trials=5, seed=3, holdout_size=2000)
for t in range(5):
    print(f"trial {t}: optimal train risk by eps", [str(r.train_risk) for r in recs if r.trial == t])
