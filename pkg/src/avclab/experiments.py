"""Sample-complexity and budget-sweep experiments on synthetic distributions.

These runs are empirical evidence about learning curves, not a proof of
learnability: every distribution here is one concrete choice, and the
designs are original to this package.

Samples are rounded to multiples of ``2**-20`` so the exact oracles apply
downstream. Risks on the holdout are exact counts of corrupted losses. The
"best" holdout risk is exact (zero) when the holdout is robustly separable;
otherwise it is the minimum over every hypothesis the run produced at that
budget, and ``best_method`` says which one was used.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .aerm import AERM_CAP, aerm_halfspace
from .errors import PreconditionError
from .exact import SignedRoot, fmt, rational, vector
from .geometry import INF, ConstraintSet, dual_seminorm
from .hypotheses import Halfspace, LabeledDataset
from .shattering import robust_subset_feasible

DENOM = 2**20
HOLDOUT_SIZE = 10_000
KINDS = ("gaussian_mixture", "uniform_margin", "tabular")
THREADS_ENV = "AVCLAB_THREADS"


@dataclass(frozen=True)
class DistributionSpec:
    """A distribution over labeled points.

    ``gaussian_mixture``: class ``c`` drawn with ``class_probs`` (order -1, +1),
    then ``x ~ N(means[c], scale^2 I)``.
    ``uniform_margin``: the +1 box has first coordinate in
    ``[gap/2, gap/2 + width]``, the -1 box is its mirror image, and the other
    coordinates are uniform on ``[-height, height]``.
    ``tabular``: ``support`` is a list of ``(x, c)`` drawn with ``pmf``.
    """

    kind: str
    dimension: int
    class_probs: tuple = (Fraction(1, 2), Fraction(1, 2))
    means: tuple = ()
    scale: Fraction = Fraction(1)
    gap: Fraction = Fraction(0)
    width: Fraction = Fraction(1)
    height: Fraction = Fraction(1)
    support: tuple = ()
    pmf: tuple = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise PreconditionError(f"unknown distribution kind {self.kind!r}")
        if self.dimension < 1:
            raise PreconditionError("dimension must be positive")
        probs = tuple(rational(p) for p in (self.pmf if self.kind == "tabular" else self.class_probs))
        if any(p < 0 for p in probs) or sum(probs) != 1:
            raise PreconditionError("probabilities must be nonnegative and sum to 1")
        if self.kind == "gaussian_mixture":
            if len(self.means) != 2 or any(len(m) != self.dimension for m in self.means):
                raise PreconditionError("gaussian_mixture needs two means of the distribution's dimension")
            if rational(self.scale) <= 0:
                raise PreconditionError("scale must be positive")
        elif self.kind == "uniform_margin":
            if rational(self.gap) <= 0:
                raise PreconditionError("uniform_margin boxes must be disjoint (gap > 0)")
            if rational(self.width) <= 0 or rational(self.height) < 0:
                raise PreconditionError("box sides must be positive")
        else:
            if len(self.support) != len(self.pmf) or not self.support:
                raise PreconditionError("tabular support and pmf differ in length")
            for x, c in self.support:
                if len(x) != self.dimension or c not in (-1, 1):
                    raise PreconditionError(f"bad support atom {(x, c)!r}")

    @classmethod
    def uniform_margin(cls, dimension: int, gap, width=1, height=1, class_probs=(Fraction(1, 2), Fraction(1, 2))):
        return cls("uniform_margin", dimension, tuple(rational(p) for p in class_probs),
                   gap=rational(gap), width=rational(width), height=rational(height))

    @classmethod
    def gaussian_mixture(cls, means, scale=1, class_probs=(Fraction(1, 2), Fraction(1, 2))):
        means = tuple(vector(m) for m in means)
        return cls("gaussian_mixture", len(means[0]), tuple(rational(p) for p in class_probs),
                   means=means, scale=rational(scale))

    @classmethod
    def tabular(cls, support, pmf):
        support = tuple((vector(x), int(c)) for x, c in support)
        return cls("tabular", len(support[0][0]), support=support, pmf=tuple(rational(p) for p in pmf))

    def to_dict(self) -> dict:
        out = {"kind": self.kind, "dim": self.dimension}
        if self.kind == "tabular":
            out["support"] = [[[fmt(v) for v in x], c] for x, c in self.support]
            out["pmf"] = [fmt(p) for p in self.pmf]
            return out
        out["class_probs"] = [fmt(p) for p in self.class_probs]
        if self.kind == "gaussian_mixture":
            out["means"] = [[fmt(v) for v in m] for m in self.means]
            out["scale"] = fmt(self.scale)
        else:
            out.update(gap=fmt(self.gap), width=fmt(self.width), height=fmt(self.height))
        return out

    @classmethod
    def from_dict(cls, doc: dict) -> DistributionSpec:
        kind = doc["kind"].replace("-", "_")
        if kind == "tabular":
            return cls.tabular([(x, c) for x, c in doc["support"]], doc["pmf"])
        probs = tuple(doc.get("class_probs", ("1/2", "1/2")))
        if kind == "gaussian_mixture":
            return cls.gaussian_mixture(doc["means"], doc.get("scale", 1), probs)
        if kind == "uniform_margin":
            return cls.uniform_margin(doc["dim"], doc["gap"], doc.get("width", 1), doc.get("height", 1), probs)
        raise PreconditionError(f"unknown distribution kind {doc['kind']!r}")


def _round(X: np.ndarray) -> list[tuple[Fraction, ...]]:
    K = np.rint(X * DENOM).astype(np.int64)
    return [tuple(Fraction(int(v), DENOM) for v in row) for row in K]


def sample(spec: DistributionSpec, n: int, seed) -> LabeledDataset:
    """``n`` draws from ``spec``; deterministic in ``(spec, n, seed)``."""
    if n < 1:
        raise PreconditionError("n must be at least 1")
    rng = np.random.default_rng(seed)
    d = spec.dimension
    if spec.kind == "tabular":
        p = np.array([float(q) for q in spec.pmf])
        idx = rng.choice(len(spec.support), size=n, p=p / p.sum())
        atoms = [spec.support[i] for i in idx]
        return LabeledDataset(tuple(x for x, _ in atoms), tuple(c for _, c in atoms))
    p_plus = float(spec.class_probs[1])
    labels = np.where(rng.random(n) < p_plus, 1, -1)
    if spec.kind == "gaussian_mixture":
        mu = np.array([[float(v) for v in m] for m in spec.means])
        centers = mu[(labels + 1) // 2]
        X = centers + float(spec.scale) * rng.standard_normal((n, d))
    else:
        first = float(spec.gap) / 2 + float(spec.width) * rng.random(n)
        X = np.empty((n, d))
        X[:, 0] = labels * first
        if d > 1:
            h = float(spec.height)
            X[:, 1:] = rng.uniform(-h, h, size=(n, d - 1))
    return LabeledDataset(tuple(_round(X)), tuple(int(c) for c in labels))


# ---------------------------------------------------------------------------
# exact holdout evaluation


class Holdout:
    """A fixed evaluation sample with integer coordinates (``x * 2**20``)."""

    def __init__(self, data: LabeledDataset):
        self.data = data
        den = 1
        for x in data.points:
            for v in x:
                den = math.lcm(den, v.denominator)
        self.den = den
        self.X = np.array([[int(v * den) for v in x] for x in data.points], dtype=object)
        self.c = np.array(data.labels, dtype=object)

    def risk(self, h: Halfspace, B: ConstraintSet) -> Fraction:
        """Exact adversarial risk of ``h`` on the holdout."""
        D = dual_seminorm(B, h.a)
        n = self.data.n
        if D == INF:
            return Fraction(1)
        L = math.lcm(self.den, h.b.denominator, *(v.denominator for v in h.a))
        if isinstance(D, Fraction):
            L = math.lcm(L, D.denominator)
        A = np.array([int(v * L) for v in h.a], dtype=object)
        # margins scaled by L * den, all Python integers
        M = self.c * (self.X.dot(A) - int(h.b * L * self.den))
        if isinstance(D, SignedRoot):
            thr2 = D.square * (L * self.den) ** 2
            ok = sum(1 for m in M if m > 0 and m * m > thr2)
        else:
            thr = int(D * L * self.den)
            ok = int((M > thr).sum())
        return Fraction(n - ok, n)


# ---------------------------------------------------------------------------
# records


@dataclass
class ExperimentRecord:
    experiment: str
    seed: int
    trial: int
    n: int
    eps: Fraction
    train_risk: Fraction
    holdout_risk: Fraction
    best_holdout: Fraction | None = None
    excess: Fraction | None = None
    best_method: str = ""
    hypothesis: Halfspace | None = None
    wall_time: float = 0.0

    def to_dict(self, timing: bool = False) -> dict:
        out = {
            "experiment": self.experiment,
            "seed": self.seed,
            "trial": self.trial,
            "n": self.n,
            "eps": fmt(self.eps),
            "train_risk": fmt(self.train_risk),
            "holdout_risk": fmt(self.holdout_risk),
            "best_holdout": None if self.best_holdout is None else fmt(self.best_holdout),
            "excess": None if self.excess is None else fmt(self.excess),
            "best_method": self.best_method,
            "hypothesis": None if self.hypothesis is None else {
                "a": [fmt(v) for v in self.hypothesis.a], "b": fmt(self.hypothesis.b)},
        }
        if timing:
            out["wall_time"] = round(self.wall_time, 6)
        return out


def _trial_seed(seed: int, *keys: int) -> np.random.SeedSequence:
    return np.random.SeedSequence([seed, *keys])


def _holdout_seed(seed: int) -> np.random.SeedSequence:
    # a key no trial uses
    return np.random.SeedSequence([seed, 2**32 - 1, 0])


def _fit(task):
    data, B, eps, cap = task
    t0 = time.perf_counter()
    res = aerm_halfspace(data, B, cap=cap)
    return res.hypothesis, res.risk, time.perf_counter() - t0


def _workers(threads: int | None) -> int:
    if threads is None:
        threads = int(os.environ.get(THREADS_ENV, "1") or 1)
    return max(1, threads)


def _map(fn, tasks, threads):
    w = _workers(threads)
    if w == 1 or len(tasks) < 2:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=w) as ex:
        return list(ex.map(fn, tasks))


def _finish(kind, seed, keys, fits, bodies, holdout: Holdout):
    """Score every fitted hypothesis on the shared holdout and fill in "best"."""
    risks = [holdout.risk(h, bodies[k[1]]) for (h, _, _), k in zip(fits, keys)]
    best = {}
    for eps, B in bodies.items():
        h, _ = robust_subset_feasible(holdout.data, range(holdout.data.n), B)
        if h is not None:
            best[eps] = (Fraction(0), "holdout-separable")
        else:
            pool = [r for r, k in zip(risks, keys) if k[1] == eps]
            best[eps] = (min(pool), "min-over-run")
    records = []
    for (h, train, wall), (n, eps, trial), r in zip(fits, keys, risks):
        b, method = best[eps]
        records.append(ExperimentRecord(kind, seed, trial, n, eps, train, r, b, r - b, method, h, wall))
    records.sort(key=lambda r: (r.n, r.eps, r.trial))
    return records


def run_sample_complexity(
    spec: DistributionSpec,
    B: ConstraintSet,
    n_grid: Sequence[int],
    trials: int,
    seed: int,
    holdout_size: int = HOLDOUT_SIZE,
    cap: int | None = AERM_CAP,
    threads: int | None = None,
) -> list[ExperimentRecord]:
    """For each ``(n, trial)``: fresh training sample, exact AERM, holdout risks."""
    if trials < 1:
        raise PreconditionError("trials must be positive")
    if B.dimension != spec.dimension:
        raise PreconditionError("body and distribution dimensions differ")
    eps = B.eps
    holdout = Holdout(sample(spec, holdout_size, _holdout_seed(seed)))
    keys, tasks = [], []
    for n in n_grid:
        for t in range(trials):
            data = sample(spec, n, _trial_seed(seed, n, t))
            keys.append((n, eps, t))
            tasks.append((data, B, eps, cap))
    fits = _map(_fit, tasks, threads)
    return _finish("sample_complexity", seed, keys, fits, {eps: B}, holdout)


def run_monotonicity(
    spec: DistributionSpec,
    eps_grid: Sequence,
    n: int,
    trials: int,
    seed: int,
    p=INF,
    holdout_size: int = HOLDOUT_SIZE,
    cap: int | None = AERM_CAP,
    threads: int | None = None,
) -> list[ExperimentRecord]:
    """One training sample per trial, swept over the budgets in ``eps_grid``.

    The optimal empirical risk of each trial must be nondecreasing in the
    budget; a violation raises ``AssertionError``.
    """
    if trials < 1:
        raise PreconditionError("trials must be positive")
    grid = sorted({rational(e) for e in eps_grid})
    bodies = {e: ConstraintSet.lp_ball(spec.dimension, p, e) for e in grid}
    holdout = Holdout(sample(spec, holdout_size, _holdout_seed(seed)))
    keys, tasks = [], []
    for t in range(trials):
        data = sample(spec, n, _trial_seed(seed, t))
        for e in grid:
            keys.append((n, e, t))
            tasks.append((data, bodies[e], e, cap))
    fits = _map(_fit, tasks, threads)
    by_trial: dict[int, list] = {}
    for (_, train, _), (_, e, t) in zip(fits, keys):
        by_trial.setdefault(t, []).append((e, train))
    for t, seq in by_trial.items():
        risks = [r for _, r in sorted(seq)]
        if any(u > v for u, v in zip(risks, risks[1:])):
            raise AssertionError(f"trial {t}: optimal risk decreased along the budget grid: {risks}")
    return _finish("monotonicity", seed, keys, fits, bodies, holdout)


# ---------------------------------------------------------------------------
# output


def to_jsonl(records: Sequence[ExperimentRecord], timing: bool = False) -> str:
    """One JSON document per line. Without ``timing`` the stream is reproducible byte for byte."""
    return "".join(json.dumps(r.to_dict(timing), sort_keys=True) + "\n" for r in records)


def summarize(records: Sequence[ExperimentRecord]) -> list[dict]:
    groups: dict[tuple, list[float]] = {}
    for r in records:
        groups.setdefault((r.n, r.eps), []).append(float(r.excess))
    out = []
    for (n, eps), xs in sorted(groups.items()):
        q1, med, q3 = np.percentile(xs, [25, 50, 75])
        out.append({"n": n, "eps": fmt(eps), "median_excess": float(med), "iqr": float(q3 - q1), "trials": len(xs)})
    return out


def summary_csv(records: Sequence[ExperimentRecord]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=["n", "eps", "median_excess", "iqr", "trials"], lineterminator="\n")
    w.writeheader()
    w.writerows(summarize(records))
    return buf.getvalue()


def median_excess(records: Sequence[ExperimentRecord]) -> dict:
    """``{n: median excess}`` as exact rationals (midpoint for even counts)."""
    groups: dict[int, list[Fraction]] = {}
    for r in records:
        groups.setdefault(r.n, []).append(r.excess)
    out = {}
    for n, xs in sorted(groups.items()):
        xs = sorted(xs)
        k = len(xs)
        out[n] = xs[k // 2] if k % 2 else (xs[k // 2 - 1] + xs[k // 2]) / 2
    return out
