"""Exact adversarial empirical risk minimization.

Finite classes are scanned exhaustively. For halfspaces the search runs over
robustly-correct index sets ``S`` from largest to smallest: the first feasible
``S`` fixes the optimal risk ``(n - |S|)/n``. Feasibility is monotone (every
subset of a feasible set is feasible), so each infeasible set is shrunk to a
minimal infeasible core and every later candidate containing a known core is
skipped without an LP.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .corruption import TabularRelation, identity_relation
from .errors import CapacityError, PreconditionError
from .geometry import ConstraintSet
from .hypotheses import FiniteClass, Halfspace, LabeledDataset
from .risk import loss_vector
from .shattering import robust_subset_feasible

AERM_CAP = 18


@dataclass
class SearchStats:
    patterns_tested: int = 0
    lps_solved: int = 0
    cores: int = 0
    pruned: int = 0


@dataclass(frozen=True)
class ErmResult:
    hypothesis: object
    risk: Fraction
    pattern: tuple[int, ...]
    stats: SearchStats = field(default_factory=SearchStats)
    index: int | None = None  # row of the minimizer for finite classes


def aerm_finite(cls: FiniteClass, R: TabularRelation | None, data: LabeledDataset) -> ErmResult:
    """Exhaustive minimizer over a table; ties go to the lowest row."""
    R = identity_relation(data.points) if R is None else R
    best = None
    for k, row in enumerate(cls.rows()):
        pat = loss_vector(row, R, data)
        if best is None or sum(pat) < sum(best[1]):
            best = (k, pat)
    k, pat = best
    stats = SearchStats(patterns_tested=len(cls))
    return ErmResult(cls.names[k], Fraction(sum(pat), data.n), pat, stats, index=k)


def _mask(idx) -> int:
    m = 0
    for i in idx:
        m |= 1 << i
    return m


def _feasible(data, B, subset, stats, best=False):
    h, records = robust_subset_feasible(data, subset, B, best=best)
    stats.patterns_tested += 1
    stats.lps_solved += len(records)
    return h


def _core(data, B, subset, stats) -> list[int]:
    """Shrink an infeasible set to a minimal infeasible one (deletion filter)."""
    core = list(subset)
    for i in list(core):
        trial = [j for j in core if j != i]
        if _feasible(data, B, trial, stats) is None:
            core = trial
    return core


def aerm_halfspace(data: LabeledDataset, B: ConstraintSet, cap: int | None = AERM_CAP) -> ErmResult:
    """Exact minimizer of the empirical adversarial risk over all halfspaces.

    The witness is the largest-slack solution among the vertex pieces for the
    first feasible set in (size desc, lexicographic) order. Above ``cap`` only
    robustly separable data is accepted (one LP instead of a subset search).
    """
    n = data.n
    stats = SearchStats()
    if cap is not None and n > cap:
        # only the realizable case (everything robustly correct) is decided above the cap
        if _feasible(data, B, range(n), stats) is None:
            raise CapacityError(f"n={n} exceeds the halfspace AERM cap {cap} and the data is not robustly separable")
    cores: list[int] = []
    for size in range(n, -1, -1):
        for subset in itertools.combinations(range(n), size):
            m = _mask(subset)
            if any(c & m == c for c in cores):
                stats.pruned += 1
                continue
            if _feasible(data, B, subset, stats) is None:
                cores.append(_mask(_core(data, B, subset, stats)))
                stats.cores += 1
                continue
            h = _feasible(data, B, subset, stats, best=True)
            pat = loss_vector(h, B, data)
            risk = Fraction(sum(pat), n)
            if risk != Fraction(n - size, n):
                raise AssertionError("witness does not reproduce the searched risk")
            return ErmResult(h, risk, pat, stats)
    raise AssertionError("the empty set is always feasible")


def threshold_erm_1d(data: LabeledDataset) -> Fraction:
    """Brute-force standard 0-1 ERM over 1-D halfspaces (``sgn(0)`` counts as wrong)."""
    if data.dimension != 1:
        raise PreconditionError("threshold ERM is one-dimensional")
    xs = sorted({p[0] for p in data.points})
    cands = [xs[0] - 1, xs[-1] + 1] + [(u + v) / 2 for u, v in zip(xs, xs[1:])] + xs
    best = data.n
    for t in cands:
        for a in (1, -1):
            h = Halfspace((a,), a * t)
            best = min(best, sum(int(h(x) != c) for x, c in data))
    return Fraction(best, data.n)
