"""Adversarial empirical risk, Rademacher complexity and the learning bounds."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

from .corruption import TabularRelation, corrupt_point, corrupted_evaluate, zero_one_loss
from .errors import CapacityError, PreconditionError
from .exact import rational
from .geometry import ConstraintSet
from .hypotheses import Halfspace, LabeledDataset

RADEMACHER_CAP = 16


def corrupted_labels(h, adversary, points) -> list[int]:
    if isinstance(adversary, ConstraintSet):
        if not isinstance(h, Halfspace):
            raise PreconditionError("a ConstraintSet adversary needs a Halfspace hypothesis")
        return [corrupted_evaluate(h, adversary, x) for x in points]
    if isinstance(adversary, TabularRelation):
        return [corrupt_point(h, adversary, x) for x in points]
    raise PreconditionError(f"unsupported adversary {type(adversary).__name__}")


def loss_vector(h, adversary, data: LabeledDataset) -> tuple[int, ...]:
    labels = corrupted_labels(h, adversary, data.points)
    return tuple(zero_one_loss(l, c) for l, c in zip(labels, data.labels))


def adversarial_empirical_risk(h, adversary, data: LabeledDataset) -> Fraction:
    """Mean worst-case 0-1 loss of ``h`` over the neighbourhoods of ``data``.

    ``h`` is a :class:`Halfspace` against a :class:`ConstraintSet`, or a
    table row (mapping or callable on point ids) against a
    :class:`TabularRelation`.
    """
    return Fraction(sum(loss_vector(h, adversary, data)), data.n)


def margin_loss(c: int, s) -> int:
    """Modified 0-1 loss: zero only when the label-signed score exceeds 1."""
    if c not in (-1, 1):
        raise PreconditionError("label must be -1 or +1")
    return 0 if c * rational(s) > 1 else 1


@dataclass(frozen=True)
class LossVectorSet:
    n: int
    vectors: frozenset

    def __post_init__(self):
        vs = frozenset(tuple(int(b) for b in v) for v in self.vectors)
        if any(len(v) != self.n for v in vs):
            raise PreconditionError("loss vectors must all have length n")
        if any(b not in (0, 1) for v in vs for b in v):
            raise PreconditionError("loss vectors are 0/1")
        object.__setattr__(self, "vectors", vs)

    @classmethod
    def of(cls, vectors: Iterable) -> LossVectorSet:
        vs = frozenset(tuple(v) for v in vectors)
        if not vs:
            raise PreconditionError("empty loss-vector set")
        return cls(len(next(iter(vs))), vs)

    def __len__(self) -> int:
        return len(self.vectors)

    def as_array(self) -> np.ndarray:
        return np.array(sorted(self.vectors), dtype=np.int64).reshape(len(self.vectors), self.n)


@dataclass(frozen=True)
class RademacherEstimate:
    """Monte-Carlo value, returned only when sampling is requested explicitly."""

    value: float
    samples: int
    seed: int
    exact: bool = False


def rademacher_complexity(
    T: LossVectorSet,
    cap: int = RADEMACHER_CAP,
    samples: int | None = None,
    seed: int | None = None,
):
    """``(1/(n 2^n)) * sum_s max_{t in T} s.t`` by full enumeration.

    All sums are integers, so the result is an exact Fraction. Above ``cap``
    a :class:`CapacityError` is raised unless ``samples`` is given, in which
    case a tagged :class:`RademacherEstimate` is returned instead.
    """
    if len(T) == 0:
        raise PreconditionError("Rademacher complexity of an empty set is undefined")
    n = T.n
    M = T.as_array()
    if n > cap:
        if samples is None:
            raise CapacityError(f"n={n} exceeds the exhaustive cap {cap}; pass samples= for an estimate")
        if seed is None:
            raise PreconditionError("sampling mode needs an explicit seed")
        rng = np.random.default_rng(seed)
        S = rng.choice(np.array([-1, 1], dtype=np.int64), size=(samples, n))
        return RademacherEstimate(float((S @ M.T).max(axis=1).mean() / n), samples, seed)
    total = 0
    # chunk the 2^n sign vectors; integer partial sums make the order irrelevant
    chunk = 1 << min(n, 12)
    for start in range(0, 1 << n, chunk):
        idx = np.arange(start, min(start + chunk, 1 << n), dtype=np.int64)
        bits = (idx[:, None] >> np.arange(n - 1, -1, -1)) & 1
        S = 2 * bits - 1
        total += int((S @ M.T).max(axis=1).sum())
    return Fraction(total, n * (1 << n))


def massart_bound(size: int, n: int) -> float:
    return math.sqrt(2 * math.log(size) / n)


def generalization_bound(rad, n: int, delta) -> float:
    """``2 R + sqrt(32 log(4/delta) / n)`` with the natural log."""
    delta = rational(delta)
    if not 0 < delta < 1:
        raise PreconditionError("delta must lie in (0, 1)")
    if n < 1:
        raise PreconditionError("n must be positive")
    return 2 * float(rad) + math.sqrt(32 * math.log(4 / delta) / n)


def sample_complexity_bound(d: int, eps, delta, C=1) -> int:
    """``ceil(C (d log(d/eps) + log(1/delta)) / eps^2)`` with the natural log."""
    eps, delta, C = rational(eps), rational(delta), rational(C)
    if not 0 < eps < 1:
        raise PreconditionError("eps must lie in (0, 1)")
    if not 0 < delta < 1:
        raise PreconditionError("delta must lie in (0, 1)")
    if d < 1:
        raise PreconditionError("d must be at least 1")
    if C <= 0:
        raise PreconditionError("C must be positive")
    val = float(C) * (d * math.log(d / eps) + math.log(1 / delta)) / float(eps) ** 2
    return math.ceil(val)
