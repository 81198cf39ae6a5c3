"""Hypothesis classes and labeled data.

Labels are ``-1`` and ``+1``; :data:`BOT` (``0``) is the "always wrong" output,
which is also what a halfspace returns on its own boundary.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Iterable, Sequence

import numpy as np

from .errors import DegenerateHypothesisError, DimensionMismatch, PreconditionError
from .exact import SignedRoot, Vector, dot, is_zero, rational, vector
from .geometry import INF, ConstraintSet, dual_seminorm

BOT = 0
LABELS = (-1, 1)


def sgn(v) -> int:
    return (v > 0) - (v < 0)


def _check_label(c) -> int:
    if c not in LABELS:
        raise PreconditionError(f"label must be -1 or +1, got {c!r}")
    return int(c)


@dataclass(frozen=True)
class Halfspace:
    """``x -> sgn(a.x - b)`` with ``sgn(0) = BOT``."""

    a: Vector
    b: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "a", vector(self.a))
        object.__setattr__(self, "b", rational(self.b))

    @property
    def dimension(self) -> int:
        return len(self.a)

    @property
    def degenerate(self) -> bool:
        """Zero normal: the classifier is the constant ``sgn(-b)``."""
        return is_zero(self.a)

    def score(self, x) -> Fraction:
        x = vector(x)
        if len(x) != len(self.a):
            raise DimensionMismatch(f"halfspace is {len(self.a)}-dimensional, point has {len(x)} coordinates")
        return dot(self.a, x) - self.b

    def __call__(self, x) -> int:
        return evaluate(self, x)


def evaluate(h: Halfspace, x) -> int:
    return sgn(h.score(x))


def signed_distance(h: Halfspace, x, c: int, B: ConstraintSet):
    """Label-signed B-distance from ``x`` to the boundary of ``h``.

    ``c * (a.x - b) / ||a||_B*``; zero when the dual seminorm is infinite (the
    lineality span of ``B`` crosses the boundary) and ``+-inf`` when it is zero
    (``B`` cannot move across the boundary at all). For l2 bodies the result is
    a :class:`SignedRoot`.
    """
    c = _check_label(c)
    if h.degenerate:
        raise DegenerateHypothesisError("signed distance is undefined for a zero normal")
    g = c * h.score(x)
    D = dual_seminorm(B, h.a)
    if D == INF:
        return Fraction(0)
    if D == 0:
        return sgn(g) * INF if g else Fraction(0)
    if isinstance(D, SignedRoot):
        return SignedRoot(sgn(g), g * g / D.square)
    return g / D


def signed_distance_set(h: Halfspace, points: Sequence, labels: Sequence[int], B: ConstraintSet) -> tuple:
    return tuple(signed_distance(h, x, c, B) for x, c in zip(points, labels))


@dataclass(frozen=True)
class LabeledDataset:
    points: tuple
    labels: tuple[int, ...]

    def __post_init__(self):
        pts = tuple(vector(p) for p in self.points)
        labs = tuple(_check_label(c) for c in self.labels)
        if not pts:
            raise PreconditionError("dataset must contain at least one point")
        if len(pts) != len(labs):
            raise PreconditionError("points and labels differ in length")
        if len({len(p) for p in pts}) != 1:
            raise DimensionMismatch("points have different dimensions")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "labels", labs)

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def dimension(self) -> int:
        return len(self.points[0])

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(zip(self.points, self.labels))

    def relabel(self, labels: Sequence[int]) -> LabeledDataset:
        return LabeledDataset(self.points, tuple(labels))

    def subset(self, idx: Iterable[int]) -> LabeledDataset:
        idx = list(idx)
        return LabeledDataset(tuple(self.points[i] for i in idx), tuple(self.labels[i] for i in idx))


@dataclass(frozen=True)
class HalfspaceClass:
    """All halfspaces of R^d (used as a class marker by the shattering oracles)."""

    dimension: int


@dataclass(frozen=True)
class PointIndicatorClass:
    """``{h_z : z in Z^d}`` with ``h_z(y) = +1`` iff ``y == z``."""

    dimension: int

    def hypothesis(self, center):
        center = vector(center)

        def h(y) -> int:
            return 1 if vector(y) == center else -1

        return h


@dataclass(frozen=True, eq=False)
class FiniteClass:
    """A finite hypothesis table over a finite ground set.

    ``table[k, j]`` is the label hypothesis ``names[k]`` gives ``points[j]``.
    """

    points: tuple[Hashable, ...]
    names: tuple[Hashable, ...]
    table: np.ndarray
    _index: dict = field(init=False, repr=False)

    def __post_init__(self):
        table = np.asarray(self.table, dtype=np.int8)
        if table.shape != (len(self.names), len(self.points)):
            raise PreconditionError("table shape must be (hypotheses, points)")
        if not np.isin(table, (-1, 0, 1)).all():
            raise PreconditionError("table entries must be -1, +1 or BOT")
        table.setflags(write=False)
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "_index", {p: j for j, p in enumerate(self.points)})

    def __len__(self) -> int:
        return len(self.names)

    def column(self, point) -> int:
        return self._index[point]

    def covers(self, point) -> bool:
        return point in self._index

    def row(self, k: int) -> dict:
        return dict(zip(self.points, self.table[k].tolist()))

    def rows(self):
        for k in range(len(self.names)):
            yield self.row(k)


def lattice_box(dimension: int, lo: int, hi: int) -> list[tuple[int, ...]]:
    return list(itertools.product(range(lo, hi + 1), repeat=dimension))


def tabulate(cls, window: Sequence) -> FiniteClass:
    """Materialize an implicit class on a finite window of points.

    A :class:`PointIndicatorClass` gets one row per centre in the window plus
    a single all-(-1) row standing for every centre outside it. A sequence of
    :class:`Halfspace` objects gets one row each.
    """
    pts = tuple(dict.fromkeys(vector(p) for p in window))
    if not pts:
        raise PreconditionError("window is empty")
    if isinstance(cls, PointIndicatorClass):
        if any(len(p) != cls.dimension for p in pts):
            raise DimensionMismatch("window points must match the class dimension")
        n = len(pts)
        table = np.full((n + 1, n), -1, dtype=np.int8)
        np.fill_diagonal(table[:n], 1)
        return FiniteClass(pts, pts + ("outside",), table)
    hs = list(cls)
    if not all(isinstance(h, Halfspace) for h in hs):
        raise PreconditionError("tabulate takes a PointIndicatorClass or a sequence of Halfspaces")
    table = np.array([[evaluate(h, p) for p in pts] for h in hs], dtype=np.int8)
    return FiniteClass(pts, tuple(range(len(hs))), table.reshape(len(hs), len(pts)))


def random_finite_class(rng: np.random.Generator, n_hyp: int, n_points: int) -> FiniteClass:
    table = rng.choice(np.array(LABELS, dtype=np.int8), size=(n_hyp, n_points))
    pts = tuple((Fraction(j),) for j in range(n_points))
    return FiniteClass(pts, tuple(range(n_hyp)), table)


def as_float(v) -> float:
    """Best-effort float for display."""
    if isinstance(v, float) and math.isinf(v):
        return v
    return float(v)
