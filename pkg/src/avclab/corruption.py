"""Corrupted hypotheses and the 0-1 loss over ``{-1, +1, BOT}``."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Mapping

from .errors import CoverageError, PreconditionError
from .exact import SignedRoot, vector
from .geometry import INF, ConstraintSet, dual_seminorm
from .hypotheses import BOT, Halfspace, sgn


def corrupted_evaluate(h: Halfspace, B: ConstraintSet, x) -> int:
    """Label of ``h`` that survives every perturbation in ``x + B``.

    +1 / -1 when all of ``x + B`` lies strictly on that side, BOT otherwise
    (touching the boundary counts: the body is closed).
    """
    g = h.score(x)
    D = dual_seminorm(B, h.a)
    if D == INF:
        return BOT
    if isinstance(D, SignedRoot):
        # |g| > D  <=>  g^2 > D^2, with g != 0
        return sgn(g) if g * g > D.square else BOT
    if g > D:
        return 1
    if g < -D:
        return -1
    return BOT


def zero_one_loss(label: int, c: int) -> int:
    if c not in (-1, 1):
        raise PreconditionError(f"true label must be -1 or +1, got {c!r}")
    return int(label != c)


@dataclass(frozen=True)
class TabularRelation:
    """A nearness relation on a finite ground set, as neighbourhood lists."""

    neighbors: Mapping[Hashable, frozenset]

    def __post_init__(self):
        nb = {k: frozenset(v) for k, v in self.neighbors.items()}
        empty = [k for k, v in nb.items() if not v]
        if empty:
            raise PreconditionError(f"empty neighbourhood at {empty[0]!r}")
        object.__setattr__(self, "neighbors", nb)

    def __getitem__(self, x) -> frozenset:
        try:
            return self.neighbors[x]
        except KeyError:
            raise CoverageError(f"relation has no neighbourhood for {x!r}") from None

    @property
    def points(self) -> list:
        return list(self.neighbors)

    def contains(self, other: TabularRelation) -> bool:
        """True when ``other`` is a sub-relation of this one."""
        return all(x in self.neighbors and v <= self.neighbors[x] for x, v in other.neighbors.items())

    def support(self) -> set:
        out = set(self.neighbors)
        for v in self.neighbors.values():
            out |= v
        return out


def identity_relation(points: Iterable) -> TabularRelation:
    return TabularRelation({p: frozenset([p]) for p in points})


def lattice_relation(points: Iterable, radius: int = 1) -> TabularRelation:
    """The l_inf ball of integer ``radius`` on the integer lattice."""
    out = {}
    for p in points:
        p = vector(p)
        offsets = itertools.product(range(-radius, radius + 1), repeat=len(p))
        out[p] = frozenset(tuple(c + o for c, o in zip(p, off)) for off in offsets)
    return TabularRelation(out)


def _lookup(row, y):
    if callable(row):
        return row(y)
    try:
        return row[y]
    except KeyError:
        raise CoverageError(f"hypothesis table does not cover neighbour {y!r}") from None


def corrupt_point(row: Mapping | Callable, R: TabularRelation, x) -> int:
    seen = {_lookup(row, y) for y in R[x]}
    if len(seen) == 1:
        (v,) = seen
        return v
    return BOT


def corrupt_tabular(row: Mapping | Callable, R: TabularRelation, points: Iterable | None = None) -> dict:
    """Corrupt a tabulated hypothesis by scanning each neighbourhood."""
    pts = R.points if points is None else points
    return {x: corrupt_point(row, R, x) for x in pts}
