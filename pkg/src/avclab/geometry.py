"""Perturbation bodies: seminorm, dual seminorm, support points, lineality.

A :class:`ConstraintSet` is the full perturbation set ``B`` (budget included),
so the adversary moves ``x`` anywhere in ``x + B``. Bodies are an l1/l2/linf
ball, an origin-symmetric polytope given by its vertices, or the degenerate
``{0}``; any of them may be summed with an explicit linear subspace.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import lp
from .errors import DimensionMismatch, NoSupportError, PreconditionError, UnsupportedBodyError
from .exact import Vector, dot, is_zero, project_out, rank, rational, root, vector

INF = math.inf

LP_KINDS = (1, 2, INF)


def _norm_p(p):
    if p in ("inf", "Inf", "INF", "infinity") or p == INF:
        return INF
    p = int(p)
    if p not in (1, 2):
        raise PreconditionError(f"unsupported l_p ball p={p}; use 1, 2 or inf")
    return p


@dataclass(frozen=True)
class ConstraintSet:
    dimension: int
    kind: str  # "lp" | "polytope" | "identity"
    p: float | int | None = None
    eps: Fraction = Fraction(0)
    vertex_list: tuple[Vector, ...] = ()
    lineality_basis: tuple[Vector, ...] = ()

    def __post_init__(self):
        if self.dimension < 1:
            raise PreconditionError("dimension must be positive")
        if self.kind not in ("lp", "polytope", "identity"):
            raise PreconditionError(f"unknown body kind {self.kind!r}")
        if self.eps < 0:
            raise PreconditionError("radius must be nonnegative")
        for v in self.vertex_list + self.lineality_basis:
            if len(v) != self.dimension:
                raise DimensionMismatch("vector length differs from body dimension")
        if self.kind == "polytope":
            if not self.vertex_list:
                raise PreconditionError("polytope needs at least one vertex")
            vs = set(self.vertex_list)
            if any(tuple(-c for c in v) not in vs for v in vs):
                raise PreconditionError("polytope vertex set must be origin-symmetric")
        if self.lineality_basis and rank(self.lineality_basis) != len(self.lineality_basis):
            raise PreconditionError("lineality basis vectors must be linearly independent")

    # constructors

    @classmethod
    def lp_ball(cls, dimension: int, p, eps, lineality: Sequence = ()) -> ConstraintSet:
        eps = rational(eps)
        lin = tuple(vector(u) for u in lineality)
        if eps == 0:
            return cls(dimension, "identity", lineality_basis=lin)
        return cls(dimension, "lp", _norm_p(p), eps, lineality_basis=lin)

    @classmethod
    def polytope(cls, vertices: Sequence, lineality: Sequence = ()) -> ConstraintSet:
        vs = tuple(dict.fromkeys(vector(v) for v in vertices))
        if not vs:
            raise PreconditionError("polytope needs at least one vertex")
        return cls(len(vs[0]), "polytope", vertex_list=vs, lineality_basis=tuple(vector(u) for u in lineality))

    @classmethod
    def identity(cls, dimension: int, lineality: Sequence = ()) -> ConstraintSet:
        return cls(dimension, "identity", lineality_basis=tuple(vector(u) for u in lineality))

    # structure

    @property
    def is_polyhedral(self) -> bool:
        return self.kind != "lp" or self.p != 2

    @property
    def radius(self) -> Fraction:
        return self.eps

    def scaled(self, t) -> ConstraintSet:
        """The body ``t * B`` (lineality is unaffected by scaling)."""
        t = rational(t)
        if t < 0:
            raise PreconditionError("scale must be nonnegative")
        if t == 0 or self.kind == "identity":
            return ConstraintSet.identity(self.dimension, self.lineality_basis)
        if self.kind == "lp":
            return ConstraintSet.lp_ball(self.dimension, self.p, self.eps * t, self.lineality_basis)
        return ConstraintSet.polytope([tuple(t * c for c in v) for v in self.vertex_list], self.lineality_basis)

    def vertices(self) -> tuple[Vector, ...]:
        """Vertices of the bounded part, in canonical order."""
        d = self.dimension
        if self.kind == "identity":
            return (tuple(Fraction(0) for _ in range(d)),)
        if self.kind == "polytope":
            return self.vertex_list
        if self.p == INF:
            return tuple(
                tuple(s * self.eps for s in signs)
                for signs in itertools.product((1, -1), repeat=d)
            )
        if self.p == 1:
            out = []
            for i in range(d):
                for s in (1, -1):
                    out.append(tuple(s * self.eps if j == i else Fraction(0) for j in range(d)))
            return tuple(out)
        raise UnsupportedBodyError("l2 ball has no vertex description")

    def _check(self, x) -> Vector:
        x = vector(x)
        if len(x) != self.dimension:
            raise DimensionMismatch(f"expected a vector of length {self.dimension}, got {len(x)}")
        return x

    def contains(self, x) -> bool:
        s = seminorm(self, x)
        return s <= 1


def lineality(B: ConstraintSet) -> tuple[int, list[Vector]]:
    """Dimension and a basis of the largest subspace contained in ``B``."""
    return len(B.lineality_basis), list(B.lineality_basis)


def orthogonal_to_lineality(B: ConstraintSet, w) -> bool:
    return all(dot(w, u) == 0 for u in B.lineality_basis)


def dual_seminorm(B: ConstraintSet, w):
    """``sup_{y in B} w.y``: a Fraction, a SignedRoot (l2), or ``inf``."""
    w = B._check(w)
    if not orthogonal_to_lineality(B, w):
        return INF
    if B.kind == "identity":
        return Fraction(0)
    if B.kind == "polytope":
        return max(dot(w, v) for v in B.vertex_list)
    if B.p == INF:
        return B.eps * sum(abs(c) for c in w)
    if B.p == 1:
        return B.eps * max(abs(c) for c in w)
    return root(B.eps**2 * sum(c * c for c in w))


def support_vertex(B: ConstraintSet, w) -> Vector:
    """A vertex of ``B`` attaining the dual seminorm of ``w``.

    Ties are broken towards the lexicographically largest maximizer.
    """
    w = B._check(w)
    if not B.is_polyhedral:
        raise UnsupportedBodyError("support_vertex needs a polyhedral body")
    if not orthogonal_to_lineality(B, w):
        raise NoSupportError("dual seminorm is infinite: w is not orthogonal to the lineality space")
    vals = [(dot(w, v), v) for v in B.vertices()]
    best = max(val for val, _ in vals)
    return max(v for val, v in vals if val == best)


def seminorm(B: ConstraintSet, x):
    """Gauge of ``B`` at ``x``: Fraction, SignedRoot (l2) or ``inf``."""
    x = B._check(x)
    if B.lineality_basis:
        x = project_out(x, B.lineality_basis)
        if is_zero(x):
            return Fraction(0)
    if B.kind == "identity":
        return Fraction(0) if is_zero(x) else INF
    if B.kind == "lp" and not B.lineality_basis:
        if B.p == INF:
            return max(abs(c) for c in x) / B.eps
        if B.p == 1:
            return sum(abs(c) for c in x) / B.eps
        return root(sum(c * c for c in x) / B.eps**2)
    if B.kind == "lp" and B.p == 2:
        # the ball's component along the lineality span is free; measure the rest
        return root(sum(c * c for c in x) / B.eps**2)
    return _polyhedral_gauge(B, x)


def _polyhedral_gauge(B: ConstraintSet, x: Vector):
    # min s  s.t.  x = sum_v mu_v v + sum_k lam_k u_k,  mu >= 0,  s = sum mu
    V = B.vertices()
    L = B.lineality_basis
    nmu, nl = len(V), len(L)
    nv = nmu + nl
    A_eq = []
    b_eq = []
    for j in range(B.dimension):
        A_eq.append([v[j] for v in V] + [u[j] for u in L])
        b_eq.append(x[j])
    c = [-1] * nmu + [0] * nl
    res = lp.maximize(c, A_eq=A_eq, b_eq=b_eq, nonneg=[True] * nmu + [False] * nl)
    if res.status == lp.INFEASIBLE:
        return INF
    return -res.value
