"""Exact rational helpers: parsing, surds, and linear algebra over Q."""

from __future__ import annotations

import math
from fractions import Fraction
from functools import total_ordering
from numbers import Rational
from typing import Iterable, Sequence

Vector = tuple[Fraction, ...]


def rational(v) -> Fraction:
    """Coerce ints, Fractions and ``"num/den"`` strings to a Fraction.

    Floats are accepted only when they are exactly representable as what they
    print as (e.g. ``0.5``); ``0.1`` is converted through its repr so the CLI
    can take ``--eps 0.1`` and mean one tenth.
    """
    if isinstance(v, Fraction):
        return v
    if isinstance(v, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(v, (int, Rational)):
        return Fraction(v)
    if isinstance(v, float):
        if not math.isfinite(v):
            raise ValueError(f"non-finite value {v!r}")
        return Fraction(repr(v))
    if isinstance(v, str):
        return Fraction(v.strip())
    # gmpy2.mpq and friends
    return Fraction(int(v.numerator), int(v.denominator))


def vector(xs: Iterable) -> Vector:
    return tuple(rational(x) for x in xs)


def fmt(q: Fraction) -> str:
    """Serialize a rational as ``"num/den"`` (bit-exact round trip)."""
    q = rational(q)
    return f"{q.numerator}/{q.denominator}"


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def is_zero(v: Sequence) -> bool:
    return all(x == 0 for x in v)


def rational_sqrt(q: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None if irrational."""
    if q < 0:
        raise ValueError("negative radicand")
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def sqrt_lower_bound(q: Fraction, digits: int = 30) -> Fraction:
    """A rational ``r`` with ``0 <= r <= sqrt(q)``, within ``10**-digits`` relative."""
    exact = rational_sqrt(q)
    if exact is not None:
        return exact
    scale = 10**digits
    r = Fraction(math.isqrt(q.numerator * scale * scale // q.denominator), scale)
    assert r * r <= q
    return r


def sqrt_upper_bound(q: Fraction, digits: int = 30) -> Fraction:
    """A rational ``r >= sqrt(q)``, within ``10**-digits`` relative."""
    exact = rational_sqrt(q)
    if exact is not None:
        return exact
    r = sqrt_lower_bound(q, digits) + Fraction(1, 10**digits)
    while r * r < q:
        r += Fraction(1, 10**digits)
    return r


@total_ordering
class SignedRoot:
    """The real number ``sign * sqrt(square)`` with rational ``square``.

    Used for l2 quantities, which are square roots of rationals. Comparisons
    against rationals and other SignedRoots are exact (done on squares).
    """

    __slots__ = ("sign", "square")

    def __init__(self, sign: int, square):
        square = rational(square)
        if square < 0:
            raise ValueError("square must be nonnegative")
        self.sign = 0 if square == 0 else (1 if sign > 0 else -1)
        self.square = square

    def __float__(self) -> float:
        return self.sign * math.sqrt(self.square)

    def __neg__(self) -> SignedRoot:
        return SignedRoot(-self.sign, self.square)

    def __abs__(self) -> SignedRoot:
        return SignedRoot(1, self.square)

    def __mul__(self, t):
        t = rational(t)
        s = self.sign * (1 if t > 0 else -1 if t < 0 else 0)
        return SignedRoot(s, self.square * t * t)

    __rmul__ = __mul__

    def _cmp(self, other) -> int:
        if isinstance(other, float) and math.isinf(other):
            return -1 if other > 0 else 1
        if isinstance(other, SignedRoot):
            os, osq = other.sign, other.square
        else:
            o = rational(other)
            os, osq = (o > 0) - (o < 0), o * o
        if self.sign != os:
            return (self.sign > os) - (self.sign < os)
        if self.square == osq:
            return 0
        mag = 1 if self.square > osq else -1
        return mag * (self.sign if self.sign else 1)

    def __eq__(self, other) -> bool:
        try:
            return self._cmp(other) == 0
        except (TypeError, ValueError):
            return NotImplemented

    def __lt__(self, other) -> bool:
        return self._cmp(other) < 0

    def __hash__(self) -> int:
        return hash((self.sign, self.square))

    def __repr__(self) -> str:
        s = "-" if self.sign < 0 else ""
        return f"{s}sqrt({self.square})"


def root(square, sign: int = 1):
    """``sign*sqrt(square)`` as a Fraction when rational, else a SignedRoot."""
    square = rational(square)
    r = rational_sqrt(square)
    if r is not None:
        return r if sign >= 0 else -r
    return SignedRoot(sign, square)


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (matrix, pivot columns)."""
    M = [[rational(v) for v in r] for r in rows]
    if not M:
        return M, []
    ncols = len(M[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [v * inv for v in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[Vector]:
    """Canonical nullspace basis: one vector per free column of the RREF."""
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(ncols)) for i in range(ncols)]
    R, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(R, pivots):
            v[pc] = -row[f]
        basis.append(tuple(v))
    return basis


def project_out(x: Sequence, basis: Sequence[Sequence]) -> Vector:
    """Orthogonal projection of ``x`` onto the complement of ``span(basis)``."""
    x = vector(x)
    if not basis:
        return x
    k = len(basis)
    gram = [[dot(basis[i], basis[j]) for j in range(k)] for i in range(k)]
    rhs = [dot(basis[i], x) for i in range(k)]
    R, _ = rref([gram[i] + [rhs[i]] for i in range(k)])
    coef = [row[-1] for row in R]
    return tuple(
        xi - sum((c * b[j] for c, b in zip(coef, basis)), Fraction(0))
        for j, xi in enumerate(x)
    )
