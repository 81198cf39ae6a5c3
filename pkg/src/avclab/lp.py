"""Exact rational linear programming.

A dense two-phase tableau simplex over ``gmpy2.mpq`` with Bland's rule, so it
always terminates and never needs a tolerance. Problems here are small (a few
free variables, tens of constraints); the tableau is rebuilt per solve.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from gmpy2 import mpq

__all__ = ["LPResult", "maximize", "to_mpq", "to_fraction"]

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


def to_mpq(v) -> mpq:
    if isinstance(v, Fraction):
        return mpq(v.numerator, v.denominator)
    return mpq(v)


def to_fraction(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    v = mpq(v)
    return Fraction(int(v.numerator), int(v.denominator))


@dataclass(frozen=True)
class LPResult:
    status: str
    x: tuple[Fraction, ...] | None = None
    value: Fraction | None = None
    pivots: int = 0

    @property
    def feasible(self) -> bool:
        return self.status != INFEASIBLE


class _Tableau:
    """Rows ``T[i] = [coefs..., rhs]``; ``basis[i]`` is the basic column of row i."""

    def __init__(self, rows, basis, ncols):
        self.T = rows
        self.basis = basis
        self.ncols = ncols
        self.pivots = 0

    def pivot(self, r: int, c: int, obj: list) -> None:
        T = self.T
        prow = T[r]
        inv = 1 / prow[c]
        if inv != 1:
            prow[:] = [v * inv for v in prow]
        nz = [j for j, v in enumerate(prow) if v]
        for i, row in enumerate(T):
            if i != r:
                f = row[c]
                if f:
                    for j in nz:
                        row[j] -= f * prow[j]
        f = obj[c]
        if f:
            for j in nz:
                obj[j] -= f * prow[j]
        self.basis[r] = c
        self.pivots += 1

    def run(self, obj: list, allowed: int) -> str:
        """Maximize; ``obj`` holds reduced costs (positive = improving), last entry -value."""
        T = self.T
        while True:
            enter = next((j for j in range(allowed) if obj[j] > 0), None)
            if enter is None:
                return OPTIMAL
            best = None
            for i, row in enumerate(T):
                a = row[enter]
                if a > 0:
                    ratio = row[-1] / a
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return UNBOUNDED
            self.pivot(best[1], enter, obj)


def maximize(
    c: Sequence,
    A_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
    A_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
    nonneg: Sequence[bool] | None = None,
) -> LPResult:
    """Maximize ``c @ x`` subject to ``A_ub x <= b_ub`` and ``A_eq x == b_eq``.

    Variables are free unless flagged in ``nonneg``. Inputs may be ints,
    Fractions or mpq; the solution is returned as Fractions.
    """
    nv = len(c)
    if nonneg is None:
        nonneg = [False] * nv
    # column map: each free variable splits into (x+, x-)
    cols: list[tuple[int, int]] = []
    for k in range(nv):
        cols.append((k, 1))
        if not nonneg[k]:
            cols.append((k, -1))
    nx = len(cols)

    def expand(row):
        row = [to_mpq(v) for v in row]
        return [row[k] * s for k, s in cols]

    ub = [(expand(r), to_mpq(b)) for r, b in zip(A_ub, b_ub)]
    eq = [(expand(r), to_mpq(b)) for r, b in zip(A_eq, b_eq)]
    m_ub, m_eq = len(ub), len(eq)
    m = m_ub + m_eq
    zero = mpq(0)

    # columns: [x (nx)] [slack (m_ub)] [artificial (n_art)] | rhs
    rows: list[list] = []
    basis: list[int] = []
    art_rows: list[int] = []
    for i, (coef, rhs) in enumerate(ub):
        slack = [zero] * m_ub
        slack[i] = mpq(1)
        if rhs < 0:
            coef = [-v for v in coef]
            slack[i] = mpq(-1)
            rhs = -rhs
            art_rows.append(len(rows))
        else:
            basis.append(nx + i)
        rows.append(coef + slack + [rhs])
    for coef, rhs in eq:
        if rhs < 0:
            coef = [-v for v in coef]
            rhs = -rhs
        art_rows.append(len(rows))
        rows.append(coef + [zero] * m_ub + [rhs])

    n_art = len(art_rows)
    base = nx + m_ub
    ncols = base + n_art
    full_basis = [None] * m
    bi = iter(basis)
    art_index = {r: base + k for k, r in enumerate(art_rows)}
    for r in range(m):
        if r in art_index:
            full_basis[r] = art_index[r]
        else:
            full_basis[r] = next(bi)
    for r, row in enumerate(rows):
        art = [zero] * n_art
        if r in art_index:
            art[art_index[r] - base] = mpq(1)
        rows[r] = row[:-1] + art + [row[-1]]

    tab = _Tableau(rows, full_basis, ncols)

    if n_art:
        # phase 1: maximize -sum(artificials)
        obj = [zero] * (ncols + 1)
        for r in art_rows:
            for j in range(ncols + 1):
                if j < base or j == ncols:
                    obj[j] += rows[r][j]
        tab.run(obj, base)
        if obj[-1] != 0:
            return LPResult(INFEASIBLE, pivots=tab.pivots)
        # drive remaining artificials out of the basis
        r = 0
        while r < len(tab.T):
            if tab.basis[r] >= base:
                row = tab.T[r]
                j = next((j for j in range(base) if row[j]), None)
                if j is None:
                    del tab.T[r]
                    del tab.basis[r]
                    continue
                tab.pivot(r, j, [zero] * (ncols + 1))
            r += 1

    # phase 2 on the original objective, artificial columns frozen out
    cx = expand(c)
    obj = cx + [zero] * (ncols - nx) + [zero]
    for r, bcol in enumerate(tab.basis):
        cb = obj[bcol]
        if cb:
            row = tab.T[r]
            for j in range(ncols + 1):
                obj[j] -= cb * row[j]
    status = tab.run(obj, base)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED, pivots=tab.pivots)

    xs = [zero] * nx
    for r, bcol in enumerate(tab.basis):
        if bcol < nx:
            xs[bcol] = tab.T[r][-1]
    x = [zero] * nv
    for (k, s), v in zip(cols, xs):
        x[k] += s * v
    value = sum((to_mpq(ci) * xi for ci, xi in zip(c, x)), zero)
    return LPResult(
        OPTIMAL,
        tuple(to_fraction(v) for v in x),
        to_fraction(value),
        tab.pivots,
    )
