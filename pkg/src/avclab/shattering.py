"""Shattering oracles for corrupted classes.

The halfspace oracle decides, exactly, whether some halfspace realizes a given
adversarial loss pattern against a polyhedral body ``B``. Halfspaces with
``a`` orthogonal to the lineality space and positive dual seminorm are
normalized to ``||a||_B* = 1``; that non-convex normalization splits into one
LP per vertex ``v*`` attaining the maximum (``a.v* = 1``, ``a.v <= 1`` for
all vertices). On a piece, robust correctness of ``(x_i, c_i)`` is the strict
inequality ``c_i (a.x_i - b) > 1`` and adversary success is
``c_i (a.x_i - b) <= 1``. Strictness is handled by maximizing a common slack.
Two further families complete the class: normals with zero dual seminorm
(the body cannot move across the boundary, corruption changes nothing), and
the classifiers whose boundary meets every ``x + B`` (all outputs BOT).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import lp
from .corruption import TabularRelation, corrupt_tabular, corrupted_evaluate, identity_relation, lattice_relation
from .errors import DimensionMismatch, PreconditionError, UnsupportedBodyError
from .exact import Vector, dot, fmt, is_zero, nullspace, project_out, rank, rref, sqrt_lower_bound, sqrt_upper_bound
from .geometry import INF, ConstraintSet, dual_seminorm, lineality
from .hypotheses import (
    BOT,
    FiniteClass,
    Halfspace,
    HalfspaceClass,
    LabeledDataset,
    PointIndicatorClass,
    sgn,
    tabulate,
)
from .lp import to_mpq

# above this many data rows the piece LPs use constraint generation
LAZY_ROWS = 64
LAZY_BATCH = 8

FEASIBLE = "feasible"
INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class NullspaceCertificate:
    """Coefficients proving that ``eta`` is realized by no halfspace."""

    coefficients: tuple[Fraction, ...]
    J: tuple[int, ...]
    K: tuple[int, ...]
    alphas: dict
    eta: tuple[int, ...]
    flipped: bool
    projected_points: tuple[Vector, ...] = ()

    def check(self) -> bool:
        a = self.coefficients
        if sum(a) != 0 or sum(abs(v) for v in a) != 2:
            return False
        if self.projected_points:
            d = len(self.projected_points[0])
            combo = [sum((ai * x[j] for ai, x in zip(a, self.projected_points)), Fraction(0)) for j in range(d)]
            if not is_zero(combo):
                return False
        al = self.alphas
        return al["J+"] + al["K-"] >= al["J-"] + al["K+"]


@dataclass(frozen=True)
class PieceRecord:
    piece: str
    status: str
    slack: Fraction | None


@dataclass(frozen=True)
class FeasibilityCertificate:
    status: str
    pattern: tuple[int, ...]
    witness: Halfspace | None = None
    vertex: Vector | None = None
    family: str | None = None
    slack: Fraction | None = None
    appendix: NullspaceCertificate | None = None
    lp_records: tuple[PieceRecord, ...] = ()

    @property
    def feasible(self) -> bool:
        return self.status == FEASIBLE

    @property
    def lps_solved(self) -> int:
        return len(self.lp_records)


# ---------------------------------------------------------------------------
# piece LPs


def _require_polyhedral(B: ConstraintSet) -> None:
    if not B.is_polyhedral:
        raise UnsupportedBodyError("exact pattern feasibility needs a polyhedral body (l1, linf, polytope or {0})")


def _data_rows(data: LabeledDataset, strict: Sequence[int], loss: Sequence[int], normalized: bool):
    # variables: a (d), b, t
    rows = []
    one = 1 if normalized else 0
    for i in strict:
        x, c = data.points[i], data.labels[i]
        rows.append(([-c * v for v in x] + [c, 1], -one))
    for i in loss:
        x, c = data.points[i], data.labels[i]
        rows.append(([c * v for v in x] + [-c, 0], one))
    return rows


def _solve_rows(nv: int, static_ub, static_eq, rows):
    c = [0] * (nv - 1) + [1]
    if len(rows) <= LAZY_ROWS:
        A_ub = [r for r, _ in static_ub] + [r for r, _ in rows]
        b_ub = [b for _, b in static_ub] + [b for _, b in rows]
        A_eq = [r for r, _ in static_eq]
        b_eq = [b for _, b in static_eq]
        return lp.maximize(c, A_ub, b_ub, A_eq, b_eq)
    # constraint generation: a relaxation's infeasibility or an optimum that
    # satisfies every row settles the full problem
    mrows = [([to_mpq(v) for v in r], to_mpq(b)) for r, b in rows]
    active = list(range(min(len(rows), 2 * nv + 4)))
    labels_seen = set()
    for k, (r, _) in enumerate(rows):
        key = (r[-2] > 0, r[-1] != 0)
        if key not in labels_seen:
            labels_seen.add(key)
            if k not in active:
                active.append(k)
    while True:
        A_ub = [r for r, _ in static_ub] + [rows[k][0] for k in active]
        b_ub = [b for _, b in static_ub] + [rows[k][1] for k in active]
        res = lp.maximize(c, A_ub, b_ub, [r for r, _ in static_eq], [b for _, b in static_eq])
        if res.status != lp.OPTIMAL or res.x[-1] <= 0:
            # the full problem's slack is at most the relaxation's
            return res
        x = [to_mpq(v) for v in res.x]
        act = set(active)
        viol = []
        for k, (r, b) in enumerate(mrows):
            if k in act:
                continue
            lhs = sum((ri * xi for ri, xi in zip(r, x) if ri), to_mpq(0))
            if lhs > b:
                viol.append((-(lhs - b), k))
        if not viol:
            return res
        viol.sort()
        active.extend(k for _, k in viol[:LAZY_BATCH])


def _vertex_piece(B: ConstraintSet, data: LabeledDataset, vstar: Vector, strict, loss):
    d = B.dimension
    zeros2 = [0, 0]
    static_eq = [(list(u) + zeros2, 0) for u in B.lineality_basis]
    static_eq.append((list(vstar) + zeros2, 1))
    neg = tuple(-c for c in vstar)
    static_ub = [(list(v) + zeros2, 1) for v in B.vertices() if v != vstar and v != neg]
    static_ub.append(([0] * (d + 1) + [1], 1))
    return _solve_rows(d + 2, static_ub, static_eq, _data_rows(data, strict, loss, True))


def _spans_space(B: ConstraintSet) -> bool:
    gens = [v for v in B.vertices() if not is_zero(v)] + list(B.lineality_basis)
    return bool(gens) and rank(gens) == B.dimension


def _zero_dual_piece(B: ConstraintSet, data: LabeledDataset, strict, loss):
    d = B.dimension
    zeros2 = [0, 0]
    gens = [v for v in B.vertices() if not is_zero(v)] + list(B.lineality_basis)
    static_eq = [(list(g) + zeros2, 0) for g in gens]
    static_ub = []
    for j in range(d + 1):
        e = [0] * (d + 2)
        e[j] = 1
        static_ub.append((e, 1))
        static_ub.append(([-v for v in e], 1))
    static_ub.append(([0] * (d + 1) + [1], 1))
    return _solve_rows(d + 2, static_ub, static_eq, _data_rows(data, strict, loss, False))


def _pieces(B: ConstraintSet):
    """Canonical order: vertex pieces, then the zero-dual family."""
    for v in B.vertices():
        if not is_zero(v):
            yield "vertex", v
    if not _spans_space(B):
        yield "zero-dual", None


def _search(data: LabeledDataset, B: ConstraintSet, strict, loss, best: bool):
    """Run the piece LPs; return (winning piece or None, records)."""
    _require_polyhedral(B)
    if data.dimension != B.dimension:
        raise DimensionMismatch("dataset and body dimensions differ")
    records = []
    win = None
    for family, v in _pieces(B):
        if family == "vertex":
            res = _vertex_piece(B, data, v, strict, loss)
            name = "vertex " + "(" + ",".join(fmt(c) for c in v) + ")"
        else:
            res = _zero_dual_piece(B, data, strict, loss)
            name = "zero-dual"
        ok = res.status == lp.OPTIMAL and res.x[-1] > 0
        records.append(PieceRecord(name, res.status, res.x[-1] if res.status == lp.OPTIMAL else None))
        if ok and (win is None or res.x[-1] > win[2].x[-1]):
            win = (family, v, res)
            if not best:
                break
    return win, records


def _witness(data: LabeledDataset, win) -> tuple[Halfspace, str, Vector | None, Fraction]:
    family, v, res = win
    d = data.dimension
    return Halfspace(res.x[:d], res.x[d]), family, v, res.x[-1]


def _pattern_of(h: Halfspace, B: ConstraintSet, data: LabeledDataset) -> tuple[int, ...]:
    return tuple(int(corrupted_evaluate(h, B, x) != c) for x, c in data)


def halfspace_pattern_feasible(data: LabeledDataset, pattern: Sequence[int], B: ConstraintSet) -> FeasibilityCertificate:
    """Decide whether some halfspace realizes ``pattern`` (1 = adversary wins)."""
    pattern = tuple(int(b) for b in pattern)
    if len(pattern) != data.n or any(b not in (0, 1) for b in pattern):
        raise PreconditionError("pattern must be a 0/1 vector of the dataset's length")
    strict = [i for i, b in enumerate(pattern) if b == 0]
    loss = [i for i, b in enumerate(pattern) if b == 1]
    win, records = _search(data, B, strict, loss, best=False)
    if win is not None:
        h, family, v, t = _witness(data, win)
        if _pattern_of(h, B, data) != pattern:
            raise AssertionError("LP witness fails the exact re-check")
        return FeasibilityCertificate(FEASIBLE, pattern, h, v, family, t, lp_records=tuple(records))
    if not strict:
        # a = 0, b = 0 outputs BOT everywhere
        h = Halfspace((0,) * data.dimension, 0)
        return FeasibilityCertificate(FEASIBLE, pattern, h, None, "all-bot", None, lp_records=tuple(records))
    return FeasibilityCertificate(INFEASIBLE, pattern, lp_records=tuple(records))


def robust_subset_feasible(data: LabeledDataset, subset: Iterable[int], B: ConstraintSet, best: bool = False):
    """Is there a halfspace robustly correct on every index in ``subset``?

    Indices outside the subset are unconstrained. Returns ``(witness or None,
    records)``; with ``best`` every piece is solved and the largest-slack
    witness kept.
    """
    strict = sorted(subset)
    if not strict:
        return Halfspace((0,) * data.dimension, 0), []
    win, records = _search(data, B, strict, [], best=best)
    if win is None:
        return None, records
    return _witness(data, win)[0], records


# ---------------------------------------------------------------------------
# pattern sets and shattering


def _window_for(R: TabularRelation, points) -> list:
    win = dict.fromkeys(points)
    for p in points:
        for q in R[p]:
            win[q] = None
    return list(win)


def _finite_patterns(fc: FiniteClass, R: TabularRelation, data: LabeledDataset) -> frozenset:
    pats = set()
    for row in fc.rows():
        cor = corrupt_tabular(row, R, data.points)
        pats.add(tuple(int(cor[x] != c) for x, c in data))
    return frozenset(pats)


def loss_pattern_set(cls, adversary, data: LabeledDataset) -> frozenset:
    """All corrupted loss patterns the class realizes on ``data``."""
    if isinstance(cls, HalfspaceClass) or cls == "halfspace":
        if not isinstance(adversary, ConstraintSet):
            raise PreconditionError("halfspace mode needs a ConstraintSet adversary")
        _require_polyhedral(adversary)
        return frozenset(
            p for p in itertools.product((0, 1), repeat=data.n)
            if halfspace_pattern_feasible(data, p, adversary).feasible
        )
    R = identity_relation(data.points) if adversary is None else adversary
    if not isinstance(R, TabularRelation):
        raise PreconditionError("finite classes need a TabularRelation adversary (or None)")
    if isinstance(cls, PointIndicatorClass):
        cls = tabulate(cls, _window_for(R, data.points))
    if not isinstance(cls, FiniteClass):
        raise PreconditionError(f"unsupported class {type(cls).__name__}")
    return _finite_patterns(cls, R, data)


def shatter_check(cls, adversary, data: LabeledDataset) -> bool:
    if isinstance(cls, HalfspaceClass) or cls == "halfspace":
        return all(
            halfspace_pattern_feasible(data, p, adversary).feasible
            for p in itertools.product((0, 1), repeat=data.n)
        )
    return len(loss_pattern_set(cls, adversary, data)) == 2**data.n


def shattering_coefficient(cls, adversary, datasets: Iterable[LabeledDataset]) -> int:
    """Max pattern count over the supplied placements (the true max is not computable)."""
    return max(len(loss_pattern_set(cls, adversary, d)) for d in datasets)


def sauer_bound(n: int, d: int) -> int:
    return sum(math.comb(n, i) for i in range(min(n, d) + 1))


def labeling_count(fc: FiniteClass, idx: Sequence[int]) -> int:
    """Number of distinct labelings of the chosen points (raw, no adversary)."""
    return len({tuple(r) for r in fc.table[:, list(idx)].tolist()})


def loss_count(fc: FiniteClass, idx: Sequence[int], labels: Sequence[int]) -> int:
    sub = fc.table[:, list(idx)]
    return len({tuple(r) for r in (sub != np.asarray(labels)).astype(int).tolist()})


def vc_dimension(fc: FiniteClass, max_size: int | None = None) -> int:
    """Brute-force VC dimension of a binary table over its ground set."""
    P = len(fc.points)
    best = 0
    for k in range(1, (max_size or P) + 1):
        if 2**k > len(fc):
            break
        if not any(labeling_count(fc, c) == 2**k for c in itertools.combinations(range(P), k)):
            break
        best = k
    return best


@dataclass(frozen=True)
class PairCheck:
    singleton_shattered: bool
    positive_pair: tuple | None  # a pair labeled (+1, +1) by some hypothesis
    shattered_pair: tuple | None

    @property
    def vc(self) -> int | None:
        """1 when certified, else None (the check only decides VC = 1)."""
        if self.singleton_shattered and self.shattered_pair is None:
            return 1
        return None


def vc_pair_check(fc: FiniteClass) -> PairCheck:
    """Exhaustive check over all pairs of the ground set for VC = 1.

    A pair can only be shattered if some row labels both points +1, so the
    candidate pairs are exactly those inside a row's positive set.
    """
    T = fc.table
    single = bool(((T == 1).any(axis=0) & (T == -1).any(axis=0)).any())
    positive_pair = None
    shattered = None
    for k in range(T.shape[0]):
        pos = np.flatnonzero(T[k] == 1)
        for i, j in itertools.combinations(pos.tolist(), 2):
            if positive_pair is None:
                positive_pair = (fc.points[i], fc.points[j])
            if labeling_count(fc, (i, j)) == 4:
                shattered = (fc.points[i], fc.points[j])
                break
        if shattered:
            break
    return PairCheck(single, positive_pair, shattered)


# ---------------------------------------------------------------------------
# theorem value, witness, certificate, constructions


def avc_theorem_value(d: int, B: ConstraintSet) -> int:
    if d != B.dimension:
        raise DimensionMismatch("d must equal the body dimension")
    return d + 1 - lineality(B)[0]


def _complement_basis(B: ConstraintSet) -> list[Vector]:
    d = B.dimension
    if not B.lineality_basis:
        return [tuple(Fraction(int(i == j)) for j in range(d)) for i in range(d)]
    return nullspace([list(u) for u in B.lineality_basis], d)


def _interpolant_bound(B: ConstraintSet, basis: list[Vector]) -> Fraction:
    """Rational upper bound on ``||a||_B*`` over the affine interpolants of +-1 targets.

    ``a`` is orthogonal to the lineality space with ``a.x_k = tau_k - tau_0`` on
    the basis; any scale above this bound leaves every target sign pattern
    reachable with slack, which is what shattering needs.
    """
    k = len(basis)
    gram = [[dot(basis[i], basis[j]) for j in range(k)] for i in range(k)]
    worst = Fraction(0)
    for tau in itertools.product((-1, 1), repeat=k + 1):
        rhs = [tau[i + 1] - tau[0] for i in range(k)]
        R, _ = rref([gram[i] + [rhs[i]] for i in range(k)])
        beta = [row[-1] for row in R]
        a = [sum((bt * v[j] for bt, v in zip(beta, basis)), Fraction(0)) for j in range(B.dimension)]
        D = dual_seminorm(B, a)
        D = D if isinstance(D, Fraction) else sqrt_upper_bound(D.square)
        worst = max(worst, D)
    return worst


def shattered_witness(B: ConstraintSet, labels: Sequence[int] | None = None) -> LabeledDataset:
    """``s * (0, x_1, ..., x_t)`` with ``x_k`` a basis orthogonal to the lineality space.

    ``s = 3/e`` where ``e`` is the smallest dual-seminorm distance between the
    base points, raised to ``M + 1`` when that is larger (``M`` bounds the
    dual seminorm of the +-1 interpolating normals; see
    :func:`_interpolant_bound`). The raise matters for linf bodies with
    ``d >= 2``, where ``3/e`` alone leaves some patterns unreachable.
    For l2 bodies both terms use rational upper bounds, so the scale only grows.
    """
    d = B.dimension
    basis = _complement_basis(B)
    pts = [tuple(Fraction(0) for _ in range(d))] + basis
    dists = [dual_seminorm(B, [p - q for p, q in zip(pts[i], pts[j])]) for i, j in itertools.combinations(range(len(pts)), 2)]
    if any(v == INF for v in dists) or any(v <= 0 for v in dists):
        raise PreconditionError("degenerate basis: a base-point difference has zero or infinite dual seminorm")
    eps = min(dists)
    if isinstance(eps, Fraction):
        scale = 3 / eps
    else:
        scale = 3 / sqrt_lower_bound(eps.square)
    scale = max(scale, _interpolant_bound(B, basis) + 1)
    points = tuple(tuple(scale * c for c in p) for p in pts)
    if labels is None:
        labels = (1,) * len(points)
    if len(labels) != len(points):
        raise PreconditionError(f"witness has {len(points)} points, got {len(labels)} labels")
    return LabeledDataset(points, tuple(labels))


def unachievable_pattern(data: LabeledDataset, B: ConstraintSet) -> tuple[tuple[int, ...], FeasibilityCertificate]:
    """A loss pattern no halfspace realizes, with its coefficient certificate.

    Needs ``n >= d + 2 - dim(lineality)``. Points are first projected onto the
    complement of the lineality space. The coefficients are the first vector
    of the canonical nullspace basis of ``a -> (sum a_i, sum a_i x_i)``,
    scaled to ``sum |a_i| = 2`` and oriented so the robustly-correct side
    carries at least half the weight.
    """
    d = B.dimension
    if data.dimension != d:
        raise DimensionMismatch("dataset and body dimensions differ")
    need = d + 2 - lineality(B)[0]
    if data.n < need:
        raise PreconditionError(f"need at least {need} points, got {data.n}")
    proj = tuple(project_out(x, B.lineality_basis) for x in data.points)
    rows = [[Fraction(1)] * data.n] + [[p[j] for p in proj] for j in range(d)]
    a = list(nullspace(rows, data.n)[0])
    s = sum(abs(v) for v in a)
    a = [2 * v / s for v in a]

    def split(a):
        J = tuple(i for i, v in enumerate(a) if v > 0)
        K = tuple(i for i, v in enumerate(a) if v < 0)
        al = {"J+": Fraction(0), "J-": Fraction(0), "K+": Fraction(0), "K-": Fraction(0)}
        for i in J:
            al["J+" if data.labels[i] == 1 else "J-"] += abs(a[i])
        for i in K:
            al["K+" if data.labels[i] == 1 else "K-"] += abs(a[i])
        return J, K, al

    J, K, al = split(a)
    flipped = False
    if al["J+"] + al["K-"] < al["J-"] + al["K+"]:
        a = [-v for v in a]
        J, K, al = split(a)
        flipped = True
    # zero-coefficient indices get bit 0 (robust correctness required)
    eta = tuple(int(v != 0 and sgn(v) != c) for v, c in zip(a, data.labels))
    cert = NullspaceCertificate(tuple(a), J, K, al, eta, flipped, proj)
    return eta, FeasibilityCertificate(INFEASIBLE, eta, appendix=cert)


@dataclass(frozen=True)
class PointIndicatorConstruction:
    data: LabeledDataset
    centers: tuple[Vector, ...]
    hypotheses: FiniteClass
    relation: TabularRelation


def point_indicator_construction(d: int) -> PointIndicatorConstruction:
    """``d`` lattice points with ``(x_i)_j = -1 if i == j else 1``, all labeled -1,
    the ``2^d`` indicators centred on ``{0,1}^d`` and the l_inf budget-1 relation."""
    if d < 1:
        raise PreconditionError("d must be at least 1")
    points = tuple(tuple(-1 if i == j else 1 for j in range(d)) for i in range(d))
    data = LabeledDataset(points, (-1,) * d)
    R = lattice_relation(data.points, 1)
    centers = tuple(tuple(Fraction(b) for b in bits) for bits in itertools.product((0, 1), repeat=d))
    window = _window_for(R, data.points)
    full = tabulate(PointIndicatorClass(d), window)
    outside = len(full) - 1
    keep = [full.column(c) if full.covers(c) else outside for c in centers]
    sub = FiniteClass(full.points, centers, full.table[keep])
    return PointIndicatorConstruction(data, centers, sub, R)


def random_rational_dataset(rng: np.random.Generator, n: int, d: int, lo: int = -6, hi: int = 6, den: int = 4) -> LabeledDataset:
    nums = rng.integers(lo * den, hi * den + 1, size=(n, d))
    pts = tuple(tuple(Fraction(int(v), den) for v in row) for row in nums)
    labels = tuple(int(c) for c in rng.choice([-1, 1], size=n))
    return LabeledDataset(pts, labels)
