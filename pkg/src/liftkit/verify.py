"""Brute-force polyhedral checks over a knapsack set.

Everything here enumerates all 2^n binary points, so it is only usable at
small n. The assignment space is split into a low block of items (materialized
as numpy arrays of subset sums) and a high block walked mask by mask; each
high mask is one vectorized pass over the low block. The brute-force lifting
oracle reuses this scanner and never calls the knapsack kernel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

import numpy as np

from .errors import InfeasibleLift, TooLarge
from .knapsack import KnapsackSet, enumeration_limit
from .lifting import DOWN, UP, LiftedCoverInequality, LiftingTask, TraceStep

_LOW_BITS = 16
_INT64_SAFE = 2**62


@dataclass(frozen=True)
class Inequality:
    coeffs: tuple[int, ...]
    rhs: int

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        object.__setattr__(self, "rhs", int(self.rhs))


@dataclass(frozen=True)
class ValidityReport:
    valid: bool
    witness: tuple[int, ...] | None = None


@dataclass(frozen=True)
class FacetReport:
    valid: bool
    tight_count: int
    tight_affine_dim: int
    is_facet: bool
    dimension: int


def _limit(n: int, limit: int | None) -> None:
    limit = enumeration_limit() if limit is None else limit
    if n > limit:
        raise TooLarge(f"n = {n} exceeds the enumeration limit {limit}")


def _subset_sums(values: Sequence[int], dtype) -> np.ndarray:
    """Sums over all subsets; entry m is the sum over the set bits of m."""
    out = np.zeros(1, dtype=dtype)
    for v in values:
        out = np.concatenate([out, out + v])
    return out


def _high_sums(values: Sequence[int]) -> list[int]:
    out = [0]
    for v in values:
        out = out + [x + v for x in out]
    return out


def _dtype(*columns: Sequence[int]):
    ok = all(sum(abs(int(v)) for v in col) < _INT64_SAFE for col in columns)
    return np.int64 if ok else object


class _Scanner:
    """Walks all binary vectors over ``len(columns[0])`` items in mask order.

    Each column is a per-item value list (weights, coefficients, ...). For
    every high-block mask, ``blocks`` yields the high mask, the per-column
    high sums and the per-column low-block sum arrays.
    """

    def __init__(self, *columns: Sequence[int]):
        self.k = len(columns[0])
        self.lo = min(self.k, _LOW_BITS)
        dtype = _dtype(*columns)
        self.low = [_subset_sums(col[: self.lo], dtype) for col in columns]
        self.high = [_high_sums(col[self.lo :]) for col in columns]

    def blocks(self) -> Iterator[tuple[int, list[int], list[np.ndarray]]]:
        for hmask in range(len(self.high[0])):
            yield hmask, [h[hmask] for h in self.high], self.low

    def point(self, hmask: int, lmask: int) -> tuple[int, ...]:
        mask = (hmask << self.lo) | lmask
        return tuple(mask >> i & 1 for i in range(self.k))


def _points_where(ks: KnapsackSet, coeffs, predicate) -> Iterator[tuple[int, ...]]:
    scan = _Scanner(ks.a, coeffs)
    for hmask, (hw, hc), (lw, lc) in scan.blocks():
        if hw > ks.b:
            continue
        feas = lw <= ks.b - hw
        sel = np.nonzero(predicate(feas, lc, hc))[0]
        for lmask in sel:
            yield scan.point(hmask, int(lmask))


def check_validity(
    ks: KnapsackSet,
    ineq: Inequality,
    limit: int | None = None,
    fixed: Mapping[int, int] | None = None,
) -> ValidityReport:
    """Test ``coeffs.x <= rhs`` on every point of X.

    With ``fixed`` (index -> 0/1) only the face of X with those values is
    checked. Returns the first violating point in enumeration order.
    """
    _limit(ks.n, limit)
    if len(ineq.coeffs) != ks.n:
        raise ValueError("inequality length does not match the knapsack set")
    fixed = dict(fixed or {})
    free = [i for i in range(1, ks.n + 1) if i not in fixed]
    cap = ks.b - sum(ks.a[i - 1] for i, v in fixed.items() if v)
    rhs = ineq.rhs - sum(ineq.coeffs[i - 1] for i, v in fixed.items() if v)
    if cap < 0:
        return ValidityReport(True)
    w = [ks.a[i - 1] for i in free]
    c = [ineq.coeffs[i - 1] for i in free]
    if not free:
        if rhs >= 0:
            return ValidityReport(True)
        return ValidityReport(False, _expand({}, fixed, ks.n))
    scan = _Scanner(w, c)
    for hmask, (hw, hc), (lw, lc) in scan.blocks():
        if hw > cap:
            continue
        bad = (lw <= cap - hw) & (lc > rhs - hc)
        hits = np.flatnonzero(bad)
        if hits.size:
            sub = scan.point(hmask, int(hits[0]))
            return ValidityReport(False, _expand(dict(zip(free, sub)), fixed, ks.n))
    return ValidityReport(True)


def _expand(values: dict, fixed: Mapping[int, int], n: int) -> tuple[int, ...]:
    return tuple(values.get(i, fixed.get(i, 0)) for i in range(1, n + 1))


class RankAccumulator:
    """Exact rank of a growing set of integer vectors.

    Rows are kept fraction-free: elimination cross-multiplies and divides out
    the row gcd, so entries stay integral and small.
    """

    def __init__(self, dim: int):
        self.dim = dim
        self.rows: list[tuple[int, list[int]]] = []

    @property
    def rank(self) -> int:
        return len(self.rows)

    def add(self, v: Sequence[int]) -> bool:
        v = [int(x) for x in v]
        for pivot, row in self.rows:
            if v[pivot]:
                f, g = row[pivot], v[pivot]
                v = [f * x - g * y for x, y in zip(v, row)]
        nz = next((i for i, x in enumerate(v) if x), None)
        if nz is None:
            return False
        g = 0
        for x in v:
            g = math.gcd(g, x)
        self.rows.append((nz, [x // g for x in v]))
        return True


def affine_rank(points) -> int:
    """Affine dimension of a finite point set (-1 for the empty set)."""
    it = iter(points)
    try:
        anchor = next(it)
    except StopIteration:
        return -1
    acc = RankAccumulator(len(anchor))
    for p in it:
        acc.add([x - y for x, y in zip(p, anchor)])
        if acc.rank == acc.dim:
            break
    return acc.rank


def polytope_dimension(ks: KnapsackSet, limit: int | None = None) -> int:
    """Affine dimension of conv(X), from the enumerated points."""
    _limit(ks.n, limit)
    pts = _points_where(ks, [0] * ks.n, lambda feas, lc, hc: feas)
    return affine_rank(pts)


def check_facet(ks: KnapsackSet, ineq: Inequality, limit: int | None = None) -> FacetReport:
    """Validity plus the affine dimension of the tight feasible points."""
    validity = check_validity(ks, ineq, limit)
    dim = polytope_dimension(ks, limit)
    count = 0

    def tight(feas, lc, hc):
        return feas & (lc == ineq.rhs - hc)

    pts = _points_where(ks, ineq.coeffs, tight)
    anchor = None
    acc = RankAccumulator(ks.n)
    for p in pts:
        count += 1
        if anchor is None:
            anchor = p
        elif acc.rank < ks.n:
            acc.add([x - y for x, y in zip(p, anchor)])
    tight_dim = -1 if anchor is None else acc.rank
    return FacetReport(
        valid=validity.valid,
        tight_count=count,
        tight_affine_dim=tight_dim,
        is_facet=validity.valid and tight_dim == dim - 1,
        dimension=dim,
    )


# --------------------------------------------------------------------------
# brute-force lifting oracle
# --------------------------------------------------------------------------


def _max_by_enumeration(profits: Sequence[int], weights: Sequence[int], capacity: int) -> int:
    best = None
    scan = _Scanner(weights, profits)
    for _, (hw, hp), (lw, lp) in scan.blocks():
        if hw > capacity:
            continue
        vals = lp[lw <= capacity - hw]
        if vals.size:
            cand = int(vals.max()) + hp
            if best is None or cand > best:
                best = cand
    return best


def brute_force_lift_oracle(task: LiftingTask, limit: int | None = None) -> LiftedCoverInequality:
    """Sequential lifting with every subproblem solved by full enumeration."""
    _limit(task.n, limit)
    task.validate()
    ks, part = task.ks, task.partition
    coef = {i: 1 for i in part.C}
    lifted = sorted(part.C)
    rhs = part.c - 1
    room = ks.b - ks.weight_of(part.N1)
    trace = []
    for step, l in enumerate(task.sequence, start=1):
        profits = [coef[i] for i in lifted]
        weights = [ks.a[i - 1] for i in lifted]
        if l in part.N0:
            cap = room - ks.a[l - 1]
            if cap < 0:
                raise InfeasibleLift(l, step=step, capacity=cap)
            opt = _max_by_enumeration(profits, weights, cap)
            coef[l] = rhs - opt
            trace.append(TraceStep(l, UP, coef[l], opt))
        else:
            opt = _max_by_enumeration(profits, weights, room + ks.a[l - 1])
            coef[l] = opt - rhs
            rhs += coef[l]
            room += ks.a[l - 1]
            trace.append(TraceStep(l, DOWN, coef[l], opt))
        lifted = sorted(lifted + [l])
    coeffs = tuple(coef[i] for i in range(1, task.n + 1))
    return LiftedCoverInequality(coeffs, part, tuple(trace))
