"""0-1 knapsack sets, covers, restrictions and an exact maximization kernel.

Indices are 1-based throughout, matching the external file formats. All
arithmetic is on Python ``int``; numpy is only used with ``int64`` when the
operands provably fit, and falls back to ``object`` arrays otherwise.
"""

from __future__ import annotations

import os
from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import (
    Infeasible,
    IndexOutOfRange,
    MalformedKnapsack,
    NegativeRestrictedCapacity,
    NotACover,
    NotAPartition,
    NotMinimal,
    TooLarge,
)

DEFAULT_LIMIT = 26

# Kernel dispatch thresholds.
ENUM_MAX_ITEMS = 12
DP_MAX_CAPACITY = 10**6
_INT64_SAFE = 2**62


def enumeration_limit() -> int:
    """Default brute-force limit, overridable through ``LIFTKIT_LIMIT``."""
    raw = os.environ.get("LIFTKIT_LIMIT")
    if raw is None:
        return DEFAULT_LIMIT
    try:
        value = int(raw)
    except ValueError:
        raise MalformedKnapsack(f"LIFTKIT_LIMIT must be an integer, got {raw!r}")
    if value < 1:
        raise MalformedKnapsack("LIFTKIT_LIMIT must be positive")
    return value


def _as_int(value, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
        raise MalformedKnapsack(f"{what} must be an integer, got {value!r}")
    return int(value)


@dataclass(frozen=True)
class KnapsackSet:
    """The set of binary x with sum(a_i x_i) <= b."""

    a: tuple[int, ...]
    b: int

    def __post_init__(self):
        a = tuple(_as_int(v, "weight") for v in self.a)
        b = _as_int(self.b, "capacity")
        if not a:
            raise MalformedKnapsack("a knapsack set needs at least one item")
        if any(v < 1 for v in a):
            raise MalformedKnapsack("weights must be >= 1")
        if b < 0:
            raise MalformedKnapsack("capacity must be >= 0")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def n(self) -> int:
        return len(self.a)

    def weight(self, i: int) -> int:
        return self.a[i - 1]

    def weight_of(self, indices: Iterable[int]) -> int:
        return sum(self.a[i - 1] for i in indices)

    def scaled(self, t: int) -> "KnapsackSet":
        return KnapsackSet(tuple(t * v for v in self.a), t * self.b)


@dataclass(frozen=True)
class Partition:
    """Split of the item indices into a cover and the two fixed groups."""

    C: frozenset[int]
    N0: frozenset[int] = field(default_factory=frozenset)
    N1: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        for name in ("C", "N0", "N1"):
            object.__setattr__(self, name, frozenset(getattr(self, name)))

    @property
    def c(self) -> int:
        return len(self.C)

    def check(self, n: int) -> None:
        if not self.C:
            raise NotAPartition("the cover C must be non-empty")
        overlap = (self.C & self.N0) | (self.C & self.N1) | (self.N0 & self.N1)
        if overlap:
            raise NotAPartition(f"indices in more than one block: {sorted(overlap)}")
        union = self.C | self.N0 | self.N1
        expected = set(range(1, n + 1))
        stray = sorted(union - expected)
        if stray:
            raise NotAPartition(f"indices outside 1..{n}: {stray}")
        missing = sorted(expected - union)
        if missing:
            raise NotAPartition(f"indices not assigned to any block: {missing}")


@dataclass(frozen=True)
class Restriction:
    """X(N0, N1) together with its restricted capacity b_bar."""

    base: KnapsackSet
    partition: Partition
    b_bar: int


def _check_indices(ks: KnapsackSet, indices: Iterable[int]) -> list[int]:
    out = []
    for i in indices:
        if isinstance(i, bool) or not isinstance(i, int) or not 1 <= i <= ks.n:
            raise IndexOutOfRange(f"index {i!r} outside 1..{ks.n}")
        out.append(i)
    return out


def is_cover(ks: KnapsackSet, C: Iterable[int], b_eff: int) -> bool:
    return ks.weight_of(_check_indices(ks, C)) > b_eff


def is_minimal_cover(ks: KnapsackSet, C: Iterable[int], b_eff: int) -> bool:
    idx = _check_indices(ks, C)
    total = ks.weight_of(idx)
    if total <= b_eff:
        raise NotACover(f"weight {total} of C does not exceed {b_eff}")
    return all(total - ks.weight(j) <= b_eff for j in idx)


def validate_lifting_task(ks: KnapsackSet, part: Partition) -> Restriction:
    """Check that C is a minimal cover of X(N0, N1) and return the restriction."""
    part.check(ks.n)
    b_bar = ks.b - ks.weight_of(part.N1)
    if b_bar < 0:
        raise NegativeRestrictedCapacity(
            f"b - sum(a_N1) = {b_bar} < 0; X(N0, N1) is empty"
        )
    total = ks.weight_of(part.C)
    if total <= b_bar:
        raise NotACover(f"sum of a over C is {total}, not above b_bar = {b_bar}")
    for j in sorted(part.C):
        if total - ks.weight(j) > b_bar:
            raise NotMinimal(f"C minus {{{j}}} still exceeds b_bar = {b_bar}")
    return Restriction(ks, part, b_bar)


# --------------------------------------------------------------------------
# exact 0-1 maximization kernel
# --------------------------------------------------------------------------


def knapsack_max(
    profits: Sequence[int],
    weights: Sequence[int],
    capacity: int,
    method: str | None = None,
) -> tuple[int, tuple[int, ...]]:
    """Maximize sum(p_i x_i) subject to sum(w_i x_i) <= capacity, x binary.

    Returns the optimal value and one optimal 0/1 witness. ``method`` forces
    a strategy ("enumerate", "dp" or "bnb"); by default it is picked from the
    instance shape: enumeration for few items, a capacity DP when the capacity
    is at most ``DP_MAX_CAPACITY``, branch-and-bound otherwise.
    """
    if len(profits) != len(weights):
        raise ValueError("profits and weights differ in length")
    p = [_as_int(v, "profit") for v in profits]
    w = [_as_int(v, "weight") for v in weights]
    capacity = _as_int(capacity, "capacity")
    if any(v < 0 for v in p) or any(v < 0 for v in w):
        raise ValueError("profits and weights must be nonnegative")
    if capacity < 0:
        raise Infeasible(f"capacity {capacity} < 0 leaves no feasible point")
    if method not in (None, "enumerate", "dp", "bnb"):
        raise ValueError(f"unknown method {method!r}")

    x = [0] * len(p)
    base = 0
    free = []
    for i, (pi, wi) in enumerate(zip(p, w)):
        if pi == 0 or wi > capacity:
            continue
        if wi == 0:
            x[i] = 1
            base += pi
        else:
            free.append(i)

    fp = [p[i] for i in free]
    fw = [w[i] for i in free]
    if method is None:
        if sum(fw) <= capacity:
            chosen = list(range(len(free)))
        elif len(free) <= ENUM_MAX_ITEMS:
            chosen = _enumerate(fp, fw, capacity)
        elif capacity <= DP_MAX_CAPACITY:
            chosen = _dp(fp, fw, capacity)
        else:
            chosen = _bnb(fp, fw, capacity)
    else:
        solver = {"enumerate": _enumerate, "dp": _dp, "bnb": _bnb}[method]
        chosen = solver(fp, fw, capacity)

    for k in chosen:
        x[free[k]] = 1
    value = base + sum(fp[k] for k in chosen)
    return value, tuple(x)


def _enumerate(p: list[int], w: list[int], cap: int) -> list[int]:
    best, best_mask = 0, 0
    k = len(p)
    for mask in range(1 << k):
        tw = tp = 0
        for i in range(k):
            if mask >> i & 1:
                tw += w[i]
                tp += p[i]
        if tw <= cap and tp > best:
            best, best_mask = tp, mask
    return [i for i in range(k) if best_mask >> i & 1]


def _dp(p: list[int], w: list[int], cap: int) -> list[int]:
    k = len(p)
    if k == 0:
        return []
    dtype = np.int64 if sum(p) < _INT64_SAFE else object
    best = np.zeros(cap + 1, dtype=dtype)
    take = np.zeros((k, cap + 1), dtype=bool)
    for j in range(k):
        wj = w[j]
        if wj > cap:
            continue
        cand = best[: cap + 1 - wj] + p[j]
        better = cand > best[wj:]
        take[j, wj:] = better
        best[wj:] = np.where(better, cand, best[wj:])
    chosen = []
    c = cap
    for j in range(k - 1, -1, -1):
        if take[j, c]:
            chosen.append(j)
            c -= w[j]
    return sorted(chosen)


def _bnb(p: list[int], w: list[int], cap: int) -> list[int]:
    k = len(p)
    order = sorted(range(k), key=lambda i: (-Fraction(p[i], w[i]), i))
    sp = [p[i] for i in order]
    sw = [w[i] for i in order]
    pre_w = [0]
    pre_p = [0]
    for pi, wi in zip(sp, sw):
        pre_w.append(pre_w[-1] + wi)
        pre_p.append(pre_p[-1] + pi)

    def bound(level: int, room: int) -> int:
        # Fractional relaxation over items level..k-1, floored (optimum is integral).
        t = bisect_right(pre_w, pre_w[level] + room) - 1
        value = pre_p[t] - pre_p[level]
        if t < k:
            rest = room - (pre_w[t] - pre_w[level])
            value += sp[t] * rest // sw[t]
        return value

    # Greedy incumbent.
    best_val, room, best_set = 0, cap, []
    for i in range(k):
        if sw[i] <= room:
            room -= sw[i]
            best_val += sp[i]
            best_set.append(i)

    current: list[int] = []

    def dfs(level: int, value: int, room: int) -> None:
        nonlocal best_val, best_set
        if value > best_val:
            best_val, best_set = value, list(current)
        if level == k or value + bound(level, room) <= best_val:
            return
        if sw[level] <= room:
            current.append(level)
            dfs(level + 1, value + sp[level], room - sw[level])
            current.pop()
        dfs(level + 1, value, room)

    dfs(0, 0, cap)
    return sorted(order[i] for i in best_set)


# --------------------------------------------------------------------------
# enumeration of X
# --------------------------------------------------------------------------


def _check_limit(n: int, limit: int | None) -> None:
    limit = enumeration_limit() if limit is None else limit
    if n > limit:
        raise TooLarge(f"n = {n} exceeds the enumeration limit {limit}")


def enumerate_feasible_points(
    ks: KnapsackSet, limit: int | None = None
) -> Iterator[tuple[int, ...]]:
    """Yield every binary x with a.x <= b exactly once.

    Order is by the integer mask sum(x_i 2^(i-1)), ascending.
    """
    _check_limit(ks.n, limit)
    n = ks.n
    a = ks.a

    def rec(i: int, room: int, x: list[int]) -> Iterator[tuple[int, ...]]:
        if i < 0:
            yield tuple(x)
            return
        x[i] = 0
        yield from rec(i - 1, room, x)
        if a[i] <= room:
            x[i] = 1
            yield from rec(i - 1, room - a[i], x)
            x[i] = 0

    # x_n is the most significant choice, 0-branch first: ascending masks.
    yield from rec(n - 1, ks.b, [0] * n)
