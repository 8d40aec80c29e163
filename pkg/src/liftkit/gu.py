"""Exponential-coefficient lifting family and its subset-sum property.

The weights are the sequence f = (1, 1, 1, 2, 3, 5, 8, ...) with
f_i = f_{i-2} + f_{i-1}. Lifting the cover {1, 2} along 3, 4, ..., 2r+1
returns every f_i as a coefficient, so coefficients grow like sqrt(2)^i while
the input only grows linearly in bits.
"""

from __future__ import annotations

from .errors import LengthTooSmall, OutOfRange
from .knapsack import KnapsackSet, Partition
from .lifting import LiftingTask


def gen_f(length: int) -> list[int]:
    """First ``length`` terms of f (stored 0-based: ``f[i-1]`` is f_i)."""
    if length < 3:
        raise LengthTooSmall(f"need at least 3 terms, got {length}")
    f = [1, 1, 1]
    while len(f) < length:
        f.append(f[-2] + f[-1])
    return f


def build_gu_task(r: int) -> LiftingTask:
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    n = 2 * r + 1
    f = gen_f(n)
    part = Partition(
        C={1, 2},
        N0=set(range(4, n, 2)),
        N1=set(range(3, n + 1, 2)),
    )
    ks = KnapsackSet(tuple(f), sum(f[: 2 * r]))
    return LiftingTask(ks, part, tuple(range(3, n + 1)))


def expected_gu_coefficients(r: int) -> dict[int, int]:
    """Lifted coefficient of every x_i, i = 3..2r+1: it equals f_i."""
    f = gen_f(2 * r + 1)
    return {i: f[i - 1] for i in range(3, 2 * r + 2)}


def check_sum_identity(f: list[int]) -> bool:
    """f_j == f_1 + ... + f_{j-2} for every j >= 3 in the prefix."""
    running = 0
    for j in range(3, len(f) + 1):
        running += f[j - 3]
        if f[j - 1] != running:
            return False
    return True


def check_growth_bounds(f: list[int]) -> bool:
    """(sqrt2 - 1) sqrt2^j / 4 <= f_j <= 2^j for j >= 3, in integers only.

    For j = 2s the lower bound is (4 f_j + 2^s)^2 >= 2^(2s+1); for j = 2s+1 it
    is 2^(s+1) <= 4 f_j or (2^(s+1) - 4 f_j)^2 <= 2^(2s+1).
    """
    for j in range(3, len(f) + 1):
        fj = f[j - 1]
        if fj > 1 << j:
            return False
        s, odd = divmod(j, 2)
        if odd:
            gap = (1 << (s + 1)) - 4 * fj
            if gap > 0 and gap * gap > 1 << (2 * s + 1):
                return False
        elif (4 * fj + (1 << s)) ** 2 < 1 << (2 * s + 1):
            return False
    return True


def represent_subset_sum(r: int, tau: int) -> frozenset[int]:
    """Indices S within 1..2r+1 with sum(f_i for i in S) == tau.

    Descends r level by level: when tau exceeds the sum of the first 2r-1
    terms (which is f_{2r+1}), take f_{2r+1}, plus f_{2r} if tau is above
    f_{2r} + f_{2r+1}, and continue with the remainder.
    """
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    f = gen_f(2 * r + 1)
    if tau < 0 or tau > sum(f):
        raise OutOfRange(f"tau = {tau} outside [0, {sum(f)}]")
    chosen = set()
    level = r
    while level > 1:
        hi = 2 * level + 1
        # sum of f_1..f_{2level-1} equals f_{2level+1}
        if tau > f[hi - 1]:
            if tau > f[hi - 2] + f[hi - 1]:
                chosen.update((hi - 1, hi))
                tau -= f[hi - 2] + f[hi - 1]
            else:
                chosen.add(hi)
                tau -= f[hi - 1]
        level -= 1
    chosen.update(range(1, tau + 1))  # f_1 = f_2 = f_3 = 1, tau <= 3 here
    return frozenset(chosen)
