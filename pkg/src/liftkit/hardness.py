"""Restricted partition problem (RPP) and its reduction to sequential lifting.

An RPP instance has values omega summing to 2*lam with lam = 2^(m+1) - 1 and
asks for a subset summing to lam or lam - 1. ``build_hard_instance`` embeds
it into a lifting task whose last coefficient beta_n is
f_{2r+1} + 3 lam + 5 exactly when the answer is yes, and one less otherwise.
The task holds the exponential family scaled by lam, two gadget items, one
item per omega value and a final down-lifted item x_n.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    BadTotal,
    MTooSmall,
    NonPositiveValue,
    NotReduced,
    TooLarge,
    UnexpectedCoefficient,
    ValidationError,
)
from .gu import gen_f
from .knapsack import KnapsackSet, Partition
from .lifting import LiftedCoverInequality, LiftingTask, sequential_lift

MAX_DP_M = 20


@dataclass(frozen=True)
class RppInstance:
    m: int
    omega: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "omega", tuple(int(w) for w in self.omega))
        if self.m < 0:
            raise ValidationError(f"m must be >= 0, got {self.m}")

    @property
    def k(self) -> int:
        return len(self.omega)

    @property
    def lam(self) -> int:
        return (1 << (self.m + 1)) - 1


@dataclass(frozen=True)
class Decided:
    """Preprocessing answered the instance; ``index`` is the 1-based culprit."""

    answer: bool
    index: int
    case: str


@dataclass(frozen=True)
class RppSolution:
    answer: bool
    witness: tuple[int, ...] | None = None  # 1-based positions in omega


@dataclass(frozen=True)
class HardInstance:
    task: LiftingTask
    r: int
    rpp: RppInstance

    @property
    def n(self) -> int:
        return self.task.n

    @property
    def lam(self) -> int:
        return self.rpp.lam

    def k_indices(self) -> range:
        return range(2 * self.r + 4, self.n)


@dataclass(frozen=True)
class LiftingDecision:
    answer: bool
    decided_by: str  # "preprocessing" or "lifting"
    beta_n: int | None = None
    lci: LiftedCoverInequality | None = None
    hard: HardInstance | None = None


def validate_rpp(inst: RppInstance) -> RppInstance:
    bad = [i for i, w in enumerate(inst.omega, start=1) if w < 1]
    if bad:
        raise NonPositiveValue(f"omega must be >= 1; offending positions {bad}")
    total = sum(inst.omega)
    if total != 2 * inst.lam:
        raise BadTotal(f"sum(omega) = {total}, expected 2*lam = {2 * inst.lam}")
    return inst


def preprocess_rpp(inst: RppInstance) -> RppInstance | Decided:
    """Settle instances with a value >= lam; otherwise return ``inst`` as is.

    A value in [lam, lam+1] leaves the others summing to lam or lam-1 (yes).
    A value >= lam+2 exceeds every target, and the rest sum to <= lam-2 (no).
    """
    lam = inst.lam
    for j, w in enumerate(inst.omega, start=1):
        if lam <= w <= lam + 1:
            return Decided(True, j, "i")
        if w >= lam + 2:
            return Decided(False, j, "ii")
    return inst


def solve_rpp(inst: RppInstance) -> RppSolution:
    """Exact answer by a reachable-sum DP over 0..2 lam, with a witness."""
    validate_rpp(inst)
    if inst.m > MAX_DP_M:
        raise TooLarge(f"m = {inst.m} exceeds the DP cap {MAX_DP_M}")
    lam = inst.lam
    # parent[s] = (item position, previous sum) of the first way s was reached
    parent: dict[int, tuple[int, int] | None] = {0: None}
    for pos, w in enumerate(inst.omega, start=1):
        for s in sorted(parent, reverse=True):
            t = s + w
            if t <= 2 * lam and t not in parent:
                parent[t] = (pos, s)
    for target in (lam, lam - 1):
        if target in parent:
            witness = []
            s = target
            while parent[s] is not None:
                pos, s = parent[s]
                witness.append(pos)
            return RppSolution(True, tuple(sorted(witness)))
    return RppSolution(False)


def build_hard_instance(inst: RppInstance) -> HardInstance:
    """Lifting task whose final coefficient encodes the RPP answer."""
    validate_rpp(inst)
    if inst.m < 1:
        raise MTooSmall("m = 0 leaves no value in [1, lam-1]; nothing to reduce")
    lam = inst.lam
    if any(w > lam - 1 for w in inst.omega):
        raise NotReduced(f"every omega must be <= lam - 1 = {lam - 1}; preprocess first")
    r = inst.m + 6
    f = gen_f(2 * r + 1)
    f_top = f[2 * r]
    if not f_top > 2 * lam + 6:
        raise AssertionError("f_{2r+1} > 2 lam + 6 fails")
    k = inst.k
    n = 2 * r + 4 + k
    a = [lam * fi for fi in f]
    a.append(lam * (lam + 3) + 1)
    a.append(lam * (lam + 3) - 1)
    a.extend(w * (lam + 1) for w in inst.omega)
    a.append(lam * (3 * lam + 6 + f_top))
    b = lam * sum(f) + lam * (3 * lam + 6)
    part = Partition(
        C={1, 2},
        N0=set(range(4, 2 * r + 1, 2)) | set(range(2 * r + 2, n)),
        N1=set(range(3, 2 * r + 2, 2)) | {n},
    )
    task = LiftingTask(KnapsackSet(tuple(a), b), part, tuple(range(3, n + 1)))
    restriction = task.validate()
    if restriction.b_bar != lam:
        raise AssertionError(f"b_bar = {restriction.b_bar}, expected {lam}")
    return HardInstance(task, r, inst)


def beta_n_values(hi: HardInstance) -> tuple[int, int]:
    """(no-value, yes-value) of the final coefficient."""
    base = gen_f(2 * hi.r + 1)[-1] + 3 * hi.lam + 4
    return base, base + 1


def predicted_hard_coefficients(hi: HardInstance, rpp_answer: bool) -> dict[int, int]:
    """Coefficient of every lifted variable 3..n as derived for the reduction."""
    r, lam = hi.r, hi.lam
    f = gen_f(2 * r + 1)
    out = {i: f[i - 1] for i in range(3, 2 * r + 2)}
    out[2 * r + 2] = lam + 4
    out[2 * r + 3] = lam + 2
    for i, w in zip(hi.k_indices(), hi.rpp.omega):
        out[i] = w
    no, yes = beta_n_values(hi)
    out[hi.n] = yes if rpp_answer else no
    return out


def decide_rpp_via_lifting(inst: RppInstance) -> LiftingDecision:
    """Answer RPP by lifting the hard instance and reading beta_n."""
    validate_rpp(inst)
    pre = preprocess_rpp(inst)
    if isinstance(pre, Decided):
        return LiftingDecision(pre.answer, "preprocessing")
    hi = build_hard_instance(pre)
    lci = sequential_lift(hi.task)
    beta_n = lci.coefficient(hi.n)
    no, yes = beta_n_values(hi)
    if beta_n not in (no, yes):
        raise UnexpectedCoefficient(f"beta_{hi.n} = {beta_n}, expected {no} or {yes}")
    return LiftingDecision(beta_n == yes, "lifting", beta_n, lci, hi)
