"""Sequential up/down lifting of a minimal cover inequality.

Starting from ``sum_{i in C} x_i <= |C| - 1`` on X(N0, N1), each variable of
the lifting sequence is freed in turn. Variables of N0 get an up-lifting
coefficient alpha, variables of N1 a down-lifting coefficient beta (which
also raises the right-hand side). Every coefficient comes from one exact
0-1 knapsack maximization over the variables lifted so far.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Callable, Iterator, Mapping, Sequence

from .errors import InfeasibleLift, InvalidSequence, NonPositiveScale, ValidationError
from .knapsack import KnapsackSet, Partition, Restriction, knapsack_max, validate_lifting_task

UP = "up"
DOWN = "down"


@dataclass(frozen=True)
class LiftingTask:
    ks: KnapsackSet
    partition: Partition
    sequence: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "sequence", tuple(self.sequence))

    @property
    def n(self) -> int:
        return self.ks.n

    def validate(self) -> Restriction:
        """Check the partition, the minimal cover and the sequence."""
        restriction = validate_lifting_task(self.ks, self.partition)
        free = self.partition.N0 | self.partition.N1
        seq = self.sequence
        if len(set(seq)) != len(seq):
            raise InvalidSequence(f"sequence {list(seq)} repeats an index")
        if set(seq) != free:
            missing = sorted(free - set(seq))
            extra = sorted(set(seq) - free)
            raise InvalidSequence(
                f"sequence must list N0 and N1 exactly once "
                f"(missing {missing}, unexpected {extra})"
            )
        return restriction


@dataclass(frozen=True)
class LiftState:
    """Partially lifted inequality.

    ``skipped`` holds N0 variables whose up-lifting problem was infeasible
    and that were left at coefficient 0 (only under the reporting policy).
    """

    restriction: Restriction
    alpha: Mapping[int, int] = field(default_factory=dict)
    beta: Mapping[int, int] = field(default_factory=dict)
    skipped: frozenset[int] = frozenset()

    @property
    def rhs(self) -> int:
        return self.restriction.partition.c - 1 + sum(self.beta.values())

    def lifted(self) -> list[int]:
        """Variables of the current subproblem, in index order."""
        return sorted(self.restriction.partition.C | set(self.alpha) | set(self.beta))

    def coefficient(self, i: int) -> int:
        if i in self.restriction.partition.C:
            return 1
        if i in self.alpha:
            return self.alpha[i]
        return self.beta.get(i, 0)

    def _subproblem(self) -> tuple[list[int], list[int], list[int], int]:
        ks = self.restriction.base
        vars_ = self.lifted()
        profits = [self.coefficient(i) for i in vars_]
        weights = [ks.weight(i) for i in vars_]
        room = self.restriction.b_bar + ks.weight_of(self.beta)
        return vars_, profits, weights, room


@dataclass(frozen=True)
class TraceStep:
    index: int
    direction: str
    coefficient: int
    optimum: int | None


@dataclass(frozen=True)
class LiftedCoverInequality:
    """Final sequential LCI; ``rhs`` is derived from the cover size and beta."""

    coeffs: tuple[int, ...]
    partition: Partition
    trace: tuple[TraceStep, ...]
    skipped: frozenset[int] = frozenset()

    @property
    def n(self) -> int:
        return len(self.coeffs)

    @property
    def rhs(self) -> int:
        return self.partition.c - 1 + sum(self.coeffs[i - 1] for i in self.partition.N1)

    def coefficient(self, i: int) -> int:
        return self.coeffs[i - 1]

    def as_map(self) -> dict[int, int]:
        return {i: c for i, c in enumerate(self.coeffs, start=1)}


# Signature shared with the brute-force oracle: (profits, weights, capacity) -> optimum.
Solver = Callable[[Sequence[int], Sequence[int], int], int]


def _kernel(profits, weights, capacity) -> int:
    return knapsack_max(profits, weights, capacity)[0]


def _check_free(state: LiftState, l: int, group: frozenset[int], name: str) -> None:
    if l not in group:
        raise ValidationError(f"x_{l} is not in {name}")
    if l in state.alpha or l in state.beta or l in state.skipped:
        raise ValidationError(f"x_{l} has already been lifted")


def _up(state: LiftState, l: int, solver: Solver) -> tuple[int, int]:
    _check_free(state, l, state.restriction.partition.N0, "N0")
    _, profits, weights, room = state._subproblem()
    capacity = room - state.restriction.base.weight(l)
    if capacity < 0:
        raise InfeasibleLift(l, capacity=capacity)
    optimum = solver(profits, weights, capacity)
    return state.rhs - optimum, optimum


def _down(state: LiftState, l: int, solver: Solver) -> tuple[int, int]:
    _check_free(state, l, state.restriction.partition.N1, "N1")
    _, profits, weights, room = state._subproblem()
    optimum = solver(profits, weights, room + state.restriction.base.weight(l))
    return optimum - state.rhs, optimum


def up_lift_coefficient(state: LiftState, l: int) -> int:
    """Up-lifting coefficient alpha_l of a variable fixed at 0."""
    return _up(state, l, _kernel)[0]


def down_lift_coefficient(state: LiftState, l: int) -> int:
    """Down-lifting coefficient beta_l of a variable fixed at 1."""
    return _down(state, l, _kernel)[0]


def iter_lift(
    task: LiftingTask,
    on_infeasible: str = "raise",
    solver: Solver = _kernel,
) -> Iterator[tuple[LiftState, TraceStep]]:
    """Yield the state after each lifting step together with its trace entry.

    ``on_infeasible="skip"`` leaves an up-lifted variable whose subproblem is
    infeasible at coefficient 0 and records it in ``LiftState.skipped``.
    """
    if on_infeasible not in ("raise", "skip"):
        raise ValueError(f"unknown infeasibility policy {on_infeasible!r}")
    state = LiftState(task.validate())
    N0 = task.partition.N0
    for step, l in enumerate(task.sequence, start=1):
        if l in N0:
            try:
                coef, opt = _up(state, l, solver)
            except InfeasibleLift as exc:
                if on_infeasible == "raise":
                    raise InfeasibleLift(l, step=step, capacity=exc.capacity) from None
                state = replace(state, skipped=state.skipped | {l})
                yield state, TraceStep(l, UP, 0, None)
                continue
            if coef < 0:
                raise AssertionError(f"negative alpha_{l} = {coef}")
            state = replace(state, alpha={**state.alpha, l: coef})
            yield state, TraceStep(l, UP, coef, opt)
        else:
            coef, opt = _down(state, l, solver)
            if coef < 0:
                raise AssertionError(f"negative beta_{l} = {coef}")
            state = replace(state, beta={**state.beta, l: coef})
            yield state, TraceStep(l, DOWN, coef, opt)


def finish(task: LiftingTask, state: LiftState, trace: Sequence[TraceStep]) -> LiftedCoverInequality:
    coeffs = tuple(state.coefficient(i) for i in range(1, task.n + 1))
    return LiftedCoverInequality(coeffs, task.partition, tuple(trace), state.skipped)


def sequential_lift(task: LiftingTask, on_infeasible: str = "raise") -> LiftedCoverInequality:
    """Lift every variable of ``task.sequence`` and return the resulting LCI."""
    state = LiftState(task.validate())
    trace = []
    for state, step in iter_lift(task, on_infeasible):
        trace.append(step)
    return finish(task, state, trace)


def scale_task(task: LiftingTask, t: int) -> LiftingTask:
    if isinstance(t, bool) or not isinstance(t, int) or t < 1:
        raise NonPositiveScale(f"scale factor must be a positive integer, got {t!r}")
    return LiftingTask(task.ks.scaled(t), task.partition, task.sequence)


def replay_trace(lci: LiftedCoverInequality) -> list[int]:
    """Recompute each coefficient from the recorded subproblem optima."""
    rhs = lci.partition.c - 1
    out = []
    for step in lci.trace:
        if step.optimum is None:
            out.append(0)
        elif step.direction == UP:
            out.append(rhs - step.optimum)
        else:
            coef = step.optimum - rhs
            rhs += coef
            out.append(coef)
    return out
