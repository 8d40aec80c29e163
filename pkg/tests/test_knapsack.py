import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from liftkit.errors import (
    Infeasible,
    IndexOutOfRange,
    MalformedKnapsack,
    NegativeRestrictedCapacity,
    NotACover,
    NotAPartition,
    NotMinimal,
    TooLarge,
)
from liftkit.gu import build_gu_task
from liftkit.knapsack import (
    KnapsackSet,
    Partition,
    enumerate_feasible_points,
    is_cover,
    is_minimal_cover,
    knapsack_max,
    validate_lifting_task,
)


def brute_max(p, w, cap):
    best = None
    for x in itertools.product((0, 1), repeat=len(p)):
        if sum(wi * xi for wi, xi in zip(w, x)) <= cap:
            v = sum(pi * xi for pi, xi in zip(p, x))
            best = v if best is None else max(best, v)
    return best


# --- types -----------------------------------------------------------------


def test_knapsack_set_rejects_bad_data():
    with pytest.raises(MalformedKnapsack):
        KnapsackSet((), 3)
    with pytest.raises(MalformedKnapsack):
        KnapsackSet((1, 0), 3)
    with pytest.raises(MalformedKnapsack):
        KnapsackSet((1, 2), -1)
    with pytest.raises(MalformedKnapsack):
        KnapsackSet((1.5, 2), 3)


def test_knapsack_set_keeps_big_integers_exact():
    big = 10**40 + 1
    ks = KnapsackSet((big, 3), 2 * big)
    assert ks.a[0] == big and ks.scaled(3).b == 6 * big


# --- validate_lifting_task -------------------------------------------------


def test_validate_single_down_lift_setup():
    r = validate_lifting_task(KnapsackSet((1, 1, 1), 2), Partition({1, 2}, set(), {3}))
    assert r.b_bar == 1


def test_validate_up_lift_setup():
    r = validate_lifting_task(KnapsackSet((3, 3, 2), 5), Partition({1, 2}, {3}, set()))
    assert r.b_bar == 5


def test_validate_not_a_cover_on_boundary():
    with pytest.raises(NotACover):
        validate_lifting_task(KnapsackSet((2, 2, 3), 4), Partition({1, 2}, {3}, set()))


@pytest.mark.parametrize(
    "part",
    [
        Partition({1, 2}, {2}, {3}),
        Partition({1, 2}, set(), set()),
        Partition({1, 2}, {3, 4}, set()),
        Partition(set(), {1, 2}, {3}),
    ],
)
def test_validate_not_a_partition(part):
    with pytest.raises(NotAPartition):
        validate_lifting_task(KnapsackSet((1, 1, 1), 2), part)


def test_validate_negative_restricted_capacity():
    with pytest.raises(NegativeRestrictedCapacity):
        validate_lifting_task(KnapsackSet((1, 1, 5), 2), Partition({1, 2}, set(), {3}))


def test_validate_not_minimal():
    with pytest.raises(NotMinimal):
        validate_lifting_task(KnapsackSet((3, 3, 3), 5), Partition({1, 2, 3}))


# --- covers ----------------------------------------------------------------


def test_is_cover_examples():
    ks = KnapsackSet((3, 3, 3), 5)
    assert is_cover(ks, {1, 2}, 5)
    assert not is_cover(ks, {1}, 5)
    assert is_cover(KnapsackSet((1, 1, 1, 2, 3), 5), {1, 2}, 1)


def test_is_cover_index_out_of_range():
    with pytest.raises(IndexOutOfRange):
        is_cover(KnapsackSet((3, 3), 5), {0, 1}, 5)
    with pytest.raises(IndexOutOfRange):
        is_cover(KnapsackSet((3, 3), 5), {3}, 5)


def test_is_minimal_cover_examples():
    ks = KnapsackSet((3, 3, 3), 5)
    assert not is_minimal_cover(ks, {1, 2, 3}, 5)
    assert is_minimal_cover(ks, {1, 2}, 5)
    gu = build_gu_task(2).ks
    assert is_minimal_cover(gu, {1, 2}, 1)


def test_is_minimal_cover_requires_cover():
    with pytest.raises(NotACover):
        is_minimal_cover(KnapsackSet((3, 3, 3), 5), {1}, 5)


# --- kernel ----------------------------------------------------------------

METHODS = [None, "enumerate", "dp", "bnb"]


@pytest.mark.parametrize("method", METHODS)
def test_kernel_examples(method):
    assert knapsack_max((1, 1), (1, 1), 2, method) == (2, (1, 1))
    assert knapsack_max((3, 2, 2), (2, 2, 2), 4, method)[0] == brute_max((3, 2, 2), (2, 2, 2), 4) == 5
    assert knapsack_max((5, 4), (3, 3), 0, method) == (0, (0, 0))


def test_kernel_negative_capacity():
    with pytest.raises(Infeasible):
        knapsack_max((1,), (1,), -1)


def test_kernel_empty_and_zero_weight():
    assert knapsack_max((), (), 0) == (0, ())
    assert knapsack_max((4, 1), (0, 5), 3) == (4, (1, 0))


def test_kernel_big_capacity_uses_exact_bnb():
    f = build_gu_task(40).ks.a
    cap = sum(f) - 1
    value, x = knapsack_max(f, f, cap)
    assert value == cap
    assert sum(fi * xi for fi, xi in zip(f, x)) == cap


def test_kernel_dp_object_fallback():
    p = [2**70, 2**70 + 1, 3]
    w = [3, 4, 2]
    assert knapsack_max(p, w, 6, "dp")[0] == brute_max(p, w, 6)


items = st.lists(
    st.tuples(st.integers(0, 40), st.integers(0, 40)), min_size=0, max_size=20
)


@settings(max_examples=150, deadline=None)
@given(items, st.integers(0, 200), st.sampled_from(METHODS))
def test_kernel_matches_enumeration(pairs, cap, method):
    if method == "enumerate":
        pairs = pairs[:12]
    p = [x for x, _ in pairs]
    w = [y for _, y in pairs]
    value, x = knapsack_max(p, w, cap, method)
    assert value == brute_max(p, w, cap)
    assert sum(wi * xi for wi, xi in zip(w, x)) <= cap
    assert sum(pi * xi for pi, xi in zip(p, x)) == value


@settings(max_examples=80, deadline=None)
@given(items, st.integers(0, 150), st.integers(0, 30), st.data())
def test_kernel_monotone(pairs, cap, extra, data):
    p = [x for x, _ in pairs]
    w = [y for _, y in pairs]
    v = knapsack_max(p, w, cap)[0]
    assert knapsack_max(p, w, cap + extra)[0] >= v
    if p:
        j = data.draw(st.integers(0, len(p) - 1))
        q = list(p)
        q[j] += extra
        assert knapsack_max(q, w, cap)[0] >= v


# --- enumeration -----------------------------------------------------------


def test_enumerate_examples():
    assert set(enumerate_feasible_points(KnapsackSet((3, 3), 5))) == {(0, 0), (1, 0), (0, 1)}
    pts = list(enumerate_feasible_points(KnapsackSet((1, 1, 1), 2)))
    assert len(pts) == 7 and (1, 1, 1) not in pts


def test_enumerate_gu_count_matches_subset_count():
    ks = build_gu_task(2).ks
    count = sum(
        1
        for r in range(ks.n + 1)
        for S in itertools.combinations(range(ks.n), r)
        if sum(ks.a[i] for i in S) <= ks.b
    )
    pts = list(enumerate_feasible_points(ks))
    assert len(pts) == len(set(pts)) == count


def test_enumerate_order_is_ascending_mask():
    pts = list(enumerate_feasible_points(KnapsackSet((2, 3, 4), 6)))
    masks = [sum(x << i for i, x in enumerate(p)) for p in pts]
    assert masks == sorted(masks)


def test_enumerate_too_large():
    with pytest.raises(TooLarge):
        list(enumerate_feasible_points(KnapsackSet((1,) * 5, 2), limit=4))


def test_enumerate_respects_env_limit(monkeypatch):
    monkeypatch.setenv("LIFTKIT_LIMIT", "3")
    with pytest.raises(TooLarge):
        list(enumerate_feasible_points(KnapsackSet((1,) * 4, 2)))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(1, 20), min_size=1, max_size=9), st.integers(0, 60))
def test_enumeration_is_downward_closed(a, b):
    ks = KnapsackSet(tuple(a), b)
    pts = set(enumerate_feasible_points(ks))
    assert len(pts) == sum(
        1 for x in itertools.product((0, 1), repeat=len(a))
        if sum(ai * xi for ai, xi in zip(a, x)) <= b
    )
    for p in pts:
        for i, xi in enumerate(p):
            if xi:
                assert p[:i] + (0,) + p[i + 1 :] in pts


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(1, 30), min_size=1, max_size=6), st.data())
def test_restriction_capacity_bounds(a, data):
    n = len(a)
    C = data.draw(st.sets(st.integers(1, n), min_size=1))
    sc = sum(a[i - 1] for i in C)
    b_bar = data.draw(st.integers(sc - min(a[i - 1] for i in C), sc - 1))
    rest = sorted(set(range(1, n + 1)) - C)
    N1 = {i for i in rest if data.draw(st.booleans())}
    ks = KnapsackSet(tuple(a), b_bar + sum(a[i - 1] for i in N1))
    r = validate_lifting_task(ks, Partition(C, set(rest) - N1, N1))
    assert 0 <= r.b_bar < sc
