import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _gen import random_task
from liftkit.errors import InfeasibleLift, TooLarge
from liftkit.gu import build_gu_task, expected_gu_coefficients
from liftkit.knapsack import KnapsackSet, Partition
from liftkit.lifting import LiftingTask, sequential_lift
from liftkit.verify import (
    Inequality,
    affine_rank,
    brute_force_lift_oracle,
    check_facet,
    check_validity,
    polytope_dimension,
)


def points(ks):
    return [
        x for x in itertools.product((0, 1), repeat=ks.n)
        if sum(a * v for a, v in zip(ks.a, x)) <= ks.b
    ]


def rational_rank(vectors):
    """Plain Gauss-Jordan over Fractions, independent of RankAccumulator."""
    rows = [[Fraction(v) for v in vec] for vec in vectors]
    rank, col = 0, 0
    ncols = len(rows[0]) if rows else 0
    while rank < len(rows) and col < ncols:
        piv = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                fac = rows[r][col] / rows[rank][col]
                rows[r] = [x - fac * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
        col += 1
    return rank


def gu_lci(r):
    lci = sequential_lift(build_gu_task(r))
    return Inequality(lci.coeffs, lci.rhs)


# --- validity --------------------------------------------------------------


def test_validity_gu_r2():
    assert check_validity(build_gu_task(2).ks, gu_lci(2)).valid


def test_validity_violation_witness():
    rep = check_validity(KnapsackSet((3, 3, 2), 5), Inequality((1, 1, 2), 1))
    assert not rep.valid
    assert rep.witness == (0, 0, 1)


def test_validity_too_large():
    with pytest.raises(TooLarge):
        check_validity(KnapsackSet((1,) * 6, 3), Inequality((1,) * 6, 3), limit=5)


@settings(max_examples=80, deadline=None)
@given(
    st.lists(st.tuples(st.integers(1, 15), st.integers(0, 6)), min_size=1, max_size=8),
    st.integers(0, 40),
    st.integers(0, 20),
)
def test_validity_matches_pure_enumeration(items, b, rhs):
    ks = KnapsackSet(tuple(a for a, _ in items), b)
    coeffs = tuple(c for _, c in items)
    rep = check_validity(ks, Inequality(coeffs, rhs))
    violators = [x for x in points(ks) if sum(c * v for c, v in zip(coeffs, x)) > rhs]
    assert rep.valid == (not violators)
    if violators:
        assert rep.witness == violators[0] or rep.witness in violators


def test_validity_across_block_boundary():
    # 19 items forces a high block on top of the 16-item low block
    ks = KnapsackSet(tuple(range(1, 20)), 30)
    assert check_validity(ks, Inequality((1,) * 19, 7)).valid
    rep = check_validity(ks, Inequality((0,) * 18 + (1,), 0))
    assert rep.witness == (0,) * 18 + (1,)


def test_validity_with_fixed_face():
    ks = KnapsackSet((3, 3, 2), 5)
    # on x_3 = 1 the capacity left is 3, so x_1 + x_2 <= 1 holds there
    assert check_validity(ks, Inequality((1, 1, 0), 1), fixed={3: 1}).valid
    assert not check_validity(ks, Inequality((1, 1, 0), 0), fixed={3: 1}).valid


def test_validity_big_integers_use_exact_path():
    big = 2**70
    ks = KnapsackSet((big, big, big), 2 * big)
    assert check_validity(ks, Inequality((big, big, big), 2 * big)).valid
    assert not check_validity(ks, Inequality((big, big, big + 1), 2 * big)).valid


# --- dimension / rank ------------------------------------------------------


def test_dimension_examples():
    assert polytope_dimension(KnapsackSet((2, 3, 4), 4)) == 3
    assert polytope_dimension(KnapsackSet((6, 1), 5)) == 1
    gu = build_gu_task(2).ks
    assert polytope_dimension(gu) == rational_rank([p for p in points(gu) if any(p)]) == 5


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=7),
       st.integers(1, 50))
def test_affine_rank_exact_and_scale_free(pts, t):
    anchor = pts[0]
    diffs = [[x - y for x, y in zip(p, anchor)] for p in pts[1:]]
    expected = rational_rank(diffs) if diffs else 0
    assert affine_rank(pts) == expected
    assert affine_rank([[t * x for x in p] for p in pts]) == expected


# --- facets ----------------------------------------------------------------


def test_facet_minimal_cover_two_items():
    rep = check_facet(KnapsackSet((3, 3), 5), Inequality((1, 1), 1))
    assert rep.is_facet and rep.tight_affine_dim == 1


def test_facet_three_item_cover():
    ks = KnapsackSet((3, 3, 3), 8)
    rep = check_facet(ks, Inequality((1, 1, 1), 2))
    tight = [p for p in points(ks) if sum(p) == 2]
    assert rep.tight_count == len(tight) == 3
    assert rep.tight_affine_dim == rational_rank([[x - y for x, y in zip(p, tight[0])] for p in tight[1:]]) == 2
    assert rep.is_facet


def test_facet_gu_r2_lci():
    ks = build_gu_task(2).ks
    rep = check_facet(ks, gu_lci(2))
    coeffs = (1, 1, 1, 2, 3)
    tight = {p for p in points(ks) if sum(c * x for c, x in zip(coeffs, p)) == 5}
    assert tight == {(1, 1, 1, 1, 0), (0, 0, 0, 1, 1), (1, 1, 0, 0, 1), (1, 0, 1, 0, 1), (0, 1, 1, 0, 1)}
    assert (rep.valid, rep.tight_count, rep.tight_affine_dim, rep.dimension) == (True, 5, 4, 5)
    assert rep.is_facet


def test_not_facet():
    # valid but slack everywhere: no feasible point reaches 2
    rep = check_facet(KnapsackSet((3, 3), 5), Inequality((1, 1), 2))
    assert rep.valid and not rep.is_facet and rep.tight_count == 0


# --- oracle ----------------------------------------------------------------


def test_oracle_gu_r3():
    lci = brute_force_lift_oracle(build_gu_task(3))
    exp = expected_gu_coefficients(3)
    assert lci.coeffs[:2] == (1, 1)
    assert {i: lci.coefficient(i) for i in exp} == exp


def test_oracle_single_up_lift():
    t = LiftingTask(KnapsackSet((3, 3, 3), 5), Partition({1, 2}, {3}, set()), (3,))
    assert brute_force_lift_oracle(t).coefficient(3) == 1


def test_oracle_infeasible_matches_driver():
    t = LiftingTask(KnapsackSet((3, 3, 6, 2), 7), Partition({1, 2}, {3}, {4}), (3, 4))
    with pytest.raises(InfeasibleLift):
        brute_force_lift_oracle(t)


@pytest.mark.parametrize("seed", range(40))
def test_oracle_equals_sequential_lift(seed):
    t = random_task(random.Random(seed), n_max=14, a_max=50)
    try:
        main = sequential_lift(t)
    except InfeasibleLift as exc:
        with pytest.raises(InfeasibleLift) as other:
            brute_force_lift_oracle(t)
        assert (other.value.index, other.value.step) == (exc.index, exc.step)
        return
    oracle = brute_force_lift_oracle(t)
    assert oracle.coeffs == main.coeffs
    assert [s.optimum for s in oracle.trace] == [s.optimum for s in main.trace]


@pytest.mark.parametrize("seed", range(30))
def test_lcis_are_valid(seed):
    t = random_task(random.Random(1000 + seed), n_max=16, a_max=60, liftable=True)
    lci = sequential_lift(t)
    assert check_validity(t.ks, Inequality(lci.coeffs, lci.rhs)).valid


@pytest.mark.parametrize("seed", range(60))
def test_facet_preservation_observed(seed):
    t = random_task(random.Random(2000 + seed), n_max=12, a_max=30, all_fit=True, liftable=True)
    lci = sequential_lift(t)
    assert check_facet(t.ks, Inequality(lci.coeffs, lci.rhs)).is_facet
