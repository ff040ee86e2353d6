import itertools

import pytest

from emvt.carry import (
    carry_dp_count,
    diagonal_ratio_report,
    digit_sum_counts,
    direct_congruence_count,
    max_tuple_count,
    paired_difference_counts,
    realized_carry_chain,
    string_universe,
    tuples_with_digit_sum,
)
from emvt.counting import WeightAssignment
from emvt.digitset import make_digit_set, squares_digit_set
from emvt.errors import InvalidRange

DS3 = make_digit_set(3, [0, 1])
DS5 = make_digit_set(5, [0, 1, 4])
DS11 = squares_digit_set(11)


def test_tuples_with_digit_sum_examples():
    assert tuples_with_digit_sum(DS3, 2, 1).tuples == ((0, 1), (1, 0))
    assert tuples_with_digit_sum(DS3, 2, 3).tuples == ()
    got = tuples_with_digit_sum(DS11, 2, 5)
    assert set(got.tuples) == {(1, 4), (4, 1)} and got.size == 2


def test_tuples_match_brute_force():
    for ds, t in ((DS3, 3), (DS5, 2), (DS11, 2)):
        by_sum = {}
        for tup in itertools.product(ds.digits, repeat=t):
            by_sum.setdefault(sum(tup), set()).add(tup)
        for h in range(-1, t * ds.max_digit + 2):
            got = set(tuples_with_digit_sum(ds, t, h).tuples)
            assert got == by_sum.get(h, set())


def test_digit_sum_counts_complete():
    for ds, t in ((DS3, 2), (DS5, 3), (DS11, 2)):
        counts = digit_sum_counts(ds, t)
        assert sum(counts) == ds.r**t


def test_max_tuple_count_examples():
    assert max_tuple_count(DS11, 2) == (2, 1)
    assert max_tuple_count(DS3, 2) == (2, 1)
    assert max_tuple_count(DS3, 1) == (1, 0)


def test_paired_difference_counts_identity():
    for ds, t in ((DS3, 2), (DS5, 2)):
        counts = digit_sum_counts(ds, t)
        pairs = paired_difference_counts(ds, t)
        top = len(counts) - 1
        for h, total in pairs.items():
            expected = sum(
                counts[m] * counts[m - h]
                for m in range(top + 1)
                if 0 <= m - h <= top
            )
            assert total == expected
        # Brute force cross-check on the small base.
        brute = {}
        for u in itertools.product(ds.digits, repeat=t):
            for v in itertools.product(ds.digits, repeat=t):
                h = sum(u) - sum(v)
                brute[h] = brute.get(h, 0) + 1
        assert pairs == brute


def test_carry_dp_examples():
    assert carry_dp_count(DS3, 1, 0, 1, (0,), 1) == 2
    assert carry_dp_count(DS3, 1, 0, 1, (0,), 2) == direct_congruence_count(
        DS3, 1, 0, 1, (0,), 9, include_zero=True
    )
    # c = d: every class pair counts, (class size)^2 per variable pair.
    assert carry_dp_count(DS3, 1, 2, 2, (1,), 4) == (2**2) ** 2


def test_carry_dp_forbidden_z():
    assert carry_dp_count(DS3, 1, 1, 1, (2,), 3) == 0
    assert carry_dp_count(DS5, 2, 1, 2, (1, 2), 3) == 0


def test_carry_dp_invalid_range():
    with pytest.raises(InvalidRange):
        carry_dp_count(DS3, 1, 2, 1, (0,), 3)
    with pytest.raises(InvalidRange):
        carry_dp_count(DS3, 1, 0, 4, (0,), 3)


def test_carry_dp_equals_direct_grid():
    for t in (1, 2):
        for big_d in range(0, 4):
            for c in range(0, big_d + 1):
                for d in range(c, big_d + 1):
                    for z in itertools.product(range(3**c), repeat=t):
                        dp = carry_dp_count(DS3, t, c, d, z, big_d)
                        direct = direct_congruence_count(
                            DS3, t, c, d, z, 3**big_d, include_zero=True
                        )
                        assert dp == direct, (t, c, d, big_d, z)


def test_carry_dp_equals_direct_p5_spots():
    for (t, c, d, big_d) in ((1, 0, 1, 2), (2, 0, 2, 2), (2, 1, 2, 3), (1, 1, 2, 2)):
        for z in itertools.product(range(5**c), repeat=t):
            dp = carry_dp_count(DS5, t, c, d, z, big_d)
            direct = direct_congruence_count(DS5, t, c, d, z, 5**big_d, include_zero=True)
            assert dp == direct


def test_realized_carries_in_range():
    # Enumerate actual solutions and confirm every carry chain is integral
    # and lies inside [1-t, t-1].
    t, c, d, big_d = 2, 0, 2, 2
    universe = string_universe(DS3, big_d)
    mod = 3**d
    for xs in itertools.product(universe, repeat=t):
        for ys in itertools.product(universe, repeat=t):
            if (sum(xs) - sum(ys)) % mod == 0:
                chain = realized_carry_chain(3, t, c, d, xs, ys)
                assert all(1 - t <= lam <= t - 1 for lam in chain.values)


def test_string_universe():
    assert string_universe(DS3, 2) == [0, 1, 3, 4]
    assert string_universe(DS3, 0) == [0]


def test_direct_congruence_examples():
    # Large d makes the congruence an exact equation.
    exact = direct_congruence_count(DS3, 1, 0, 5, (0,), 4)
    assert exact == 3  # members {1,3,4}: only x = y solves sum equality
    assert direct_congruence_count(DS3, 1, 0, 1, (0,), 4) == 5


def test_diagonal_ratio_c_equals_d():
    rep = diagonal_ratio_report(DS3, 2, 1, 1, (0, 1), 9)
    assert rep.ratio == 1.0
    rep_t1 = diagonal_ratio_report(DS3, 1, 0, 1, (0,), 9)
    assert rep_t1.lhs >= rep_t1.rhs_core


def test_diagonal_ratio_oracle():
    # p=3, A={0,1}, t=2, c=0, d=2, X=9: both sides by direct enumeration.
    from emvt.ellipsephic import EllipsephicSet, enumerate_up_to

    members = enumerate_up_to(EllipsephicSet(DS3), 9)
    mod = 9
    lhs = 0
    for xs in itertools.product(members, repeat=2):
        for ys in itertools.product(members, repeat=2):
            if (sum(xs) - sum(ys)) % mod == 0:
                lhs += 1
    rhs = 0
    for xs in itertools.product(members, repeat=2):
        for ys in itertools.product(members, repeat=2):
            if all((x - y) % mod == 0 for x, y in zip(xs, ys)):
                rhs += 1
    rep = diagonal_ratio_report(DS3, 2, 0, 2, (0, 0), 9)
    assert rep.lhs == lhs and rep.rhs_core == rhs
    assert lhs >= rhs
    assert rep.bound_factor == max_tuple_count(DS3, 2)[0] ** 2


def test_diagonal_ratio_weighted():
    import random

    rng = random.Random(5)
    from emvt.ellipsephic import EllipsephicSet, enumerate_up_to

    members = enumerate_up_to(EllipsephicSet(DS3), 9)
    w = WeightAssignment(values={x: rng.random() for x in members})
    rep = diagonal_ratio_report(DS3, 2, 0, 1, (0, 0), 9, weights=w)
    assert rep.lhs >= rep.rhs_core - 1e-9


def test_diagonal_ratio_json_schema():
    import json

    rep = diagonal_ratio_report(DS3, 2, 0, 2, (0, 0), 9)
    data = json.loads(rep.to_json())
    assert set(data) == {
        "p", "digits", "t", "c", "d", "z", "X", "lhs", "rhs_core", "ratio",
        "bound_factor",
    }
    assert data["lhs"] == "36" and data["rhs_core"] == "16"
