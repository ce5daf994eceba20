import random
from fractions import Fraction

import pytest

from sopapprox.cover import build_cover
from sopapprox.cube import assignment_from_str, cube_from_pattern
from sopapprox.error_model import (
    cube_insertion_eics,
    error_details,
    exhaustive_error_rate,
    noe_from_er,
    sampled_error_rate,
)

from oracles import brute_eic_count, random_cube_list


def mk(*patterns, n=3, m=1):
    return build_cover([cube_from_pattern(p) for p in patterns], n, m)


def F0():
    return mk("-10|1", "1-1|1")


@pytest.mark.parametrize(
    "er,n,expected",
    [
        (0.125, 7, 16),
        (0.01, 14, 163),
        (0.05, 10, 51),
        (0.0, 9, 0),
        ("0.01", 15, 327),  # floor, not the rounded-up published figure
        ("0.03", 15, 983),
        ("0.05", 15, 1638),
        ("0.01", 16, 655),
        ("0.03", 17, 3932),
        ("0.05", 17, 6553),
    ],
)
def test_noe_from_er(er, n, expected):
    assert noe_from_er(er, n) == expected


def test_noe_from_er_monotone():
    rates = [Fraction(k, 64) for k in range(65)]
    for n in (4, 8, 12):
        values = [noe_from_er(r, n) for r in rates]
        assert values == sorted(values)
    for er in (0.1, 0.25, "0.03"):
        values = [noe_from_er(er, n) for n in range(1, 16)]
        assert values == sorted(values)


def test_noe_from_er_range_check():
    with pytest.raises(ValueError):
        noe_from_er(-0.1, 4)
    with pytest.raises(ValueError):
        noe_from_er(1.5, 4)


def test_exhaustive_identity():
    f = F0()
    assert exhaustive_error_rate(f, f) == (0, 0.0)


def test_exhaustive_lost_outputs():
    count, er = exhaustive_error_rate(F0(), mk("1-1|1"))
    assert (count, er) == (2, 0.25)


def test_exhaustive_gained_outputs():
    count, er = exhaustive_error_rate(F0(), mk("-1-|1", "1--|1"))
    assert (count, er) == (2, 0.25)


def test_exhaustive_symmetry_and_oracle():
    rng = random.Random(3)
    for _ in range(50):
        n = rng.randint(2, 6)
        m = rng.randint(1, 3)
        a = random_cube_list(rng, n, m, rng.randint(1, 6))
        b = random_cube_list(rng, n, m, rng.randint(1, 6))
        ca = build_cover(a, n, m)
        cb = build_cover(b, n, m)
        count_ab, _ = exhaustive_error_rate(ca, cb)
        count_ba, _ = exhaustive_error_rate(cb, ca)
        assert count_ab == count_ba == brute_eic_count(a, b, n)


def test_error_details_per_output_flips():
    details = error_details(F0(), mk("1-1|1"))
    assert details["eic_count"] == 2
    assert details["rises"] == [0]
    assert details["falls"] == [2]
    assert [assignment_from_str(s) for s in ("010", "110")] == details["eics"]


def test_sampled_identity_and_determinism():
    f = F0()
    est, _ = sampled_error_rate(f, f, 1000, seed=5)
    assert est == 0.0
    g = mk("1-1|1")
    a = sampled_error_rate(F0(), g, 37, seed=123)
    b = sampled_error_rate(F0(), g, 37, seed=123)
    assert a == b


def test_sampled_full_enumeration_matches_exhaustive():
    est, (lo, hi) = sampled_error_rate(F0(), mk("1-1|1"), 8, seed=0)
    assert est == 0.25 and lo == hi == 0.25


def test_cube_insertion_eics_examples():
    f = F0()
    v = assignment_from_str
    assert cube_insertion_eics(cube_from_pattern("-1-|1"), f, frozenset()) == {v("011")}
    assert cube_insertion_eics(cube_from_pattern("--0|1"), f, frozenset()) == {
        v("000"),
        v("100"),
    }
    assert cube_insertion_eics(cube_from_pattern("-1-|1"), f, frozenset({v("011")})) == frozenset()
