import pytest

from sopapprox.cover import build_cover
from sopapprox.cube import assignment_from_str, cube_from_pattern
from sopapprox.error_model import exhaustive_error_rate
from sopapprox.solution import (
    EMPTY_SOLUTION,
    SolutionError,
    make_solution,
    solution_sort_key,
    update_solution,
)

v = assignment_from_str


def test_update_with_empty_is_identity():
    s1 = make_solution([cube_from_pattern("-1-|1")], [cube_from_pattern("-10|1")], [v("011")])
    assert update_solution(s1, EMPTY_SOLUTION) == s1
    assert update_solution(EMPTY_SOLUTION, s1) == s1


def test_update_merges_and_recomputes_reduction():
    base = make_solution([], [cube_from_pattern("-10|1")], [v("010"), v("110")])
    part = make_solution([cube_from_pattern("1--|1")], [cube_from_pattern("1-1|1")], [v("100")])
    merged = update_solution(part, base)
    assert merged.removed == {cube_from_pattern("-10|1"), cube_from_pattern("1-1|1")}
    assert merged.inserted == {cube_from_pattern("1--|1")}
    assert merged.reduction == 3 + 3 - 2 == 4
    assert merged.eics == {v("010"), v("110"), v("100")}
    # the plain union over-counts here: inserting "1--|1" re-covers 110, so
    # the measured rate is 2/8 (the engine's correction step reconciles this)
    original = build_cover([cube_from_pattern("-10|1"), cube_from_pattern("1-1|1")], 3, 1)
    approx = build_cover(list(merged.inserted), 3, 1)
    count, er = exhaustive_error_rate(original, approx)
    assert count == 2 and er == 2 / 8


def test_cancellation_both_ways():
    grown = cube_from_pattern("-1-|1")
    base = make_solution([grown], [], [v("011")])
    part = make_solution([], [grown], [v("010")])
    merged = update_solution(part, base)
    assert merged.inserted == frozenset() and merged.removed == frozenset()
    # a removed cube re-inserted cancels too
    c1 = cube_from_pattern("-10|1")
    base = make_solution([], [c1], [v("010")])
    part = make_solution([c1], [], [v("111")])
    merged = update_solution(part, base)
    assert merged.inserted == frozenset() and merged.removed == frozenset()


def test_eic_overlap_raises():
    a = make_solution([], [cube_from_pattern("-10|1")], [v("010")])
    b = make_solution([], [cube_from_pattern("1-1|1")], [v("010")])
    with pytest.raises(SolutionError):
        update_solution(a, b)


def test_zero_reduction_arithmetic():
    s = make_solution([cube_from_pattern("-10|1")], [cube_from_pattern("1-1|1")], [])
    assert s.reduction == 0  # insert 3 literals, remove 3 literals


def test_sort_key_prefers_reduction_then_fewer_eics_then_fewer_literals():
    big = make_solution([], [cube_from_pattern("-10|1")], [v("010")])
    small = make_solution([], [cube_from_pattern("--0|1")], [v("000")])
    assert solution_sort_key(big, 3, 1) < solution_sort_key(small, 3, 1)  # 3 lits > 2 lits
    one = make_solution([cube_from_pattern("--0|1")], [cube_from_pattern("-10|1")], [v("000")])
    two = make_solution([cube_from_pattern("--0|1")], [cube_from_pattern("-10|1")], [v("000"), v("100")])
    assert solution_sort_key(one, 3, 1) < solution_sort_key(two, 3, 1)
    # equal reduction and EIC count: fewer inserted literals wins
    lean = make_solution([], [cube_from_pattern("--0|1")], [v("000")])
    bulky = make_solution([cube_from_pattern("---|1")], [cube_from_pattern("-10|1")], [v("000")])
    assert lean.reduction == bulky.reduction == 2
    assert solution_sort_key(lean, 3, 1) < solution_sort_key(bulky, 3, 1)
