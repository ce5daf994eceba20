import random

from sopapprox.config import EngineConfig
from sopapprox.cover import build_cover, total_literals
from sopapprox.cube import assignment_from_str, cube_from_pattern, input_str, pattern
from sopapprox.error_model import exhaustive_error_rate
from sopapprox.insertion import (
    Sct,
    augment,
    combine_and_estimate,
    cube_insertion,
    estimate_reduction,
    generate_scts,
)
from sopapprox.solution import EMPTY_SOLUTION, make_solution

from oracles import random_cube_list

v = assignment_from_str


def F0():
    return build_cover([cube_from_pattern("-10|1"), cube_from_pattern("1-1|1")], 3, 1)


def roots_of(scts, n=3):
    return {tuple(sorted(input_str(x, n) for x in s.root)) for s in scts}


def leaves_of(sct, n=3, m=1):
    return sorted((pattern(l.cube, n, m), pattern(l.origin, n, m)) for l in sct.leaves)


def test_generate_scts_budget_two():
    scts = generate_scts(F0(), 2, frozenset())
    assert roots_of(scts) == {("011",), ("100",), ("000", "100"), ("001", "011")}
    by_root = {tuple(sorted(input_str(x, 3) for x in s.root)): s for s in scts}
    assert leaves_of(by_root[("011",)]) == [("-1-|1", "-10|1")]
    assert leaves_of(by_root[("100",)]) == [("1--|1", "1-1|1")]
    assert leaves_of(by_root[("000", "100")]) == [("--0|1", "-10|1")]
    assert leaves_of(by_root[("001", "011")]) == [("--1|1", "1-1|1")]


def test_generate_scts_budget_one():
    scts = generate_scts(F0(), 1, frozenset())
    assert roots_of(scts) == {("011",), ("100",)}


def test_generate_scts_with_prior_free_insertion():
    scts = generate_scts(F0(), 1, frozenset({v("011")}))
    # "-1-|1" now needs no new EIC (free insertion, no tree); "--1|1" shrinks
    # to the single new EIC 001 and therefore qualifies at budget 1
    assert roots_of(scts) == {("001",), ("100",)}


def test_augment_examples():
    scts = generate_scts(F0(), 2, frozenset())
    augment(scts)
    by_root = {tuple(sorted(input_str(x, 3) for x in s.root)): s for s in scts}
    assert ("1--|1", "1-1|1") in leaves_of(by_root[("000", "100")])
    assert ("-1-|1", "-10|1") in leaves_of(by_root[("001", "011")])
    # disjoint roots stay untouched
    assert leaves_of(by_root[("011",)]) == [("-1-|1", "-10|1")]


def test_augment_disjoint_roots_unchanged():
    a = Sct(frozenset({v("011")}), [])
    b = Sct(frozenset({v("000"), v("100")}), [])
    augment([a, b])
    assert b.leaves == []


def test_estimate_single_leaf():
    cover = F0()
    scts = generate_scts(cover, 2, frozenset())
    by_root = {tuple(sorted(input_str(x, 3) for x in s.root)): s for s in scts}
    sct = by_root[("011",)]
    before = cover.full_state()
    assert estimate_reduction(cover, sct) == 1
    assert cover.full_state() == before
    assert {pattern(c, 3, 1) for c in sct.best.inserted} == {"-1-|1"}
    assert [pattern(c, 3, 1) for c in sct.best.removed] == ["-10|1"]


def test_estimate_augmented_pair_takes_joint_subset():
    cover = F0()
    scts = generate_scts(cover, 2, frozenset())
    augment(scts)
    by_root = {tuple(sorted(input_str(x, 3) for x in s.root)): s for s in scts}
    sct = by_root[("000", "100")]
    assert estimate_reduction(cover, sct) == 2
    assert {pattern(c, 3, 1) for c in sct.best.inserted} == {"--0|1", "1--|1"}
    assert {pattern(c, 3, 1) for c in sct.best.removed} == {"-10|1", "1-1|1"}


def test_estimates_are_exact_against_reapplication():
    rng = random.Random(21)
    for _ in range(40):
        n = rng.randint(2, 6)
        m = rng.randint(1, 2)
        cubes = random_cube_list(rng, n, m, rng.randint(2, 6))
        cover = build_cover(cubes, n, m)
        base_lits = total_literals(cover)
        scts = generate_scts(cover, 2, frozenset())
        augment(scts)
        for sct in scts:
            estimate_reduction(cover, sct)
            if sct.best is None:
                continue
            approx = build_cover(
                [c for c in cover.cubes if c not in set(sct.best.removed)]
                + list(sct.best.inserted),
                n,
                m,
            )
            assert base_lits - total_literals(approx) == sct.best.reduction
            count, _ = exhaustive_error_rate(cover, approx)
            assert count == len(sct.best.eics)


def test_combine_and_estimate_running_example():
    cover = F0()
    scts = generate_scts(cover, 2, frozenset())
    augment(scts)
    p1, p2 = combine_and_estimate(cover, scts)
    assert {pattern(c, 3, 1) for c in p1.inserted} == {"-1-|1"}
    assert {pattern(c, 3, 1) for c in p1.removed} == {"-10|1"}
    assert p1.reduction == 1
    assert p1.eics == {v("011")}
    assert {pattern(c, 3, 1) for c in p2.inserted} == {"-1-|1", "1--|1"}
    assert {pattern(c, 3, 1) for c in p2.removed} == {"-10|1", "1-1|1"}
    assert p2.reduction == 2
    assert p2.eics == {v("011"), v("100")}


def test_combine_with_no_scts():
    full = build_cover([cube_from_pattern("---|1")], 3, 1)
    scts = generate_scts(full, 2, frozenset())
    assert scts == []
    assert combine_and_estimate(full, scts) == (None, None)


def test_cube_insertion_merges_base_solution():
    cover = F0()
    base = EMPTY_SOLUTION
    s1, s2 = cube_insertion(cover, 2, base)
    assert s1.reduction == 1 and len(s1.eics) == 1
    assert s2.reduction == 2 and len(s2.eics) == 2


def test_returned_solutions_have_exact_eic_counts():
    rng = random.Random(33)
    checked = 0
    for _ in range(60):
        n = rng.randint(2, 6)
        m = rng.randint(1, 2)
        cubes = random_cube_list(rng, n, m, rng.randint(2, 7))
        cover = build_cover(cubes, n, m)
        s1, s2 = cube_insertion(cover, 2, EMPTY_SOLUTION)
        for sol in (s1, s2):
            if sol is None:
                continue
            checked += 1
            approx = build_cover(
                [c for c in cover.cubes if c not in sol.removed] + list(sol.inserted),
                n,
                m,
            )
            count, _ = exhaustive_error_rate(cover, approx)
            assert count == len(sol.eics)
            assert total_literals(cover) - total_literals(approx) == sol.reduction
    assert checked > 20


def test_percentile_cutoffs_are_tunable():
    cover = F0()
    scts = generate_scts(cover, 2, frozenset())
    augment(scts)
    # with a partner pool of one, no pairs form; best two-error step then
    # comes from the augmented trees
    cfg = EngineConfig(sct_top_pct=0.25, sct_partner_pct=0.25)
    p1, p2 = combine_and_estimate(cover, scts, cfg)
    assert p2 is not None and p2.reduction == 2
    assert {pattern(c, 3, 1) for c in p2.inserted} == {"--0|1", "1--|1"}
