"""Partial approximation steps: cubes to insert/remove plus their error charge."""

from __future__ import annotations

from typing import NamedTuple

from .cube import Cube, cube_literals, input_str, pattern


class Solution(NamedTuple):
    inserted: frozenset[Cube]
    removed: frozenset[Cube]
    eics: frozenset[int]
    reduction: int


EMPTY_SOLUTION = Solution(frozenset(), frozenset(), frozenset(), 0)


class SolutionError(ValueError):
    pass


def _lits(cubes, count_outputs: bool) -> int:
    return sum(cube_literals(c, count_outputs) for c in cubes)


def make_solution(inserted, removed, eics, count_outputs: bool = True) -> Solution:
    ins = frozenset(inserted)
    rem = frozenset(removed)
    return Solution(ins, rem, frozenset(eics), _lits(rem, count_outputs) - _lits(ins, count_outputs))


def update_solution(new_part: Solution, base: Solution, count_outputs: bool = True) -> Solution:
    """Merge a new partial step into an accumulated solution.

    Inserts that are later removed (and vice versa) cancel out; the literal
    reduction is recomputed from the merged lists.  Overlapping EIC sets
    signal a bookkeeping bug upstream.
    """
    if new_part.eics & base.eics:
        raise SolutionError(
            f"EIC overlap while merging solutions: {sorted(new_part.eics & base.eics)}"
        )
    ins = set(base.inserted) | set(new_part.inserted)
    rem = set(base.removed) | set(new_part.removed)
    cancelled = ins & rem
    if cancelled:
        ins -= cancelled
        rem -= cancelled
    return make_solution(ins, rem, base.eics | new_part.eics, count_outputs)


def solution_sort_key(s: Solution, n: int, m: int, count_outputs: bool = True):
    """Total deterministic order: larger reduction first, then fewer EICs,
    fewer inserted literals, and finally lexicographic cube patterns."""
    return (
        -s.reduction,
        len(s.eics),
        _lits(s.inserted, count_outputs),
        tuple(sorted(pattern(c, n, m) for c in s.inserted)),
        tuple(sorted(pattern(c, n, m) for c in s.removed)),
        tuple(sorted(input_str(v, n) for v in s.eics)),
    )
