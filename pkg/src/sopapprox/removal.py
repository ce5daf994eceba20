"""Greedy cube removal: spend the remaining error budget on the cubes with
the best literals-per-error ratio.

Removing a cube charges one EIC per input assignment that only this cube
covered (and that was not already charged).  Fully shadowed cubes charge
nothing and are removable even with a zero budget.  The cover is restored
before returning; the outcome is reported as an accumulated solution.
"""

from __future__ import annotations

import heapq

from .config import DEFAULT_CONFIG, EngineConfig
from .cover import Cover, CoverError
from .cube import Cube, cube_literals, input_str
from .solution import Solution, make_solution

GAIN_FLOOR = 0.01  # divisor floor so zero-EIC cubes get a huge finite gain


def get_cube_eic(cube: Cube, cover: Cover, new_eic) -> frozenset[int]:
    """Assignments newly charged if the cube were removed now."""
    if cube not in cover.cubes:
        raise CoverError(f"cube not in cover: {cover.key(cube)}")
    oshift = cover.oshift
    return frozenset({k >> oshift for k in cover.unique[cube]} - set(new_eic))


def removal_gain(cube: Cube, eics, count_outputs: bool = True) -> float:
    return cube_literals(cube, count_outputs) / max(GAIN_FLOOR, len(eics))


def update_eics(new_eic, best_eic, cover: Cover, removed_cube: Cube, orig_cov: dict):
    """Merge freshly charged assignments, dropping any the removal corrected.

    An assignment is corrected when the cover's outputs there match the
    original again (a removed cube was itself an earlier insertion).  The
    cover must already reflect the removal.  Returns (merged, corrected).
    """
    if set(new_eic) & set(best_eic):
        raise ValueError("EIC sets to merge must be disjoint")
    merged = set(new_eic) | set(best_eic)
    corrected = set()
    cov_get = cover.cov_out.get
    orig_get = orig_cov.get
    for v in cover.assignments(removed_cube):
        if v in merged and cov_get(v, 0) == orig_get(v, 0):
            corrected.add(v)
    return merged - corrected, corrected


def cube_removal(
    cover: Cover,
    budget: int,
    base: Solution,
    cfg: EngineConfig = DEFAULT_CONFIG,
    orig_cov: dict | None = None,
    step_log: list | None = None,
) -> Solution:
    """Remove cubes greedily until the budget is spent and no free cube remains.

    The cover must already reflect ``base``; it is bit-identical on return.
    Corrected assignments (outputs matching ``orig_cov`` again) leave the
    charge set; the spent budget is never refunded.  ``orig_cov`` defaults to
    a snapshot of the cover's current output masks, which is only the true
    baseline when ``base`` is the empty solution.
    """
    if orig_cov is None:
        orig_cov = dict(cover.cov_out)
    count_outputs = cfg.count_outputs
    oshift = cover.oshift
    m = cover.m
    covering = cover.covering
    new_eic: set[int] = set(base.eics)

    # Candidates live in a lazy max-heap ordered by (gain, cube order).  The
    # budget only shrinks and a cube's entry is refreshed whenever its EIC
    # set changes, so popped entries that are stale or over budget can be
    # dropped for good.  Cubes with far more uniquely covered minterms than
    # the budget could ever absorb are left out entirely; their EIC sets can
    # only shrink through charge events that also touch them, at which point
    # they are materialized with the then-current charge set.
    eics_of: dict[Cube, set[int]] = {}
    stamp: dict[Cube, int] = {}
    heap: list[tuple[float, str, int, Cube]] = []
    hopeless = m * (budget + len(new_eic))
    unique_map = cover.unique
    for c in cover.cubes:
        uniq = unique_map[c]
        if len(uniq) > hopeless:
            continue
        es = {k >> oshift for k in uniq} - new_eic
        eics_of[c] = es
        stamp[c] = 0
        gain = cube_literals(c, count_outputs) / max(GAIN_FLOOR, len(es))
        heap.append((-gain, cover.key(c), 0, c))
    heapq.heapify(heap)

    def refresh(d: Cube) -> None:
        stamp[d] += 1
        gain = cube_literals(d, count_outputs) / max(GAIN_FLOOR, len(eics_of[d]))
        heapq.heappush(heap, (-gain, cover.key(d), stamp[d], d))

    def materialize(d: Cube) -> set[int] | None:
        """EIC set for a charge-shrink event on a cube skipped at init."""
        es = eics_of.get(d)
        if es is None:
            es = {k >> oshift for k in unique_map[d]} - new_eic
            eics_of[d] = es
            stamp[d] = -1
            refresh(d)  # it was invisible to the heap until now
        return es

    def owners(v: int):
        """Cubes holding a uniquely covered minterm at input v."""
        base_key = v << oshift
        found = []
        for o in range(m):
            s = covering.get(base_key | o)
            if s is not None and len(s) == 1:
                for d in s:
                    found.append(d)
        return found

    removed: list[Cube] = []
    error = budget
    while heap:
        neg_gain, _key, st, best = heapq.heappop(heap)
        if best not in eics_of or stamp[best] != st:
            continue  # removed or refreshed since this entry was pushed
        if len(eics_of[best]) > error:
            continue  # over budget now and the budget never grows back
        best_eic = frozenset(eics_of[best])
        newly: list[tuple[Cube, int]] = []
        cover.remove(best, newly_unique=newly)
        removed.append(best)
        del eics_of[best], stamp[best]
        error -= len(best_eic)
        if step_log is not None:
            step_log.append({
                "cube": cover.key(best),
                "literals": cube_literals(best, count_outputs),
                "eics": sorted(input_str(v, cover.n) for v in best_eic),
                "gain": -neg_gain,
            })
        # survivors that now own one of the removed cube's minterms
        touched: set[Cube] = set()
        for d, k in newly:
            es = eics_of.get(d)
            if es is None:
                continue  # skipped cube: growth keeps it hopeless
            v = k >> oshift
            if v not in new_eic:
                es.add(v)
                touched.add(d)
        # charge the new EICs; owners of minterms there stop counting them
        for v in best_eic:
            new_eic.add(v)
            for d in owners(v):
                es = materialize(d)
                if es is not None and v in es:
                    es.discard(v)
                    touched.add(d)
        # corrections: outputs at an assignment may match the original again
        cov_get = cover.cov_out.get
        orig_get = orig_cov.get
        for v in cover.assignments(best):
            if v in new_eic and cov_get(v, 0) == orig_get(v, 0):
                new_eic.discard(v)
                for d in owners(v):
                    es = eics_of.get(d)
                    if es is not None:
                        es.add(v)
                        touched.add(d)
        for d in touched:
            refresh(d)

    for c in reversed(removed):
        cover.insert(c)

    if not removed:
        return base
    removed_set = frozenset(removed)
    inserted = base.inserted - removed_set
    removed_total = base.removed | (removed_set - base.inserted)
    return make_solution(inserted, removed_total, new_eic, count_outputs)
