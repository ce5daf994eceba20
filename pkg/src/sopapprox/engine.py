"""Search driver: a ledger of partial solutions indexed by error count.

Level i of the ledger holds solutions that charge exactly i erroneous input
combinations.  Each level's two best solutions are applied to the working
cover, extended by one insertion round and one removal round, and reverted.
The single working cover is moved between solution states by applying set
differences, which is equivalent to (but much cheaper than) a full
modify/restore pair at every step.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .config import DEFAULT_CONFIG, EngineConfig
from .cover import Cover, total_literals
from .cube import Cube
from .error_model import exhaustive_error_rate, noe_from_er
from .insertion import cube_insertion
from .minimize import minimize_with_info
from .removal import cube_removal
from .solution import EMPTY_SOLUTION, Solution, solution_sort_key

log = logging.getLogger("sopapprox")


class EngineError(RuntimeError):
    pass


def modify_sop(cover: Cover, s: Solution) -> Cover:
    """Apply a solution in place (remove then insert)."""
    if not s.removed <= cover.cubes:
        raise EngineError("solution removes cubes that are not present")
    if s.inserted & cover.cubes:
        raise EngineError("solution inserts cubes that are already present")
    for c in s.removed:
        cover.remove(c)
    for c in s.inserted:
        cover.insert(c)
    return cover


def restore_sop(cover: Cover, s: Solution) -> Cover:
    """Exact inverse of :func:`modify_sop`."""
    if not s.inserted <= cover.cubes:
        raise EngineError("restore expects the solution's inserted cubes present")
    if s.removed & cover.cubes:
        raise EngineError("restore expects the solution's removed cubes absent")
    for c in s.inserted:
        cover.remove(c)
    for c in s.removed:
        cover.insert(c)
    return cover


def top_solutions(sols, k: int = 2, *, n: int, m: int, count_outputs: bool = True) -> list[Solution]:
    """The k best solutions by reduction, under the global deterministic order."""
    return sorted(sols, key=lambda s: solution_sort_key(s, n, m, count_outputs))[:k]


def _transition(cover: Cover, current: Solution, target: Solution) -> None:
    """Move the working cover from one applied solution to another via diffs."""
    for c in current.inserted - target.inserted:
        cover.remove(c)
    for c in current.removed - target.removed:
        cover.insert(c)
    for c in target.removed - current.removed:
        cover.remove(c)
    for c in target.inserted - current.inserted:
        cover.insert(c)


@dataclass
class ApproxResult:
    cover: Cover
    best: Solution
    noe_threshold: int
    eic_count: int
    error_rate: float
    original_literals: int
    minimized_original_literals: int
    approx_literals: int
    minimizer: str
    used_original_fallback: bool = False
    stats: dict = field(default_factory=dict)


def _dc_from_eics(eics, n: int, m: int) -> Cover | None:
    if not eics:
        return None
    dc = Cover(n, m)
    full = (1 << n) - 1
    all_outs = (1 << m) - 1
    for v in sorted(eics):
        dc.insert(Cube(full, v, all_outs))
    return dc


def approximate(
    original: Cover,
    er=None,
    noe: int | None = None,
    cfg: EngineConfig = DEFAULT_CONFIG,
) -> ApproxResult:
    """Approximate a cover within an error budget and minimize the winner.

    Exactly one of ``er`` (error-rate threshold) and ``noe`` (absolute error
    budget) must be given.  The returned cover is function-equivalent up to
    at most the budgeted number of erroneous input combinations, verified
    with the exhaustive oracle before returning.
    """
    if (er is None) == (noe is None):
        raise ValueError("give exactly one of er and noe")
    if not original.cubes:
        raise EngineError("cannot approximate an empty cover")
    e = noe if noe is not None else noe_from_er(er, original.n)
    if e < 0:
        raise ValueError("error budget must be non-negative")
    n, m = original.n, original.m
    co = cfg.count_outputs
    orig_cov = original.cov_out

    work = original.copy()
    start_state = work.snapshot()
    levels: dict[int, set[Solution]] = {0: {EMPTY_SOLUTION}}
    best = EMPTY_SOLUTION
    best_key = solution_sort_key(best, n, m, co)
    applied = EMPTY_SOLUTION
    stats = {"levels_processed": 0, "solutions_processed": 0,
             "insertion_calls": 0, "removal_calls": 0, "stored_solutions": 0}

    def offer(candidate: Solution) -> None:
        nonlocal best, best_key
        key = solution_sort_key(candidate, n, m, co)
        if key < best_key:
            best, best_key = candidate, key

    debug = log.isEnabledFor(logging.DEBUG)
    for i in range(e + 1):
        sols = levels.pop(i, None)
        if not sols:
            continue
        stats["levels_processed"] += 1
        for s in top_solutions(sols, 2, n=n, m=m, count_outputs=co):
            stats["solutions_processed"] += 1
            _transition(work, applied, s)
            applied = s
            e_call = min(2, e - i)
            if e_call > 0:
                stats["insertion_calls"] += 1
                s1, s2 = cube_insertion(work, e_call, s, cfg, orig_cov)
                for sx in (s1, s2):
                    if sx is None:
                        continue
                    lv = len(sx.eics)
                    if lv > e:
                        continue  # over budget: no ledger level exists, discard
                    if i < lv:
                        bucket = levels.setdefault(lv, set())
                        if sx not in bucket:
                            bucket.add(sx)
                            stats["stored_solutions"] += 1
                    offer(sx)
            stats["removal_calls"] += 1
            step_log: list | None = [] if debug else None
            s3 = cube_removal(work, e - i, s, cfg, orig_cov, step_log=step_log)
            offer(s3)
            if debug:
                log.debug("level %d: insertion red %s/%s, removal red %d (%d steps)",
                          i,
                          s1.reduction if e_call > 0 and s1 else "-",
                          s2.reduction if e_call > 0 and s2 else "-",
                          s3.reduction, len(step_log or ()))
                for entry in step_log or ():
                    log.debug("  removed %(cube)s lits=%(literals)d eics=%(eics)s gain=%(gain).2f", entry)

    _transition(work, applied, EMPTY_SOLUTION)
    if work.snapshot() != start_state:
        raise EngineError("working cover was not restored to its initial state")

    orig_min, _ = minimize_with_info(original, None, cfg)
    orig_min_lits = total_literals(orig_min, co)

    _transition(work, EMPTY_SOLUTION, best)
    dc = _dc_from_eics(best.eics, n, m) if cfg.dc_eic else None
    result, backend = minimize_with_info(work, dc, cfg)
    used_fallback = False
    if total_literals(result, co) > orig_min_lits:
        result, used_fallback = orig_min, True

    eic_count, rate = exhaustive_error_rate(original, result)
    if eic_count > e:
        raise EngineError(
            f"error budget violated: measured {eic_count} EICs against budget {e}"
        )
    return ApproxResult(
        cover=result,
        best=best,
        noe_threshold=e,
        eic_count=eic_count,
        error_rate=rate,
        original_literals=total_literals(original, co),
        minimized_original_literals=orig_min_lits,
        approx_literals=total_literals(result, co),
        minimizer=backend,
        used_original_fallback=used_fallback,
        stats=stats,
    )
