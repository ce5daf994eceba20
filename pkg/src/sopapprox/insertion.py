"""Cube-insertion search.

Every expansion of a cover cube is a candidate insertion.  Expansions that
would flip one or two not-yet-charged input assignments are grouped into
trees keyed by that assignment set (the root); the leaves are the candidate
cubes, each remembering the cover cube it came from.  Estimating a tree
simulates inserting a subset of its leaves and removing every cube that
becomes fully shadowed, so the reported literal reduction is exact for the
subset chosen.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

from .config import DEFAULT_CONFIG, EngineConfig
from .cover import Cover
from .cube import Cube, cube_literals, input_str, out_indices
from .solution import Solution, make_solution, update_solution


class Leaf(NamedTuple):
    cube: Cube
    origin: Cube
    eics: frozenset[int]


class Estimate(NamedTuple):
    reduction: int
    inserted: frozenset[Cube]
    removed: tuple[Cube, ...]
    eics: frozenset[int]


@dataclass
class Sct:
    root: frozenset[int]
    leaves: list[Leaf] = field(default_factory=list)
    best: Estimate | None = None
    meta: tuple | None = None  # lazy (agg_hits, min_leaf_literals, items) for pairing


def _root_key(root: frozenset[int], n: int) -> tuple[str, ...]:
    return tuple(sorted(input_str(v, n) for v in root))


def generate_scts(cover: Cover, e: int, prior: frozenset[int] | set[int]) -> list[Sct]:
    """Build one tree per distinct EIC set (size 1..e) over all cube expansions.

    Expansions flipping no new assignment are error-free; they are left for
    the final minimizer rather than turned into trees.
    """
    by_root: dict[frozenset[int], Sct] = {}
    cov_get = cover.cov_out.get
    for c in cover.ordered_cubes():
        care, value, outs = c
        if not care:
            continue
        base = cover.assignments(c)
        pm = care
        while pm:
            low = pm & -pm
            pm ^= low
            eics: list[int] = []
            for v0 in base:
                v = v0 ^ low
                if (cov_get(v, 0) & outs) != outs and v not in prior:
                    eics.append(v)
                    if len(eics) > e:
                        break
            if not eics or len(eics) > e:
                continue
            root = frozenset(eics)
            newcare = care ^ low
            leaf = Leaf(Cube(newcare, value & newcare, outs), c, root)
            sct = by_root.get(root)
            if sct is None:
                by_root[root] = Sct(root, [leaf])
            else:
                sct.leaves.append(leaf)
    n = cover.n
    return sorted(by_root.values(), key=lambda s: (len(s.root), _root_key(s.root, n)))


def augment(scts: list[Sct]) -> list[Sct]:
    """Copy each single-EIC tree's leaves into every two-EIC tree whose root contains it."""
    ones: dict[int, Sct] = {}
    for sct in scts:
        if len(sct.root) == 1:
            (v,) = sct.root
            ones[v] = sct
    for sct in scts:
        if len(sct.root) == 2:
            for v in sorted(sct.root):
                one = ones.get(v)
                if one is not None:
                    sct.leaves.extend(one.leaves)
    return scts


def _drain_shadowed(cover: Cover, exclude: set[Cube], count_outputs: bool):
    """Remove fully shadowed cubes (highest literal count first) until none remain.

    Removing a cube never shadows another one, so a single sorted sweep over
    the current shadowed set is exact; entries that lose their shadowed
    status along the way are skipped.
    """
    eu = cover.empty_unique
    if not eu:
        return [], 0
    cand = [d for d in eu if d not in exclude]
    if not cand:
        return [], 0
    if len(cand) > 1:
        if count_outputs:
            cand.sort(key=lambda c: (-c.care.bit_count() - c.outs.bit_count(), cover.key(c)))
        else:
            cand.sort(key=lambda c: (-c.care.bit_count(), cover.key(c)))
    removed: list[Cube] = []
    total = 0
    for d in cand:
        if d in eu:
            cover.sim_remove(d)
            removed.append(d)
            total += cube_literals(d, count_outputs)
    return removed, total


def _distinct_leaf_cubes(sct: Sct, count_outputs: bool):
    """Group leaves by cube; keep the best origin literal count per cube."""
    groups: dict[Cube, tuple[frozenset[int], int]] = {}
    for leaf in sct.leaves:
        ol = cube_literals(leaf.origin, count_outputs)
        prev = groups.get(leaf.cube)
        if prev is None or ol > prev[1]:
            groups[leaf.cube] = (leaf.eics, ol)
    return [(cube, eics, ol) for cube, (eics, ol) in groups.items()]


def _search_exhaustive(cover: Cover, items, root, require_full: bool, count_outputs: bool):
    items = sorted(items, key=lambda it: cover.key(it[0]))
    k = len(items)
    lits = [cube_literals(it[0], count_outputs) for it in items]
    root_list = sorted(root)
    # per-root-member presence counters keep the union test O(1) per toggle
    member_of = [tuple(root_list.index(v) for v in it[1]) for it in items]
    counts = [0] * len(root_list)
    best = None
    best_primary = None
    best_patterns = None
    present: set[Cube] = set()
    ins_lits = 0
    prev = 0
    for g in range(1, 1 << k):
        gray = g ^ (g >> 1)
        bit = gray ^ prev
        prev = gray
        t = bit.bit_length() - 1
        cube_t = items[t][0]
        if gray & bit:
            cover.sim_insert(cube_t)
            present.add(cube_t)
            ins_lits += lits[t]
            for idx in member_of[t]:
                counts[idx] += 1
        else:
            cover.sim_remove(cube_t)
            present.discard(cube_t)
            ins_lits -= lits[t]
            for idx in member_of[t]:
                counts[idx] -= 1
        if require_full:
            if not all(counts):
                continue
            union = root
        else:
            union = root
        removed, rem_lits = _drain_shadowed(cover, present, count_outputs)
        red = rem_lits - ins_lits
        primary = (-red, len(union), ins_lits)
        if best_primary is None or primary <= best_primary:
            patterns = tuple(sorted(cover.key(c) for c in present))
            if best_primary is None or primary < best_primary or patterns < best_patterns:
                best_primary = primary
                best_patterns = patterns
                best = Estimate(red, frozenset(present), tuple(removed), union)
        for d in reversed(removed):
            cover.sim_insert(d)
    for i in range(k):
        if (prev >> i) & 1:
            cover.sim_remove(items[i][0])
    return best


def _search_greedy(cover: Cover, items, root, require_full: bool, count_outputs: bool):
    """Accept leaves in decreasing removal-potential order when they pay for themselves.

    Accept decisions run against read-only hit maps of the untouched cover (a
    leaf pays when it completes the unique-minterm coverage of enough not yet
    counted cubes).  The accepted subset is then simulated once for an exact
    removal set and literal delta.
    """
    order = sorted(
        (cube_literals(cube, count_outputs) - pot, cover.key(cube), cube, eics)
        for cube, eics, pot in items
    )
    covering = cover.covering
    unique = cover.unique
    accepted: list[tuple[Cube, frozenset[int]]] = []
    covered: dict[Cube, set[int]] = {}
    counted: set[Cube] = set()
    for _cost, _key, cube, eics in order:
        hits: dict[Cube, list[int]] = {}
        for k in cover.minterm_keys(cube):
            s = covering.get(k)
            if s is not None and len(s) == 1:
                for d in s:
                    if d not in counted:
                        hits.setdefault(d, []).append(k)
        gain = 0
        completes: list[Cube] = []
        for d, ks in hits.items():
            have = covered.get(d)
            total = len(set(ks) | have) if have else len(set(ks))
            if total == len(unique[d]):
                gain += cube_literals(d, count_outputs)
                completes.append(d)
        if gain > cube_literals(cube, count_outputs):
            accepted.append((cube, eics))
            counted.update(completes)
            for d, ks in hits.items():
                covered.setdefault(d, set()).update(ks)
    if not accepted:
        return None
    union = frozenset().union(*(eics for _, eics in accepted))
    if require_full and union != root:
        return None
    present = {cube for cube, _ in accepted}
    ins_lits = sum(cube_literals(c, count_outputs) for c in present)
    for c in present:
        cover.sim_insert(c)
    removed, rem_lits = _drain_shadowed(cover, present, count_outputs)
    est = Estimate(rem_lits - ins_lits, frozenset(present), tuple(removed), union)
    for d in reversed(removed):
        cover.sim_insert(d)
    for c in present:
        cover.sim_remove(c)
    return est


def estimate_reduction(cover: Cover, sct: Sct, cfg: EngineConfig = DEFAULT_CONFIG) -> int:
    """Exact literal reduction of the tree's best leaf subset; fills ``sct.best``.

    The cover is mutated during the simulation and restored before returning.
    """
    items = _distinct_leaf_cubes(sct, cfg.count_outputs)
    require_full = len(sct.root) == 2
    if len(items) <= cfg.exhaustive_leaf_limit:
        best = _search_exhaustive(cover, items, sct.root, require_full, cfg.count_outputs)
    else:
        best = _search_greedy(cover, items, sct.root, require_full, cfg.count_outputs)
    sct.best = best
    return best.reduction if best is not None else 0


def _estimate_to_part(est: Estimate, count_outputs: bool) -> Solution:
    return make_solution(est.inserted, est.removed, est.eics, count_outputs)


def _sct_meta(cover: Cover, sct: Sct, count_outputs: bool):
    """Per-tree data for pair combination, cached on the tree.

    ``agg_hits`` maps every cover cube to the uniquely covered minterm keys
    any leaf of this tree would take over (for the pair upper bound);
    ``items`` carries per-leaf hit maps in greedy acceptance order.
    """
    if sct.meta is not None:
        return sct.meta
    agg_hits: dict[Cube, set[int]] = {}
    min_lits = 0
    covering = cover.covering
    items = []
    for cube, eics, pot in _distinct_leaf_cubes(sct, count_outputs):
        lits = cube_literals(cube, count_outputs)
        if not min_lits or lits < min_lits:
            min_lits = lits
        leaf_hits: dict[Cube, frozenset[int]] = {}
        grouped: dict[Cube, list[int]] = {}
        for k in cover.minterm_keys(cube):
            s = covering.get(k)
            if s is not None and len(s) == 1:
                for d in s:
                    grouped.setdefault(d, []).append(k)
        for d, ks in grouped.items():
            fs = frozenset(ks)
            leaf_hits[d] = fs
            agg = agg_hits.get(d)
            if agg is None:
                agg_hits[d] = set(fs)
            else:
                agg.update(fs)
        items.append((lits - pot, cover.key(cube), cube, eics, leaf_hits, lits))
    items.sort(key=lambda it: it[:2])
    sct.meta = (agg_hits, min_lits, items)
    return sct.meta


def _estimate_pair(cover: Cover, meta_a, meta_b, root, count_outputs: bool,
                   const_free: int = 0, need_above: int | None = None):
    """Greedy pair estimate from precomputed leaf hit maps.

    Acceptance decisions read the untouched cover's hit maps; the accepted
    subset is then simulated once so the returned reduction and removal set
    are exact.  The accept phase's optimistic reduction (which ignores
    shadow cascades) bounds the exact one from above, so a pair that cannot
    beat ``need_above`` skips the simulation.
    """
    items = sorted(meta_a[2] + meta_b[2], key=lambda it: it[:2])
    unique = cover.unique
    covered: dict[Cube, set[int]] = {}
    counted: set[Cube] = set()
    accepted: list[tuple[Cube, frozenset[int]]] = []
    ins_lits = 0
    opt_gain = 0
    for _cost, _key, cube, eics, leaf_hits, lits in items:
        gain = 0
        completes: list[Cube] = []
        for d, ks in leaf_hits.items():
            if d in counted:
                continue
            have = covered.get(d)
            total = len(ks | have) if have else len(ks)
            if total == len(unique[d]):
                gain += cube_literals(d, count_outputs)
                completes.append(d)
        if gain > lits:
            accepted.append((cube, eics))
            counted.update(completes)
            ins_lits += lits
            opt_gain += gain
            for d, ks in leaf_hits.items():
                have = covered.get(d)
                if have is None:
                    covered[d] = set(ks)
                else:
                    have.update(ks)
    if not accepted:
        return None
    union = frozenset().union(*(eics for _, eics in accepted))
    if union != root:
        return None
    if need_above is not None and opt_gain + const_free - ins_lits <= need_above:
        return None
    present = {cube for cube, _ in accepted}
    for c in present:
        cover.sim_insert(c)
    removed, rem_lits = _drain_shadowed(cover, present, count_outputs)
    est = Estimate(rem_lits - ins_lits, frozenset(present), tuple(removed), union)
    for d in reversed(removed):
        cover.sim_insert(d)
    for c in present:
        cover.sim_remove(c)
    return est


def _pair_upper_bound(cover: Cover, meta_a, meta_b, const_free: int, count_outputs: bool) -> int:
    """Reduction no pair subset can exceed: every already-shadowed cube plus
    every cube whose unique minterms the two leaf sets jointly cover, minus
    the cheapest one leaf per side."""
    hits_a, min_a, _items_a = meta_a
    hits_b, min_b, _items_b = meta_b
    unique = cover.unique
    ub = const_free - min_a - min_b
    for d, ka in hits_a.items():
        kb = hits_b.get(d)
        covered = len(ka | kb) if kb else len(ka)
        if covered == len(unique[d]):
            ub += cube_literals(d, count_outputs)
    for d, kb in hits_b.items():
        if d not in hits_a and len(kb) == len(unique[d]):
            ub += cube_literals(d, count_outputs)
    return ub


def combine_and_estimate(
    cover: Cover, scts: list[Sct], cfg: EngineConfig = DEFAULT_CONFIG, e: int = 2
) -> tuple[Solution | None, Solution | None]:
    """Estimate every tree, combine single-EIC trees pairwise under the
    percentile cut-offs, and return the best one-error and two-error steps.

    Pairs are considered before standalone two-EIC trees; the first candidate
    found at a given reduction wins, which keeps results deterministic.  With
    ``e`` below 2 no two-error step is formed at all.
    """
    for sct in scts:
        estimate_reduction(cover, sct, cfg)
    n = cover.n
    neg_inf = -(10 ** 9)

    def rank_key(s: Sct):
        red = s.best.reduction if s.best is not None else neg_inf
        return (-red, _root_key(s.root, n))

    ones = sorted((s for s in scts if len(s.root) == 1), key=rank_key)
    twos = sorted((s for s in scts if len(s.root) == 2), key=rank_key)

    best1: Estimate | None = None
    for s in ones:
        if s.best is not None and (best1 is None or s.best.reduction > best1.reduction):
            best1 = s.best

    best2: Estimate | None = None
    k1 = len(ones)
    if e >= 2 and k1 >= 2:
        na = min(k1, math.ceil(cfg.sct_top_pct * k1))
        nb = min(k1, math.ceil(cfg.sct_partner_pct * k1))
        const_free = sum(cube_literals(d, cfg.count_outputs) for d in cover.empty_unique)
        # a pair only matters if it reaches the best standalone two-error
        # tree (ties go to pairs), so that estimate already bounds the search
        max_two = max((s.best.reduction for s in twos if s.best is not None), default=None)
        floor_red = None if max_two is None else max_two - 1
        for i in range(na):
            meta_a = _sct_meta(cover, ones[i], cfg.count_outputs)
            for j in range(i + 1, nb):
                meta_b = _sct_meta(cover, ones[j], cfg.count_outputs)
                need = best2.reduction if best2 is not None else None
                if floor_red is not None and (need is None or floor_red > need):
                    need = floor_red
                if need is not None:
                    ub = _pair_upper_bound(cover, meta_a, meta_b, const_free, cfg.count_outputs)
                    if ub <= need:
                        continue
                est = _estimate_pair(cover, meta_a, meta_b,
                                     ones[i].root | ones[j].root, cfg.count_outputs,
                                     const_free, need)
                if est is not None and (best2 is None or est.reduction > best2.reduction):
                    best2 = est
    for s in twos:
        if s.best is not None and (best2 is None or s.best.reduction > best2.reduction):
            best2 = s.best

    p1 = _estimate_to_part(best1, cfg.count_outputs) if best1 is not None else None
    p2 = _estimate_to_part(best2, cfg.count_outputs) if best2 is not None else None
    return p1, p2


def _corrected_eics(part: Solution, prior: frozenset[int], cover: Cover, orig_cov: dict) -> set[int]:
    """Previously charged assignments whose outputs the new step restores.

    Removing a cube that earlier insertions added (or re-covering a lost
    minterm) can silently fix an old error; those assignments must leave the
    charge set so the solution's EIC count stays exact.
    """
    cand: set[int] = set()
    for c in list(part.inserted) + list(part.removed):
        arr = cover.assignments(c)
        if len(arr) < len(prior):
            cand.update(v for v in arr if v in prior)
        else:
            care, value = c.care, c.value
            cand.update(v for v in prior if (v & care) == value)
    if not cand:
        return cand
    corrected = set()
    removed = part.removed
    covering = cover.covering
    oshift = cover.oshift
    for v in cand:
        mask = cover.cov_out.get(v, 0)
        for d in removed:
            if (v & d.care) == d.value:
                base = v << oshift
                for o in out_indices(d.outs):
                    s = covering.get(base | o)
                    if s is not None and s.issubset(removed):
                        mask &= ~(1 << o)
        for x in part.inserted:
            if (v & x.care) == x.value:
                mask |= x.outs
        if mask == orig_cov.get(v, 0):
            corrected.add(v)
    return corrected


def cube_insertion(
    cover: Cover,
    e: int,
    base: Solution,
    cfg: EngineConfig = DEFAULT_CONFIG,
    orig_cov: dict | None = None,
) -> tuple[Solution | None, Solution | None]:
    """One insertion round on a cover that already reflects ``base``.

    Returns the accumulated one-error and two-error solutions (either may be
    None when no tree exists).
    """
    scts = generate_scts(cover, e, base.eics)
    augment(scts)
    p1, p2 = combine_and_estimate(cover, scts, cfg, e)
    out = []
    for part in (p1, p2):
        if part is None:
            out.append(None)
            continue
        merged = update_solution(part, base, cfg.count_outputs)
        if base.eics and orig_cov is not None:
            corrected = _corrected_eics(part, base.eics, cover, orig_cov)
            if corrected:
                merged = merged._replace(eics=merged.eics - frozenset(corrected))
        out.append(merged)
    return out[0], out[1]
