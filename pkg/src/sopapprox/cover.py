"""Mutable multi-output cover with incremental coverage bookkeeping.

A :class:`Cover` stores its cube set together with two maps that the whole
search pipeline relies on:

* ``unique``   -- cube -> set of minterm keys covered by that cube alone
* ``covering`` -- minterm key -> set of cubes covering it

plus two derived structures kept in lockstep for speed:

* ``cov_out``      -- input assignment -> bitmask of covered outputs
* ``empty_unique`` -- cubes whose unique set is currently empty

A minterm key packs (assignment, output index) into one int:
``key = (v << oshift) | o``.
"""

from __future__ import annotations

import logging

from .cube import Cube, cube_literals, out_indices, pattern

log = logging.getLogger("sopapprox")


class CoverError(ValueError):
    pass


class Cover:
    __slots__ = (
        "n", "m", "oshift", "full_mask", "cubes", "unique", "covering",
        "cov_out", "empty_unique", "_assign_cache", "_key_cache",
    )

    def __init__(self, n: int, m: int):
        if n < 1 or m < 1:
            raise CoverError(f"need at least one input and one output, got n={n} m={m}")
        self.n = n
        self.m = m
        self.oshift = m.bit_length()
        self.full_mask = (1 << n) - 1
        self.cubes: set[Cube] = set()
        self.unique: dict[Cube, set[int]] = {}
        self.covering: dict[int, set[Cube]] = {}
        self.cov_out: dict[int, int] = {}
        self.empty_unique: set[Cube] = set()
        self._assign_cache: dict[tuple[int, int], list[int]] = {}
        self._key_cache: dict[Cube, list[int]] = {}

    # -- basic queries ----------------------------------------------------

    def __len__(self) -> int:
        return len(self.cubes)

    def __contains__(self, cube: Cube) -> bool:
        return cube in self.cubes

    def assignments(self, cube: Cube) -> list[int]:
        """Cached list of input assignments matched by the cube."""
        key = (cube.care, cube.value)
        arr = self._assign_cache.get(key)
        if arr is None:
            free = self.full_mask & ~cube.care
            base = cube.value
            arr = []
            sub = free
            while True:
                arr.append(base | sub)
                if not sub:
                    break
                sub = (sub - 1) & free
            self._assign_cache[key] = arr
        return arr

    def output_mask(self, v: int) -> int:
        return self.cov_out.get(v, 0)

    def minterm_keys(self, cube: Cube) -> list[int]:
        """Cached packed (assignment, output) keys the cube covers."""
        keys = self._key_cache.get(cube)
        if keys is None:
            oshift = self.oshift
            outs = out_indices(cube.outs)
            keys = []
            for v in self.assignments(cube):
                base = v << oshift
                for o in outs:
                    keys.append(base | o)
            self._key_cache[cube] = keys
        return keys

    def minterm_key(self, v: int, o: int) -> int:
        return (v << self.oshift) | o

    def split_key(self, key: int) -> tuple[int, int]:
        return key >> self.oshift, key & ((1 << self.oshift) - 1)

    def ordered_cubes(self) -> list[Cube]:
        """Cubes in canonical (pattern) order."""
        n, m = self.n, self.m
        return sorted(self.cubes, key=lambda c: pattern(c, n, m))

    def key(self, cube: Cube) -> str:
        return pattern(cube, self.n, self.m)

    # -- mutation ----------------------------------------------------------

    def insert(self, cube: Cube, shadowed: list[Cube] | None = None) -> None:
        """Add a cube, updating both maps incrementally.

        ``shadowed`` collects cubes whose unique set became empty.
        """
        if cube in self.cubes:
            raise CoverError(f"duplicate cube {pattern(cube, self.n, self.m)}")
        if cube.outs == 0:
            raise CoverError("cube asserts no output")
        if cube.care & ~self.full_mask or cube.outs >> self.m:
            raise CoverError("cube does not fit cover dimensions")
        self.cubes.add(cube)
        covering = self.covering
        cov_out = self.cov_out
        unique = self.unique
        empty_unique = self.empty_unique
        oshift = self.oshift
        outs = out_indices(cube.outs)
        omask = cube.outs
        uniq: set[int] = set()
        for v in self.assignments(cube):
            cov_out[v] = cov_out.get(v, 0) | omask
            base = v << oshift
            for o in outs:
                k = base | o
                s = covering.get(k)
                if s is None:
                    covering[k] = {cube}
                    uniq.add(k)
                else:
                    if len(s) == 1:
                        for d in s:
                            ud = unique[d]
                            ud.discard(k)
                            if not ud:
                                empty_unique.add(d)
                                if shadowed is not None:
                                    shadowed.append(d)
                    s.add(cube)
        unique[cube] = uniq
        if not uniq:
            empty_unique.add(cube)
            if shadowed is not None:
                shadowed.append(cube)

    def remove(self, cube: Cube, newly_unique: list[tuple[Cube, int]] | None = None) -> None:
        """Remove a present cube, updating both maps incrementally.

        ``newly_unique`` collects (cube, minterm key) pairs that became
        uniquely covered by another cube.
        """
        if cube not in self.cubes:
            raise CoverError(f"cube not in cover: {pattern(cube, self.n, self.m)}")
        self.cubes.discard(cube)
        covering = self.covering
        cov_out = self.cov_out
        unique = self.unique
        empty_unique = self.empty_unique
        oshift = self.oshift
        outs = out_indices(cube.outs)
        for v in self.assignments(cube):
            base = v << oshift
            cleared = 0
            for o in outs:
                k = base | o
                s = covering[k]
                s.discard(cube)
                if not s:
                    del covering[k]
                    cleared |= 1 << o
                elif len(s) == 1:
                    for d in s:
                        empty_unique.discard(d)
                        unique[d].add(k)
                        if newly_unique is not None:
                            newly_unique.append((d, k))
            if cleared:
                nm = cov_out[v] & ~cleared
                if nm:
                    cov_out[v] = nm
                else:
                    del cov_out[v]
        del self.unique[cube]
        empty_unique.discard(cube)

    # -- whole-cover operations ---------------------------------------------

    def copy(self) -> "Cover":
        other = Cover(self.n, self.m)
        other.cubes = set(self.cubes)
        other.unique = {c: set(s) for c, s in self.unique.items()}
        other.covering = {k: set(s) for k, s in self.covering.items()}
        other.cov_out = dict(self.cov_out)
        other.empty_unique = set(self.empty_unique)
        other._assign_cache = self._assign_cache  # immutable values, safe to share
        other._key_cache = self._key_cache
        return other

    # -- simulation ops ------------------------------------------------------
    # Same bookkeeping as insert/remove minus the cov_out masks, which no
    # estimate reads.  A balanced sim_insert/sim_remove sequence leaves the
    # cover bit-identical, so search code can toggle candidate cubes cheaply.

    def sim_insert(self, cube: Cube) -> None:
        self.cubes.add(cube)
        covering = self.covering
        unique = self.unique
        empty_unique = self.empty_unique
        uniq: set[int] = set()
        for k in self.minterm_keys(cube):
            s = covering.get(k)
            if s is None:
                covering[k] = {cube}
                uniq.add(k)
            else:
                if len(s) == 1:
                    for d in s:
                        ud = unique[d]
                        ud.discard(k)
                        if not ud:
                            empty_unique.add(d)
                s.add(cube)
        unique[cube] = uniq
        if not uniq:
            empty_unique.add(cube)

    def sim_remove(self, cube: Cube) -> None:
        self.cubes.discard(cube)
        covering = self.covering
        unique = self.unique
        empty_unique = self.empty_unique
        for k in self.minterm_keys(cube):
            s = covering[k]
            s.discard(cube)
            if not s:
                del covering[k]
            elif len(s) == 1:
                for d in s:
                    empty_unique.discard(d)
                    unique[d].add(k)
        del self.unique[cube]
        empty_unique.discard(cube)

    def snapshot(self) -> tuple:
        return (self.n, self.m, frozenset(self.cubes))

    def full_state(self) -> tuple:
        """Everything observable, for bit-identity assertions in tests."""
        return (
            self.n,
            self.m,
            frozenset(self.cubes),
            {c: frozenset(s) for c, s in self.unique.items()},
            {k: frozenset(s) for k, s in self.covering.items()},
            dict(self.cov_out),
            frozenset(self.empty_unique),
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Cover):
            return NotImplemented
        return self.snapshot() == other.snapshot()

    def __hash__(self):  # mutable container
        raise TypeError("Cover is not hashable")


def build_cover(cubes, n: int, m: int) -> Cover:
    """Build a cover from an iterable of cubes; duplicates are dropped with a warning."""
    cover = Cover(n, m)
    dropped = 0
    for cube in cubes:
        if cube in cover.cubes:
            dropped += 1
            continue
        cover.insert(cube)
    if dropped:
        log.warning("dropped %d duplicate cube(s) while building cover", dropped)
    return cover


def insert_cube(cover: Cover, cube: Cube) -> Cover:
    cover.insert(cube)
    return cover


def remove_cube(cover: Cover, cube: Cube) -> Cover:
    cover.remove(cube)
    return cover


def total_literals(cover: Cover, count_outputs: bool = True) -> int:
    return sum(cube_literals(c, count_outputs) for c in cover.cubes)
