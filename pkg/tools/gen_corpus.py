#!/usr/bin/env python3
"""Generate the deterministic stand-in benchmark corpus under benchmarks/.

The original two-level benchmark circuits are not redistributable from this
environment, so the harness ships stand-ins that keep each circuit's input
and output counts and roughly its published literal scale.  Three circuits
with well-known arithmetic definitions (rd73/rd84 = input popcount, sqrt8 =
integer square root) are generated from their truth tables and minimized; the
rest are seeded random covers pruned to an irredundant form.  Drop the
original PLA files into benchmarks/ to reproduce published numbers exactly.
"""

from __future__ import annotations

import sys
import zlib
from pathlib import Path
from random import Random

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from sopapprox.cover import build_cover, total_literals
from sopapprox.cube import Cube
from sopapprox.minimize import expand_pass, make_irredundant
from sopapprox.pla import PlaDocument, save_pla

OUT_DIR = Path(__file__).resolve().parent.parent / "benchmarks"


# -- exact-function circuits -------------------------------------------------

def popcount_fn(v: int) -> int:
    return v.bit_count()


def isqrt_fn(v: int) -> int:
    import math

    return math.isqrt(v)


def _qm_primes(n: int, on: frozenset[int]) -> list[tuple[int, int]]:
    full = (1 << n) - 1
    level = {(full, v) for v in on}
    primes: set[tuple[int, int]] = set()
    while level:
        merged: set[tuple[int, int]] = set()
        nxt: set[tuple[int, int]] = set()
        for care, value in level:
            pm = care
            while pm:
                low = pm & -pm
                pm ^= low
                partner = (care, value ^ low)
                if partner in level:
                    merged.add((care, value))
                    merged.add(partner)
                    nxt.add((care ^ low, value & ~low))
        primes.update(level - merged)
        level = nxt
    return sorted(primes)


def _greedy_cover(n: int, on: frozenset[int]) -> list[tuple[int, int]]:
    """Literal-weighted greedy prime cover of a single output."""
    primes = _qm_primes(n, on)
    cover_of = {p: frozenset(v for v in on if (v & p[0]) == p[1]) for p in primes}
    uncovered = set(on)
    chosen = []
    while uncovered:
        best = min(
            primes,
            key=lambda p: (
                -len(cover_of[p] & uncovered) / (p[0].bit_count() + 1),
                p[0].bit_count(),
                p,
            ),
        )
        gained = cover_of[best] & uncovered
        if not gained:
            break
        chosen.append(best)
        uncovered -= gained
    return chosen


def table_circuit(n: int, m: int, fn) -> list[Cube]:
    rows: dict[tuple[int, int], int] = {}
    for o in range(m):
        on = frozenset(v for v in range(1 << n) if (fn(v) >> o) & 1)
        if not on:
            continue
        for care, value in _greedy_cover(n, on):
            rows[(care, value)] = rows.get((care, value), 0) | (1 << o)
    return [Cube(care, value, outs) for (care, value), outs in sorted(rows.items())]


# -- seeded random covers ----------------------------------------------------

def random_circuit(rng: Random, n: int, m: int, cubes: int,
                   care_lo: int, care_hi: int, extra_out: float) -> list[Cube]:
    out: list[Cube] = []
    seen: set[tuple[int, int]] = set()
    attempts = 0
    while len(out) < cubes and attempts < cubes * 30:
        attempts += 1
        k = rng.randint(care_lo, care_hi)
        positions = rng.sample(range(n), k)
        care = 0
        for p in positions:
            care |= 1 << p
        value = rng.getrandbits(n) & care
        if (care, value) in seen:
            continue
        seen.add((care, value))
        outs = 1 << rng.randrange(m)
        while m > 1 and rng.random() < extra_out:
            outs |= 1 << rng.randrange(m)
        out.append(Cube(care, value, outs))
    return out


CIRCUITS: dict[str, dict] = {
    # published original literal counts are noted for scale calibration
    "con1":    dict(n=7, m=2, kind="random", cubes=9, care=(2, 3), extra=0.0),      # 32
    "rd73":    dict(n=7, m=3, kind="table", fn=popcount_fn),                        # 903
    "inc":     dict(n=7, m=9, kind="random", cubes=30, care=(4, 7), extra=0.1),     # 198
    "5xp1":    dict(n=7, m=10, kind="random", cubes=62, care=(4, 6), extra=0.3),    # 347
    "sqrt8":   dict(n=8, m=4, kind="table", fn=isqrt_fn),                           # 188
    "rd84":    dict(n=8, m=4, kind="table", fn=popcount_fn),                        # 2070
    "misex1":  dict(n=8, m=7, kind="random", cubes=18, care=(3, 5), extra=0.3),     # 96
    "clip":    dict(n=9, m=5, kind="random", cubes=102, care=(5, 8), extra=0.5),     # 793
    "apex4":   dict(n=9, m=19, kind="random", cubes=440, care=(8, 9), extra=0.8),   # 5419
    "sao2":    dict(n=10, m=4, kind="random", cubes=58, care=(6, 9), extra=0.1),    # 496
    "ex1010":  dict(n=10, m=10, kind="random", cubes=250, care=(9, 10), extra=0.4), # 2718
    "alu4":    dict(n=14, m=8, kind="random", cubes=500, care=(7, 11), extra=0.2),  # 5087
    "misex3":  dict(n=14, m=14, kind="random", cubes=650, care=(8, 12), extra=0.6), # 7784
    "table3":  dict(n=14, m=14, kind="random", cubes=175, care=(10, 13), extra=0.7),# 2644
    "misex3c": dict(n=14, m=14, kind="random", cubes=120, care=(9, 12), extra=0.7), # 1561
    "b12":     dict(n=15, m=9, kind="random", cubes=42, care=(3, 5), extra=0.1),    # 207
    "t481":    dict(n=16, m=1, kind="random", cubes=480, care=(9, 11), extra=0.0),  # 5233
    "table5":  dict(n=17, m=15, kind="random", cubes=160, care=(12, 14), extra=0.55),# 2501
}


def generate(name: str, spec: dict) -> tuple[PlaDocument, int]:
    n, m = spec["n"], spec["m"]
    if spec["kind"] == "table":
        cubes = table_circuit(n, m, spec["fn"])
        cover = build_cover(cubes, n, m)
        cover = expand_pass(cover)
    else:
        rng = Random(zlib.crc32(name.encode()) & 0xFFFFFFFF)
        cubes = random_circuit(rng, n, m, spec["cubes"], *spec["care"], spec["extra"])
        cover = make_irredundant(build_cover(cubes, n, m))
    doc = PlaDocument(num_inputs=n, num_outputs=m, cubes=cover.ordered_cubes(), name=name)
    return doc, total_literals(cover)


def main() -> None:
    OUT_DIR.mkdir(parents=True, exist_ok=True)
    print(f"{'circuit':10} {'n':>3} {'m':>3} {'cubes':>6} {'literals':>9}")
    for name, spec in CIRCUITS.items():
        doc, lits = generate(name, spec)
        save_pla(doc, OUT_DIR / f"{name}.pla")
        print(f"{name:10} {doc.num_inputs:>3} {doc.num_outputs:>3} "
              f"{len(doc.cubes):>6} {lits:>9}")


if __name__ == "__main__":
    main()
