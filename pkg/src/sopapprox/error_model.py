"""Error-rate accounting: erroneous input combinations and the exhaustive oracle.

An erroneous input combination (EIC) is an input assignment where the
approximate cover's output vector differs from the original's.  Two wrong
outputs at one assignment still count once, so EIC sets hold input
assignments only.  The error rate is ``|EICs| / 2**n``.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

from .cover import Cover, CoverError
from .cube import Cube

EXHAUSTIVE_LIMIT = 24  # beyond this many inputs use sampled_error_rate


def noe_from_er(er, n: int) -> int:
    """Error budget for a rate threshold: ``floor(er * 2**n)``.

    Accepts float, Fraction or decimal string; strings and Fractions are
    evaluated exactly so thresholds like 0.01 never round up.
    """
    frac = Fraction(er) if not isinstance(er, Fraction) else er
    if frac < 0 or frac > 1:
        raise ValueError(f"error rate {er!r} outside [0, 1]")
    return int((frac * (1 << n)))  # int() of a Fraction truncates = floor for >= 0


def _check_dims(original: Cover, approx: Cover) -> None:
    if original.n != approx.n or original.m != approx.m:
        raise CoverError(
            f"dimension mismatch: {original.n}x{original.m} vs {approx.n}x{approx.m}"
        )


def exhaustive_error_rate(original: Cover, approx: Cover) -> tuple[int, float]:
    """Exact (eic_count, error_rate) by comparing output vectors everywhere.

    Only assignments covered by at least one side can differ, so this walks
    the two coverage maps instead of all 2**n assignments.
    """
    _check_dims(original, approx)
    if original.n > EXHAUSTIVE_LIMIT:
        raise CoverError(f"n={original.n} too large for the exhaustive oracle")
    ca = original.cov_out
    cb = approx.cov_out
    diff = 0
    cb_get = cb.get
    for v, mask in ca.items():
        if cb_get(v, 0) != mask:
            diff += 1
    ca_has = ca.__contains__
    for v in cb:
        if not ca_has(v):
            diff += 1  # cov_out never stores zero masks
    return diff, diff / (1 << original.n)


def error_details(original: Cover, approx: Cover) -> dict:
    """Oracle report: EIC count, rate, and per-output rise/fall flip counts."""
    _check_dims(original, approx)
    rises = [0] * original.m
    falls = [0] * original.m
    eics = []
    ca = original.cov_out
    cb = approx.cov_out
    for v in ca.keys() | cb.keys():
        a = ca.get(v, 0)
        b = cb.get(v, 0)
        if a == b:
            continue
        eics.append(v)
        up = b & ~a
        down = a & ~b
        for j in range(original.m):
            bit = 1 << j
            if up & bit:
                rises[j] += 1
            if down & bit:
                falls[j] += 1
    eics.sort()
    return {
        "eic_count": len(eics),
        "error_rate": len(eics) / (1 << original.n),
        "rises": rises,
        "falls": falls,
        "eics": eics,
    }


def _wilson(hits: int, samples: int, z: float = 1.959963984540054) -> tuple[float, float]:
    if samples == 0:
        return 0.0, 1.0
    phat = hits / samples
    z2 = z * z
    denom = 1.0 + z2 / samples
    center = (phat + z2 / (2 * samples)) / denom
    half = z * math.sqrt(phat * (1.0 - phat) / samples + z2 / (4 * samples * samples)) / denom
    return max(0.0, center - half), min(1.0, center + half)


def sampled_error_rate(
    original: Cover, approx: Cover, samples: int, seed: int = 0
) -> tuple[float, tuple[float, float]]:
    """Monte-Carlo error-rate estimate with a Wilson 95% interval.

    Deterministic for a given seed.  When the sample budget covers the whole
    input space (and n is small enough), falls back to exact enumeration and
    returns a degenerate interval.
    """
    _check_dims(original, approx)
    if samples < 1:
        raise ValueError("need at least one sample")
    n = original.n
    if n <= EXHAUSTIVE_LIMIT and samples >= (1 << n):
        _, er = exhaustive_error_rate(original, approx)
        return er, (er, er)
    rng = random.Random(seed)
    ca_get = original.cov_out.get
    cb_get = approx.cov_out.get
    hits = 0
    for _ in range(samples):
        v = rng.getrandbits(n)
        if ca_get(v, 0) != cb_get(v, 0):
            hits += 1
    return hits / samples, _wilson(hits, samples)


def cube_insertion_eics(cube: Cube, cover: Cover, existing: frozenset[int] | set[int]) -> frozenset[int]:
    """Input assignments where inserting the cube would newly flip an output.

    These are assignments matched by the cube where some asserted output is
    not already covered, excluding assignments previously charged as EICs.
    """
    outs = cube.outs
    get = cover.cov_out.get
    found = []
    for v in cover.assignments(cube):
        if (get(v, 0) & outs) != outs and v not in existing:
            found.append(v)
    return frozenset(found)
