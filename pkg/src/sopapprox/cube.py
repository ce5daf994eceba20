"""Ternary cube algebra for multi-output sum-of-products covers.

A cube is one product term over n inputs driving a subset of m outputs.
Input literals are packed into two bitmasks (care + value), so matching,
containment and expansion are constant-time mask operations.  Bit i of a
mask corresponds to input i, which is character position i in the text
pattern; bit j of ``outs`` asserts output j.
"""

from __future__ import annotations

from typing import Iterator, NamedTuple


class Cube(NamedTuple):
    care: int   # bit i set -> input i appears as a literal
    value: int  # polarity of input i where care bit i is set
    outs: int   # bit j set -> cube asserts output j


_OUT_BITS: dict[int, tuple[int, ...]] = {}
_PATTERNS: dict[tuple[Cube, int, int], str] = {}


def out_indices(mask: int) -> tuple[int, ...]:
    """Indices of asserted outputs, ascending."""
    bits = _OUT_BITS.get(mask)
    if bits is None:
        bits = tuple(i for i in range(mask.bit_length()) if (mask >> i) & 1)
        _OUT_BITS[mask] = bits
    return bits


def make_cube(care: int, value: int, outs: int) -> Cube:
    """Constructor that clears value bits outside the care mask."""
    return Cube(care, value & care, outs)


def cube_from_pattern(text: str) -> Cube:
    """Parse ``"-10|1"`` style text (inputs ``0/1/-``, then ``|``, outputs ``0/1``)."""
    inp, _, out = text.partition("|")
    care = value = 0
    for i, ch in enumerate(inp):
        if ch == "1":
            care |= 1 << i
            value |= 1 << i
        elif ch == "0":
            care |= 1 << i
        elif ch != "-":
            raise ValueError(f"bad input character {ch!r} in {text!r}")
    outs = 0
    for j, ch in enumerate(out):
        if ch == "1":
            outs |= 1 << j
        elif ch != "0":
            raise ValueError(f"bad output character {ch!r} in {text!r}")
    return Cube(care, value, outs)


def input_pattern(cube: Cube, n: int) -> str:
    chars = []
    for i in range(n):
        bit = 1 << i
        if cube.care & bit:
            chars.append("1" if cube.value & bit else "0")
        else:
            chars.append("-")
    return "".join(chars)


def output_pattern(cube: Cube, m: int) -> str:
    return "".join("1" if (cube.outs >> j) & 1 else "0" for j in range(m))


def pattern(cube: Cube, n: int, m: int) -> str:
    """Canonical ``inputs|outputs`` text form; also the deterministic sort key."""
    key = (cube, n, m)
    text = _PATTERNS.get(key)
    if text is None:
        text = input_pattern(cube, n) + "|" + output_pattern(cube, m)
        _PATTERNS[key] = text
    return text


def input_str(v: int, n: int) -> str:
    """Input assignment rendered with the same position convention as patterns."""
    return "".join("1" if (v >> i) & 1 else "0" for i in range(n))


def assignment_from_str(text: str) -> int:
    v = 0
    for i, ch in enumerate(text):
        if ch == "1":
            v |= 1 << i
        elif ch != "0":
            raise ValueError(f"bad assignment character {ch!r}")
    return v


def cube_literals(cube: Cube, count_outputs: bool = True) -> int:
    """Literal count: input literals plus (optionally) asserted outputs."""
    if count_outputs:
        return cube.care.bit_count() + cube.outs.bit_count()
    return cube.care.bit_count()


def matches(cube: Cube, v: int) -> bool:
    """True when input assignment v satisfies every input literal."""
    return (v & cube.care) == cube.value


def contains(a: Cube, b: Cube) -> bool:
    """Every minterm of b is also covered by a."""
    return (
        (b.care & a.care) == a.care
        and (b.value & a.care) == a.value
        and (a.outs | b.outs) == a.outs
    )


def strictly_contains(a: Cube, b: Cube) -> bool:
    return a != b and contains(a, b)


def expansions(cube: Cube) -> list[Cube]:
    """One result per input literal, with that literal dropped.  Outputs unchanged."""
    out = []
    pm = cube.care
    while pm:
        low = pm & -pm
        pm ^= low
        care = cube.care ^ low
        out.append(Cube(care, cube.value & care, cube.outs))
    return out


def iter_assignments(care: int, value: int, n: int) -> Iterator[int]:
    """All input assignments matched by the (care, value) pair."""
    free = ((1 << n) - 1) & ~care
    sub = free
    while True:
        yield value | sub
        if not sub:
            break
        sub = (sub - 1) & free


def covered_minterms(cube: Cube, n: int, m: int) -> Iterator[tuple[int, int]]:
    """All (assignment, output index) pairs matched and asserted by the cube."""
    outs = out_indices(cube.outs)
    for v in iter_assignments(cube.care, cube.value, n):
        for o in outs:
            yield (v, o)
