"""Berkeley PLA text format: parsing and serialization.

Supports the directives used across the two-level benchmark corpus:
``.i .o .p .ilb .ob .type .e/.end`` plus ``#`` comments.  Only the ON-set
interpretation is used downstream; output don't-care characters are coerced
to "not asserted" with a warning unless strict mode rejects them.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .cover import Cover, build_cover
from .cube import Cube, input_pattern, output_pattern

log = logging.getLogger("sopapprox")

_OUTPUT_DC_CHARS = {"-", "~", "2"}


class PlaError(ValueError):
    pass


@dataclass
class PlaDocument:
    num_inputs: int
    num_outputs: int
    cubes: list[Cube] = field(default_factory=list)
    input_labels: list[str] | None = None
    output_labels: list[str] | None = None
    pla_type: str = "fd"
    declared_product_count: int | None = None
    warnings: list[str] = field(default_factory=list)
    name: str | None = None


def _parse_cube_line(inp: str, out: str, n: int, m: int, strict: bool, lineno: int):
    if len(inp) != n:
        raise PlaError(f"line {lineno}: input field has {len(inp)} positions, expected {n}")
    if len(out) != m:
        raise PlaError(f"line {lineno}: output field has {len(out)} positions, expected {m}")
    care = value = 0
    for i, ch in enumerate(inp):
        if ch == "1":
            care |= 1 << i
            value |= 1 << i
        elif ch == "0":
            care |= 1 << i
        elif ch != "-":
            raise PlaError(f"line {lineno}: illegal input character {ch!r}")
    outs = 0
    coerced = 0
    for j, ch in enumerate(out):
        if ch == "1":
            outs |= 1 << j
        elif ch == "0":
            pass
        elif ch in _OUTPUT_DC_CHARS:
            if strict:
                raise PlaError(f"line {lineno}: output don't-care {ch!r} rejected in strict mode")
            coerced += 1
        else:
            raise PlaError(f"line {lineno}: illegal output character {ch!r}")
    return Cube(care, value, outs), coerced


def parse_pla(text: str, strict: bool = False, name: str | None = None) -> PlaDocument:
    """Parse PLA text into a document.  ``strict`` rejects output don't-cares."""
    n = m = None
    ilb = ob = None
    pla_type = "fd"
    declared = None
    cubes: list[Cube] = []
    seen: set[Cube] = set()
    warnings: list[str] = []
    cube_lines = 0
    coerced = 0
    duplicates = 0
    dropped_empty = 0
    ended = False

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line or ended:
            continue
        if line.startswith("."):
            parts = line.split()
            directive = parts[0]
            if directive == ".i":
                n = int(parts[1])
            elif directive == ".o":
                m = int(parts[1])
            elif directive == ".p":
                declared = int(parts[1])
            elif directive == ".ilb":
                ilb = parts[1:]
            elif directive == ".ob":
                ob = parts[1:]
            elif directive == ".type":
                t = parts[1] if len(parts) > 1 else ""
                if t in ("fd", "fr", "f"):
                    pla_type = t
                else:
                    warnings.append(f"line {lineno}: unsupported .type {t!r}, treating as fd")
            elif directive in (".e", ".end"):
                ended = True
            else:
                warnings.append(f"line {lineno}: ignored directive {directive}")
            continue
        # cube line
        if n is None or m is None:
            raise PlaError(f"line {lineno}: cube line before .i/.o directives")
        fields = line.split()
        if len(fields) == 2:
            inp, out = fields
        elif len(fields) == 1 and len(fields[0]) == n + m:
            inp, out = fields[0][:n], fields[0][n:]
            warnings.append(f"line {lineno}: cube fields not whitespace-separated")
        else:
            joined = "".join(fields)
            if len(joined) == n + m:
                inp, out = joined[:n], joined[n:]
            else:
                raise PlaError(f"line {lineno}: expected input and output fields")
        cube, c = _parse_cube_line(inp, out, n, m, strict, lineno)
        cube_lines += 1
        coerced += c
        if cube.outs == 0:
            dropped_empty += 1
            continue
        if cube in seen:
            duplicates += 1
            continue
        seen.add(cube)
        cubes.append(cube)

    if n is None or m is None:
        raise PlaError("missing .i/.o directives")
    if ilb is not None and len(ilb) != n:
        warnings.append(f".ilb names {len(ilb)} inputs, expected {n}")
        ilb = None
    if ob is not None and len(ob) != m:
        warnings.append(f".ob names {len(ob)} outputs, expected {m}")
        ob = None
    if coerced:
        warnings.append(f"coerced {coerced} output don't-care(s) to 0")
    if dropped_empty:
        warnings.append(f"dropped {dropped_empty} cube(s) asserting no output")
    if duplicates:
        warnings.append(f"dropped {duplicates} duplicate cube(s)")
    if declared is not None and declared != cube_lines:
        msg = f".p declares {declared} products but {cube_lines} cube lines parsed"
        if strict:
            raise PlaError(msg)
        warnings.append(msg)
    for w in warnings:
        log.warning("%s: %s", name or "<pla>", w)
    return PlaDocument(
        num_inputs=n,
        num_outputs=m,
        cubes=cubes,
        input_labels=ilb,
        output_labels=ob,
        pla_type=pla_type,
        declared_product_count=declared,
        warnings=warnings,
        name=name,
    )


def read_pla(path, strict: bool = False) -> PlaDocument:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    import os

    return parse_pla(text, strict=strict, name=os.path.basename(str(path)))


def write_pla(doc: PlaDocument) -> str:
    """Serialize a document; parse_pla(write_pla(d)) reproduces cubes and dimensions."""
    n, m = doc.num_inputs, doc.num_outputs
    lines = [f".i {n}", f".o {m}"]
    if doc.input_labels:
        lines.append(".ilb " + " ".join(doc.input_labels))
    if doc.output_labels:
        lines.append(".ob " + " ".join(doc.output_labels))
    if doc.pla_type != "fd":
        lines.append(f".type {doc.pla_type}")
    lines.append(f".p {len(doc.cubes)}")
    for cube in doc.cubes:
        lines.append(f"{input_pattern(cube, n)} {output_pattern(cube, m)}")
    lines.append(".e")
    return "\n".join(lines) + "\n"


def save_pla(doc: PlaDocument, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(write_pla(doc))


def cover_from_document(doc: PlaDocument) -> Cover:
    return build_cover(doc.cubes, doc.num_inputs, doc.num_outputs)


def document_from_cover(cover: Cover, name: str | None = None,
                        input_labels=None, output_labels=None) -> PlaDocument:
    return PlaDocument(
        num_inputs=cover.n,
        num_outputs=cover.m,
        cubes=cover.ordered_cubes(),
        input_labels=input_labels,
        output_labels=output_labels,
        name=name,
    )
