"""Error-free cleanup of a cover: the final two-level minimization stage.

The built-in path greedily drops input literals whose added minterms stay
inside the ON-set (plus an optional don't-care cover) and then removes fully
shadowed cubes.  When an external minimizer executable is configured it is
used instead, through PLA files and a sub-process, with the internal path as
fallback; external results are verified for function equivalence before
being trusted.
"""

from __future__ import annotations

import logging
import shlex
import subprocess
import tempfile
from pathlib import Path

from .config import DEFAULT_CONFIG, EngineConfig
from .cover import Cover, total_literals
from .cube import Cube, cube_literals, input_pattern, out_indices

log = logging.getLogger("sopapprox")


def _drain_all_shadowed(cover: Cover) -> list[Cube]:
    removed = []
    while cover.empty_unique:
        if len(cover.empty_unique) == 1:
            (d,) = cover.empty_unique
        else:
            d = min(
                cover.empty_unique,
                key=lambda c: (-cube_literals(c), cover.key(c)),
            )
        cover.remove(d)
        removed.append(d)
    return removed


def make_irredundant(cover: Cover) -> Cover:
    """Drop fully shadowed cubes, higher literal counts first.  Pure."""
    out = cover.copy()
    _drain_all_shadowed(out)
    return out


def expand_pass(cover: Cover, dc: Cover | None = None) -> Cover:
    """Greedy error-free expansion followed by shadowed-cube removal.  Pure.

    A literal may be dropped when every input assignment it adds keeps all
    the cube's outputs inside the original coverage plus ``dc``.
    """
    out = cover.copy()
    on_get = dict(cover.cov_out).get  # legality is against the original coverage
    dc_get = dc.cov_out.get if dc is not None else None
    for original_cube in cover.ordered_cubes():
        if original_cube not in out.cubes:
            continue  # merged into an earlier expansion
        cur = original_cube
        changed = True
        while changed and cur.care:
            changed = False
            pm = cur.care
            while pm:
                low = pm & -pm
                pm ^= low
                outs = cur.outs
                legal = True
                for v0 in out.assignments(cur):
                    v = v0 ^ low
                    allowed = on_get(v, 0)
                    if dc_get is not None:
                        allowed |= dc_get(v, 0)
                    if (allowed & outs) != outs:
                        legal = False
                        break
                if not legal:
                    continue
                care = cur.care ^ low
                bigger = Cube(care, cur.value & care, cur.outs)
                out.remove(cur)
                if bigger not in out.cubes:
                    out.insert(bigger)
                cur = bigger
                changed = True
                break
    _drain_all_shadowed(out)
    return out


def _pla_for_external(cover: Cover, dc: Cover | None) -> str:
    n, m = cover.n, cover.m
    lines = [f".i {n}", f".o {m}", ".type fd"]
    rows = []
    for c in cover.ordered_cubes():
        outs = "".join("1" if (c.outs >> j) & 1 else "0" for j in range(m))
        rows.append(f"{input_pattern(c, n)} {outs}")
    if dc is not None:
        for c in dc.ordered_cubes():
            outs = "".join("-" if (c.outs >> j) & 1 else "0" for j in range(m))
            rows.append(f"{input_pattern(c, n)} {outs}")
    lines.append(f".p {len(rows)}")
    lines.extend(rows)
    lines.append(".e")
    return "\n".join(lines) + "\n"


def _external_minimize(cover: Cover, dc: Cover | None, cmd: str, timeout: float) -> Cover | None:
    from .pla import PlaError, cover_from_document, parse_pla

    argv = shlex.split(cmd)
    with tempfile.TemporaryDirectory(prefix="sopapprox-") as tmp:
        path = Path(tmp) / "in.pla"
        path.write_text(_pla_for_external(cover, dc), encoding="utf-8")
        try:
            proc = subprocess.run(
                argv + [str(path)],
                capture_output=True,
                text=True,
                timeout=timeout,
            )
        except (OSError, subprocess.TimeoutExpired) as exc:
            log.warning("external minimizer failed to run: %s", exc)
            return None
        if proc.returncode != 0:
            log.warning("external minimizer exited with %d", proc.returncode)
            return None
        try:
            doc = parse_pla(proc.stdout, name="<external>")
            result = cover_from_document(doc)
        except (PlaError, ValueError) as exc:
            log.warning("could not parse external minimizer output: %s", exc)
            return None
    if result.n != cover.n or result.m != cover.m:
        log.warning("external minimizer changed dimensions")
        return None
    return result


def equivalent_outside_dc(a: Cover, b: Cover, dc: Cover | None = None) -> bool:
    """Exhaustive function equivalence, ignoring outputs the dc cover frees."""
    if a.n != b.n or a.m != b.m:
        return False
    ca, cb = a.cov_out, b.cov_out
    dget = dc.cov_out.get if dc is not None else None
    for v in ca.keys() | cb.keys():
        diff = ca.get(v, 0) ^ cb.get(v, 0)
        if diff and (dget is None or diff & ~dget(v, 0)):
            return False
    return True


def minimize_with_info(
    cover: Cover, dc: Cover | None = None, cfg: EngineConfig = DEFAULT_CONFIG
) -> tuple[Cover, str]:
    """Minimize and report which path produced the result ("external"/"internal")."""
    cmd = cfg.resolved_espresso()
    if cmd:
        result = _external_minimize(cover, dc, cmd, cfg.external_timeout)
        if result is not None:
            if not equivalent_outside_dc(cover, result, dc):
                log.warning("external minimizer result not equivalent; using fallback")
            elif total_literals(result, cfg.count_outputs) > total_literals(cover, cfg.count_outputs):
                log.warning("external minimizer grew the cover; using fallback")
            else:
                return result, "external"
    return expand_pass(cover, dc), "internal"


def minimize(cover: Cover, dc: Cover | None = None, cfg: EngineConfig = DEFAULT_CONFIG) -> Cover:
    return minimize_with_info(cover, dc, cfg)[0]
