import os
import random
import stat
import sys

from sopapprox.config import EngineConfig
from sopapprox.cover import build_cover, total_literals
from sopapprox.cube import cube_from_pattern, pattern
from sopapprox.error_model import exhaustive_error_rate
from sopapprox.minimize import (
    equivalent_outside_dc,
    expand_pass,
    make_irredundant,
    minimize,
    minimize_with_info,
)

from oracles import random_cube_list


def mk(*patterns, n=3, m=1):
    return build_cover([cube_from_pattern(p) for p in patterns], n, m)


def F0():
    return mk("-10|1", "1-1|1")


def F1():
    return mk("-1-|1", "11-|1")


def test_minimize_drops_redundant_cube():
    got = minimize(F1())
    assert got.cubes == {cube_from_pattern("-1-|1")}


def test_minimize_keeps_minimal_cover():
    got = minimize(F0())
    assert got.cubes == F0().cubes
    assert total_literals(got) == 6


def test_minimize_empty_cover():
    empty = build_cover([], 3, 1)
    assert minimize(empty).cubes == set()


def test_make_irredundant_examples():
    assert make_irredundant(F1()).cubes == {cube_from_pattern("-1-|1")}
    assert make_irredundant(F0()).cubes == F0().cubes
    single = mk("1-1|1")
    assert make_irredundant(single).cubes == single.cubes


def test_expand_merges_adjacent_minterms():
    got = expand_pass(mk("010|1", "110|1"))
    assert got.cubes == {cube_from_pattern("-10|1")}


def test_expand_into_dont_cares():
    dc = mk("011|1")
    got = expand_pass(F0(), dc)
    assert cube_from_pattern("-1-|1") in got.cubes
    assert equivalent_outside_dc(F0(), got, dc)


def test_expand_no_legal_move():
    got = expand_pass(F0())
    assert got.cubes == F0().cubes


def test_function_preservation_and_monotonicity():
    rng = random.Random(13)
    for _ in range(60):
        n = rng.randint(2, 7)
        m = rng.randint(1, 3)
        cubes = random_cube_list(rng, n, m, rng.randint(1, 9))
        cover = build_cover(cubes, n, m)
        got = minimize(cover)
        assert exhaustive_error_rate(cover, got) == (0, 0.0)
        assert total_literals(got) <= total_literals(cover)


def _write_stub(tmp_path, body: str) -> str:
    path = tmp_path / "fake_minimizer.py"
    path.write_text("#!" + sys.executable + "\n" + body, encoding="utf-8")
    path.chmod(path.stat().st_mode | stat.S_IXUSR)
    return f"{sys.executable} {path}"


def test_external_identity_tool_is_used(tmp_path):
    cmd = _write_stub(
        tmp_path,
        "import sys\nsys.stdout.write(open(sys.argv[1]).read())\n",
    )
    cfg = EngineConfig(espresso_cmd=cmd)
    got, backend = minimize_with_info(F1(), cfg=cfg)
    assert backend == "external"
    assert exhaustive_error_rate(F1(), got) == (0, 0.0)


def test_external_failure_falls_back(tmp_path):
    cmd = _write_stub(tmp_path, "import sys\nsys.exit(3)\n")
    cfg = EngineConfig(espresso_cmd=cmd)
    got, backend = minimize_with_info(F1(), cfg=cfg)
    assert backend == "internal"
    assert got.cubes == {cube_from_pattern("-1-|1")}


def test_external_wrong_function_rejected(tmp_path):
    cmd = _write_stub(
        tmp_path,
        "print('.i 3')\nprint('.o 1')\nprint('.p 1')\nprint('000 1')\nprint('.e')\n",
    )
    cfg = EngineConfig(espresso_cmd=cmd)
    got, backend = minimize_with_info(F1(), cfg=cfg)
    assert backend == "internal"
    assert exhaustive_error_rate(F1(), got) == (0, 0.0)


def test_external_disabled_by_flag(tmp_path):
    cmd = _write_stub(tmp_path, "import sys\nsys.stdout.write(open(sys.argv[1]).read())\n")
    cfg = EngineConfig(espresso_cmd=cmd, use_external=False)
    got, backend = minimize_with_info(F1(), cfg=cfg)
    assert backend == "internal"


def test_env_var_configures_external(tmp_path, monkeypatch):
    cmd = _write_stub(tmp_path, "import sys\nsys.stdout.write(open(sys.argv[1]).read())\n")
    monkeypatch.setenv("SOPAPPROX_ESPRESSO", cmd)
    got, backend = minimize_with_info(F1(), cfg=EngineConfig())
    assert backend == "external"
