"""Benchmark report output: line-delimited records, a text table, and figures.

Records are self-describing dicts serialized as sorted-key JSON lines so two
runs diff cleanly; wall-clock fields are the only nondeterministic part and
are listed in TIMING_FIELDS so consumers can strip them.
"""

from __future__ import annotations

import json
import math
import statistics
from pathlib import Path

TIMING_FIELDS = ("seconds",)


def record_line(record: dict) -> str:
    return json.dumps(record, sort_keys=True)


def write_jsonl(records, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(record_line(rec) + "\n")


def strip_timing(record: dict) -> dict:
    return {k: v for k, v in record.items() if k not in TIMING_FIELDS}


def load_jsonl(path) -> list[dict]:
    with open(path, "r", encoding="utf-8") as fh:
        return [json.loads(line) for line in fh if line.strip()]


_COLUMNS = (
    ("circuit", "Circuit"),
    ("threshold_label", "Threshold"),
    ("noe_threshold", "NoE"),
    ("literals_original", "Orig"),
    ("literals_original_minimized", "OrigMin"),
    ("literals_approx", "Approx"),
    ("reduction_ratio", "Ratio"),
    ("published_literals", "Published"),
    ("eic_count", "EICs"),
    ("er_measured", "ER"),
    ("verified", "OK"),
    ("seconds", "Time(s)"),
)


def _cell(record: dict, key: str) -> str:
    value = record.get(key)
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "NO"
    if isinstance(value, float):
        return f"{value:.4f}" if key != "seconds" else f"{value:.2f}"
    return str(value)


def format_table(records) -> str:
    rows = [[header for _, header in _COLUMNS]]
    for rec in records:
        if rec.get("status") == "error":
            rows.append([rec.get("circuit", "?"), "ERROR: " + rec.get("error", "?")]
                        + [""] * (len(_COLUMNS) - 2))
        else:
            rows.append([_cell(rec, key) for key, _ in _COLUMNS])
    widths = [max(len(r[i]) for r in rows) for i in range(len(_COLUMNS))]
    lines = []
    for idx, row in enumerate(rows):
        lines.append("  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip())
        if idx == 0:
            lines.append("  ".join("-" * widths[i] for i in range(len(_COLUMNS))))
    return "\n".join(lines) + "\n"


def fit_power_law(xs, ys) -> float:
    """Least-squares exponent of y = c * x**a over positive samples."""
    pairs = [(x, y) for x, y in zip(xs, ys) if x > 0 and y > 0]
    if len(pairs) < 2:
        raise ValueError("need at least two positive samples")
    lx = [math.log(x) for x, _ in pairs]
    ly = [math.log(y) for _, y in pairs]
    slope, _intercept = statistics.linear_regression(lx, ly)
    return slope


def render_figures(records, outdir) -> list[str]:
    """Write summary figures next to the delimited report; returns the paths."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    ok = [r for r in records if r.get("status") == "ok"]
    paths: list[str] = []
    if not ok:
        return paths

    labels = [f"{r['circuit']}@{r['threshold_label']}" for r in ok]

    fig, ax = plt.subplots(figsize=(9, max(3.0, 0.34 * len(ok) + 1.2)))
    ypos = range(len(ok))
    ax.barh([y + 0.2 for y in ypos], [r["literals_original"] for r in ok],
            height=0.38, label="original", color="#888888")
    ax.barh([y - 0.2 for y in ypos], [r["literals_approx"] for r in ok],
            height=0.38, label="approximate", color="#2266aa")
    ax.set_yticks(list(ypos))
    ax.set_yticklabels(labels, fontsize=7)
    ax.invert_yaxis()
    ax.set_xlabel("literals")
    ax.set_title("Literal count before and after approximation")
    ax.legend(loc="lower right", fontsize=8)
    fig.tight_layout()
    path = outdir / "literals.png"
    fig.savefig(path, dpi=120)
    plt.close(fig)
    paths.append(str(path))

    fig, ax = plt.subplots(figsize=(9, max(3.0, 0.3 * len(ok) + 1.0)))
    ratios = [r["reduction_ratio"] for r in ok]
    ax.barh(range(len(ok)), ratios, color="#2266aa")
    ax.set_yticks(range(len(ok)))
    ax.set_yticklabels(labels, fontsize=7)
    ax.invert_yaxis()
    ax.set_xlabel("approximate / original literals")
    ax.set_xlim(0, 1.05)
    ax.set_title("Reduction ratio (lower is better)")
    fig.tight_layout()
    path = outdir / "ratio.png"
    fig.savefig(path, dpi=120)
    plt.close(fig)
    paths.append(str(path))

    by_circuit: dict[str, list[dict]] = {}
    for r in ok:
        by_circuit.setdefault(r["circuit"], []).append(r)
    multi = {c: rs for c, rs in by_circuit.items() if len(rs) > 1}
    if multi:
        fig, ax = plt.subplots(figsize=(6.5, 4.5))
        plotted = 0
        for circuit, rs in sorted(multi.items()):
            rs = sorted(rs, key=lambda r: r["noe_threshold"])
            xs = [r["noe_threshold"] for r in rs]
            ys = [r["seconds"] for r in rs]
            if all(x > 0 for x in xs) and all(y > 0 for y in ys):
                ax.loglog(xs, ys, marker="o", label=circuit)
                plotted += 1
        if plotted:
            ax.set_xlabel("error budget (NoE)")
            ax.set_ylabel("runtime (s)")
            ax.set_title("Runtime scaling with the error budget")
            ax.grid(True, which="both", alpha=0.3)
            ax.legend(fontsize=8)
            fig.tight_layout()
            path = outdir / "runtime.png"
            fig.savefig(path, dpi=120)
            paths.append(str(path))
        plt.close(fig)
    return paths
