"""Command-line front end: approximate one circuit, verify a pair, or run
the benchmark harness over a corpus directory."""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .config import EngineConfig
from .cover import total_literals
from .engine import approximate
from .error_model import EXHAUSTIVE_LIMIT, error_details, noe_from_er, sampled_error_rate
from .pla import PlaError, cover_from_document, document_from_cover, read_pla, save_pla
from .refdata import published_for
from .report import format_table, record_line, render_figures, write_jsonl

log = logging.getLogger("sopapprox")


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--strict", action="store_true",
                        help="reject PLA files with output don't-cares")
    parser.add_argument("--count-inputs-only", action="store_true",
                        help="count input literals only (default counts asserted outputs too)")
    parser.add_argument("--dc-eic", action="store_true",
                        help="pass accumulated EICs to the minimizer as don't-cares")
    parser.add_argument("--sct-top-pct", type=float, default=0.25,
                        help="rank cut-off for the first tree of a combined pair")
    parser.add_argument("--sct-partner-pct", type=float, default=0.80,
                        help="rank cut-off for the second tree of a combined pair")
    parser.add_argument("--no-external", action="store_true",
                        help="never call an external minimizer")
    parser.add_argument("--espresso-cmd", default=None,
                        help="external minimizer command (default: $SOPAPPROX_ESPRESSO)")
    parser.add_argument("--seed", type=int, default=0, help="seed for sampled verification")
    parser.add_argument("--samples", type=int, default=100_000,
                        help="sample count for the Monte-Carlo oracle on very wide circuits")
    parser.add_argument("--log-level", default="WARNING",
                        choices=["DEBUG", "INFO", "WARNING", "ERROR"])


def _config_from(args) -> EngineConfig:
    return EngineConfig(
        count_outputs=not args.count_inputs_only,
        sct_top_pct=args.sct_top_pct,
        sct_partner_pct=args.sct_partner_pct,
        dc_eic=args.dc_eic,
        use_external=not args.no_external,
        espresso_cmd=args.espresso_cmd,
    )


def _threshold_label(kind: str, er: str | None, noe: int | None) -> str:
    return f"noe={noe}" if kind == "noe" else f"er={er}"


def run_one(path: str, kind: str, er: str | None, noe: int | None,
            cfg_kwargs: dict, strict: bool, out_pla: str | None) -> dict:
    """Approximate one circuit at one threshold; returns a report record."""
    cfg = EngineConfig(**cfg_kwargs)
    circuit = Path(path).stem
    label = _threshold_label(kind, er, noe)
    try:
        doc = read_pla(path, strict=strict)
        cover = cover_from_document(doc)
        budget = noe if kind == "noe" else noe_from_er(er, cover.n)
        started = time.perf_counter()
        result = approximate(cover, noe=budget, cfg=cfg)
        elapsed = time.perf_counter() - started
        pub_noe, pub_lits = published_for(circuit, kind, er)
        record = {
            "status": "ok",
            "circuit": circuit,
            "threshold_kind": kind,
            "threshold_label": label,
            "er_threshold": er,
            "noe_threshold": budget,
            "n": cover.n,
            "m": cover.m,
            "cubes_original": len(cover),
            "cubes_approx": len(result.cover),
            "literals_original": result.original_literals,
            "literals_original_minimized": result.minimized_original_literals,
            "literals_approx": result.approx_literals,
            "reduction_ratio": round(result.approx_literals / max(1, result.original_literals), 4),
            "eic_count": result.eic_count,
            "er_measured": round(result.error_rate, 6),
            "verified": result.eic_count <= budget,
            "minimizer": result.minimizer,
            "count_outputs": cfg.count_outputs,
            "published_noe": pub_noe,
            "published_literals": pub_lits,
            "warnings": list(doc.warnings),
            "seconds": round(elapsed, 3),
        }
        if out_pla:
            save_pla(document_from_cover(result.cover, name=circuit), out_pla)
            record["output_pla"] = Path(out_pla).name  # keep reports path-independent
        return record
    except Exception as exc:  # per-circuit failures must not kill a bench run
        log.exception("run failed for %s at %s", circuit, label)
        return {
            "status": "error",
            "circuit": circuit,
            "threshold_kind": kind,
            "threshold_label": label,
            "error": f"{type(exc).__name__}: {exc}",
        }


def cmd_approximate(args) -> int:
    cfg = _config_from(args)
    er = args.er
    noe = args.noe
    kind = "er" if er is not None else "noe"
    record = run_one(args.input, kind, er, noe, cfg.__dict__.copy(), args.strict,
                     args.output)
    if record["status"] == "error":
        print(f"error: {record['error']}", file=sys.stderr)
        return 1
    if not record["verified"]:
        print("error: result failed verification", file=sys.stderr)
        return 1
    print(format_table([record]), end="")
    if args.report:
        with open(args.report, "a", encoding="utf-8") as fh:
            fh.write(record_line(record) + "\n")
    return 0


def cmd_verify(args) -> int:
    try:
        a = cover_from_document(read_pla(args.original, strict=args.strict))
        b = cover_from_document(read_pla(args.approx, strict=args.strict))
    except PlaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if (a.n, a.m) != (b.n, b.m):
        print(f"error: dimension mismatch {a.n}x{a.m} vs {b.n}x{b.m}", file=sys.stderr)
        return 1
    if a.n <= EXHAUSTIVE_LIMIT:
        details = error_details(a, b)
        print(f"eic_count {details['eic_count']}")
        print(f"error_rate {details['error_rate']:.6f}")
        for j in range(a.m):
            print(f"output {j}: rises {details['rises'][j]} falls {details['falls'][j]}")
    else:
        est, (lo, hi) = sampled_error_rate(a, b, args.samples, args.seed)
        print(f"error_rate_estimate {est:.6f}")
        print(f"wilson95 [{lo:.6f}, {hi:.6f}] samples {args.samples} seed {args.seed}")
    return 0


def cmd_bench(args) -> int:
    corpus = Path(args.corpus)
    if not corpus.is_dir():
        print(f"error: not a directory: {corpus}", file=sys.stderr)
        return 1
    names = sorted(p.stem for p in corpus.glob("*.pla"))
    if args.circuits:
        wanted = [c.strip() for c in args.circuits.split(",") if c.strip()]
        missing = [c for c in wanted if c not in names]
        if missing:
            print(f"error: circuits not in corpus: {', '.join(missing)}", file=sys.stderr)
            return 1
        names = wanted
    thresholds: list[tuple[str, str | None, int | None]] = []
    for noe in args.noe or []:
        thresholds.append(("noe", None, noe))
    for er in (args.er.split(",") if args.er else []):
        er = er.strip()
        if er:
            thresholds.append(("er", er, None))
    if not thresholds:
        print("error: give at least one --noe or --er threshold", file=sys.stderr)
        return 1

    outdir = Path(args.out)
    (outdir / "approx").mkdir(parents=True, exist_ok=True)
    cfg = _config_from(args)
    tasks = []
    for name in names:
        for kind, er, noe in thresholds:
            label = _threshold_label(kind, er, noe).replace("=", "")
            out_pla = outdir / "approx" / f"{name}__{label}.pla"
            tasks.append((str(corpus / f"{name}.pla"), kind, er, noe,
                          cfg.__dict__.copy(), args.strict, str(out_pla)))

    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            records = list(pool.map(run_one, *zip(*tasks)))
    else:
        records = [run_one(*task) for task in tasks]

    records.sort(key=lambda r: (r["circuit"], r["threshold_kind"],
                                r.get("noe_threshold") or 0, r.get("er_threshold") or ""))
    write_jsonl(records, outdir / "report.jsonl")
    table = format_table(records)
    (outdir / "report.txt").write_text(table, encoding="utf-8")
    print(table, end="")
    if not args.no_figures:
        paths = render_figures(records, outdir / "figures")
        for p in paths:
            print(f"figure: {p}")
    failures = [r for r in records if r["status"] != "ok" or not r.get("verified", False)]
    if failures:
        print(f"error: {len(failures)} run(s) failed or missed the threshold", file=sys.stderr)
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sopapprox",
        description="Approximate two-level SOP covers under an error-rate bound",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("approximate", help="approximate one PLA file")
    p.add_argument("input")
    p.add_argument("-o", "--output", default=None, help="write the approximate PLA here")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--er", default=None, help="error-rate threshold in [0,1], e.g. 0.05")
    group.add_argument("--noe", type=int, default=None, help="absolute error budget")
    p.add_argument("--report", default=None, help="append the report record to this JSONL file")
    _add_common(p)
    p.set_defaults(func=cmd_approximate)

    p = sub.add_parser("verify", help="measure the error rate between two PLA files")
    p.add_argument("original")
    p.add_argument("approx")
    _add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="run the harness over a corpus directory")
    p.add_argument("corpus")
    p.add_argument("--out", required=True, help="output directory for reports and figures")
    p.add_argument("--noe", type=int, action="append",
                   help="absolute error budget (repeatable)")
    p.add_argument("--er", default=None, help="comma-separated error-rate thresholds")
    p.add_argument("--circuits", default=None, help="comma-separated circuit names")
    p.add_argument("--jobs", type=int, default=1, help="parallel worker processes")
    p.add_argument("--no-figures", action="store_true", help="skip figure rendering")
    _add_common(p)
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=getattr(logging, args.log_level),
                        format="%(levelname)s %(name)s: %(message)s")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
