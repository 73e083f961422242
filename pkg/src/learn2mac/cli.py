"""Command line entry point: ``learn2mac run`` and ``learn2mac sweep``."""

import argparse
import json
import logging
import sys
from pathlib import Path

from .harness import (
    ScenarioConfig,
    load_config,
    preset,
    run_paired,
    run_scenario,
    run_sweep,
    write_probabilities_csv,
    write_summary_json,
    write_sweep_csv,
    write_trace_csv,
)

log = logging.getLogger("learn2mac")


def _k_values(text: str) -> list[int]:
    """Parse '1..12', '1,2,5' or a mix such as '1..4,8'."""
    out = []
    for part in text.split(","):
        if ".." in part:
            lo, hi = part.split("..")
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    return out


def _seed(text: str) -> int:
    v = int(text, 0)
    if not 0 <= v < 1 << 64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def cmd_run(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    overrides = {}
    if args.frames is not None:
        overrides["T"] = args.frames
    if args.trace_probabilities:
        overrides["trace_probabilities"] = True

    if args.config:
        cfg = load_config(args.config)
        cfg = ScenarioConfig.from_dict({**cfg.to_dict(), **overrides})
        seed = cfg.master_seed if args.seed is None else args.seed
        learn, base = run_scenario(cfg, seed), None
    else:
        seed = 0 if args.seed is None else args.seed
        cfg = preset(args.preset, seed=seed, **overrides)
        q = 0.2 if cfg.name.startswith("saturation") else None
        learn, base = run_paired(cfg, seed, q)

    write_trace_csv(learn, out / "trace.csv")
    summary = learn.summary()
    if base is not None:
        write_trace_csv(base, out / "baseline_trace.csv")
        summary["baseline"] = base.summary()
    if cfg.trace_probabilities:
        write_probabilities_csv(learn, out / "probabilities.csv")
    write_summary_json(summary, out / "summary.json")
    log.info("system latent throughput %.4f", learn.system_latent_throughput)
    if base is not None:
        log.info("baseline latent throughput %.4f", base.system_latent_throughput)
    return 0


def cmd_sweep(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    seeds = list(range(args.seed0, args.seed0 + args.seeds))
    rows = run_sweep(_k_values(args.k), seeds, T=args.frames, workers=args.workers)
    write_sweep_csv(rows, out / "sweep.csv")
    (out / "sweep.json").write_text(json.dumps(rows, indent=2) + "\n")
    for r in rows:
        log.info("K=%-3d %-9s %.3f +/- %.3f", r["K"], r["protocol"], r["mean"], r["std"])
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="learn2mac", description=__doc__)
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run one scenario and write trace.csv / summary.json")
    src = run.add_mutually_exclusive_group(required=True)
    src.add_argument("--preset", help="tdma_static, dynamic_aloha or saturation(K)")
    src.add_argument("--config", help="scenario JSON file (schema version 1)")
    run.add_argument("--seed", type=_seed, default=None)
    run.add_argument("--out", required=True)
    run.add_argument("--frames", type=int, default=None, help="override the horizon T")
    run.add_argument("--trace-probabilities", action="store_true")
    run.set_defaults(func=cmd_run)

    sw = sub.add_parser("sweep", help="saturation sweep over the number of devices")
    sw.add_argument("--k", default="1..12")
    sw.add_argument("--seeds", type=int, default=5)
    sw.add_argument("--seed0", type=int, default=0)
    sw.add_argument("--frames", type=int, default=30000)
    sw.add_argument("--workers", type=int, default=1)
    sw.add_argument("--out", required=True)
    sw.set_defaults(func=cmd_sweep)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
