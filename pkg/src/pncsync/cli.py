"""Command-line entry point: pnc ber|mi|penalty|chain."""

from __future__ import annotations

import argparse
import sys

from . import harness


def _parse_grid(text: str) -> tuple:
    """SNR grid as 'start:stop:step' (inclusive stop) or a comma list."""
    if ":" in text:
        parts = [float(v) for v in text.split(":")]
        if len(parts) == 2:
            parts.append(1.0)
        start, stop, step = parts
        n = int(round((stop - start) / step)) + 1
        return tuple(start + i * step for i in range(n))
    return tuple(float(v) for v in text.split(","))


def _common(sub):
    sub.add_argument("--config", help="flat key=value config file")
    sub.add_argument("--seed", type=int, help="master RNG seed")
    sub.add_argument("--workers", type=int, help="work units per point")
    sub.add_argument("--out", help="output file path")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="pnc",
        description="Synchronization-error experiments for physical-layer "
                    "network coding on a two-way relay")
    sp = ap.add_subparsers(dest="command", required=True)

    for cmd, blurb in (("ber", "Monte-Carlo xor BER at the relay"),
                       ("mi", "Monte-Carlo mutual information at the relay")):
        sub = sp.add_parser(cmd, help=blurb)
        _common(sub)
        sub.add_argument("--scenario", choices=harness.SCENARIOS)
        sub.add_argument("--snr-grid", help="'start:stop:step' or comma list, dB")
        sub.add_argument("--samples", type=int,
                         help="bits (ber) or samples (mi) per SNR point")
        sub.add_argument("--offset-range", type=float,
                         help="time-offset half-range x, dt/T in [-x, x]")
        sub.add_argument("--rolloff", type=float)
        sub.add_argument("--frame-length", type=int)

    sub = sp.add_parser("penalty", help="closed-form penalty curves and summary")
    _common(sub)
    sub.add_argument("--rolloff", type=float)

    sub = sp.add_parser("chain", help="N-node chain synchronization plan")
    _common(sub)
    sub.add_argument("--nodes", type=int)
    sub.add_argument("--bg-time", type=float, help="per-group sync time, s")
    sub.add_argument("--period", type=float, help="resynchronization period, s")
    sub.add_argument("--errors", help="local error triple 'theta,freq,time'")
    sub.add_argument("--halved", action="store_true",
                     help="also report the combined-sub-phase ts/2 estimate")
    return ap


def _overrides(args) -> dict:
    ov = {
        "command": args.command,
        "master_seed": args.seed,
        "workers": args.workers,
        "output_path": args.out,
    }
    if args.command in ("ber", "mi"):
        ov.update(scenario=args.scenario,
                  samples_per_point=args.samples,
                  offset_range=args.offset_range,
                  rolloff=args.rolloff,
                  frame_length=args.frame_length)
        if args.snr_grid:
            ov["snr_grid_db"] = _parse_grid(args.snr_grid)
    elif args.command == "penalty":
        ov["rolloff"] = args.rolloff
    else:
        ov.update(chain_nodes=args.nodes,
                  chain_bg_time=args.bg_time,
                  chain_period=args.period)
        if args.errors:
            ov["chain_local_errors"] = tuple(float(v) for v in args.errors.split(","))
        if args.halved:
            ov["chain_halved"] = True
    return {k: v for k, v in ov.items() if v is not None}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    ov = _overrides(args)
    if args.config:
        cfg = harness.config_from_file(args.config, **ov)
    else:
        cfg = harness.ExperimentConfig(**ov)

    if cfg.command == "ber":
        results = harness.run_ber(cfg)
        for r in results:
            print(f"snr {r.snr_db:6.2f} dB  {r.scenario:<20s} ber {r.ber:.6e} "
                  f"({r.num_errors}/{r.num_bits})")
    elif cfg.command == "mi":
        results = harness.run_mi(cfg)
        for e in results:
            print(f"snr {e.snr_db:6.2f} dB  {e.scenario:<20s} "
                  f"mi {e.mi_bits_per_dim:.4f} bit/dim  (n={e.num_samples})")
    elif cfg.command == "penalty":
        _, summary = harness.run_penalty(cfg)
        for key, val in summary.items():
            print(f"{key} = {val:.4f}")
    else:
        text = harness.run_chain(cfg)
        if not cfg.output_path:
            print(text, end="")
    if cfg.output_path:
        print(f"wrote {cfg.output_path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
