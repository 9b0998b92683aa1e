"""Experiment configuration, seeded Monte-Carlo runners and CSV output.

Scenarios follow the three synchronization levels compared throughout:

  perfect        zero offsets; per-dimension midpoint threshold detection
  phase_unsync   phase offset uniform over [-pi/4, pi/4], drawn per frame
                 and known to the relay, which runs ML xor detection
  time_unsync    symbol-time offset uniform over [-x, x]*T per frame,
                 mid-offset sampling and threshold detection at the
                 scaled level spacing

Every run derives independent RNG streams from the master seed and the
(command, scenario, point, batch) indices, and work units reduce in fixed
order, so identical configurations produce byte-identical output files.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields

import numpy as np

from . import analysis, chain, mutual_info
from .detection import build_hypotheses, ml_xor_bits, threshold_bits
from .impairments import PulseShape, fold_phase, mid_offset_frame, raised_cosine

COMMANDS = ("ber", "mi", "penalty", "chain")
SCENARIOS = ("perfect", "phase_unsync", "time_unsync")

_CMD_IDS = {"ber": 0, "mi": 1}
_SCEN_IDS = {"perfect": 0, "phase_unsync": 1, "time_unsync": 2}

TRADITIONAL_SLOTS = 4
STRAIGHTFORWARD_NC_SLOTS = 3
PNC_SLOTS = 2


@dataclass(frozen=True)
class ExperimentConfig:
    command: str = "ber"
    scenario: str = "perfect"
    snr_grid_db: tuple = tuple(float(s) for s in range(0, 13))
    offset_range: float | None = None   # time_unsync half-range x (dt/T in [-x, x])
    samples_per_point: int = 100_000    # bits for ber, samples for mi
    rolloff: float = 0.5
    truncation: int = 16
    master_seed: int = 12345
    workers: int = 1
    output_path: str | None = None
    frame_length: int = 1000
    # chain command inputs
    chain_nodes: int = 5
    chain_bg_time: float = 1.0
    chain_period: float = 100.0
    chain_local_errors: tuple = (0.1, 0.02, 0.001)
    chain_halved: bool = False

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"command must be one of {COMMANDS}, got {self.command!r}")
        if self.scenario not in SCENARIOS:
            raise ValueError(f"scenario must be one of {SCENARIOS}, got {self.scenario!r}")
        grid = tuple(float(s) for s in self.snr_grid_db)
        if not grid:
            raise ValueError("snr_grid_db must be non-empty")
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise ValueError("snr_grid_db must be strictly increasing")
        object.__setattr__(self, "snr_grid_db", grid)
        if self.command in ("ber", "mi") and self.samples_per_point < 1000:
            raise ValueError("samples_per_point must be >= 1000 for statistical commands")
        if self.offset_range is not None and not 0.0 <= self.offset_range <= 0.5:
            raise ValueError("offset_range must be in [0, 0.5]")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if self.frame_length < 1:
            raise ValueError("frame_length must be >= 1")

    def effective_offset_range(self) -> float:
        if self.offset_range is None:
            return 0.5
        return self.offset_range

    def pulse(self) -> PulseShape:
        return PulseShape(self.rolloff, self.truncation)


@dataclass(frozen=True)
class BerResult:
    snr_db: float
    scenario: str
    ber: float
    num_bits: int
    num_errors: int
    seed: int

    def __post_init__(self):
        if self.num_errors > self.num_bits:
            raise ValueError("num_errors cannot exceed num_bits")
        if self.ber != self.num_errors / self.num_bits:
            raise ValueError("ber must equal num_errors/num_bits exactly")


# ---------------------------------------------------------------------------
# config files: flat "key = value" lines, '#' comments


def parse_config_file(path) -> dict:
    """Read a flat key-value config document into a dict of typed values."""
    out = {}
    valid = {f.name for f in fields(ExperimentConfig)}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" in line:
                key, val = line.split("=", 1)
            elif ":" in line:
                key, val = line.split(":", 1)
            else:
                raise ValueError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
            key = key.strip()
            if key not in valid:
                raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
            out[key] = _parse_value(key, val.strip())
    return out


def _parse_value(key: str, text: str):
    if key in ("snr_grid_db", "chain_local_errors"):
        return tuple(float(v) for v in text.replace(",", " ").split())
    if key in ("command", "scenario", "output_path"):
        return text
    if key == "chain_halved":
        return text.lower() in ("1", "true", "yes", "on")
    if key in ("samples_per_point", "truncation", "master_seed", "workers",
               "frame_length", "chain_nodes"):
        return int(text)
    return float(text)


def config_from_file(path, **overrides) -> ExperimentConfig:
    data = parse_config_file(path)
    data.update({k: v for k, v in overrides.items() if v is not None})
    return ExperimentConfig(**data)


# ---------------------------------------------------------------------------
# BER runner


def _point_rng(cfg: ExperimentConfig, command: str, point: int, batch: int):
    key = (_CMD_IDS[command], _SCEN_IDS[cfg.scenario], point, batch)
    return np.random.default_rng(np.random.SeedSequence(cfg.master_seed, spawn_key=key))


def _ber_perfect_batch(snr_db, num_bits, rng):
    sigma = 10.0 ** (-snr_db / 20.0)
    nsym = max(1, num_bits // 2)
    i1, q1, i3, q3 = (rng.integers(0, 2, nsym) for _ in range(4))
    r = ((2 * i1 - 1) + 1j * (2 * q1 - 1)) + ((2 * i3 - 1) + 1j * (2 * q3 - 1))
    r = r + sigma * (rng.standard_normal(nsym) + 1j * rng.standard_normal(nsym))
    err = int(np.sum(threshold_bits(r.real, 1.0) != (i1 ^ i3)))
    err += int(np.sum(threshold_bits(r.imag, 1.0) != (q1 ^ q3)))
    return err, 2 * nsym


def _ber_phase_batch(snr_db, num_bits, rng, frame_len):
    sigma2 = 10.0 ** (-snr_db / 10.0)
    sd = math.sqrt(sigma2)
    nsym = max(1, num_bits // 2)
    nframes = max(1, math.ceil(nsym / frame_len))
    err = tot = 0
    for _ in range(nframes):
        theta = fold_phase(float(rng.uniform(-math.pi / 4, math.pi / 4)))[0]
        hyp = build_hypotheses(theta)
        i1, q1, i3, q3 = (rng.integers(0, 2, frame_len) for _ in range(4))
        r = ((2 * i1 - 1) + 1j * (2 * q1 - 1)) \
            + ((2 * i3 - 1) + 1j * (2 * q3 - 1)) * np.exp(1j * theta)
        r = r + sd * (rng.standard_normal(frame_len) + 1j * rng.standard_normal(frame_len))
        bits = ml_xor_bits(r, hyp, sigma2)
        err += int(np.sum(bits[:, 0] != (i1 ^ i3))) + int(np.sum(bits[:, 1] != (q1 ^ q3)))
        tot += 2 * frame_len
    return err, tot


def _ber_time_batch(snr_db, x, num_bits, rng, frame_len, pulse):
    sigma = 10.0 ** (-snr_db / 20.0)
    sd_half = sigma / 2.0  # half-amplitude sampling convention
    L = pulse.truncation_symbols
    nframes = max(1, math.ceil(num_bits / (2 * frame_len)))
    err = tot = 0
    for _ in range(nframes):
        dt = float(rng.uniform(-x, x)) if x > 0 else 0.0
        scale = 0.5 * raised_cosine(dt / 2, 1.0, pulse.rolloff)
        for _dim in range(2):  # independent I and Q streams, same offset
            a1 = rng.integers(0, 2, frame_len + 2 * L) * 2 - 1
            a3 = rng.integers(0, 2, frame_len + 2 * L) * 2 - 1
            r = mid_offset_frame(a1, a3, dt, pulse)[L:L + frame_len]
            r = r + sd_half * rng.standard_normal(frame_len)
            truth = (a1[L:L + frame_len] != a3[L:L + frame_len]).astype(np.int8)
            err += int(np.sum(threshold_bits(r, scale) != truth))
            tot += frame_len
    return err, tot


def run_ber(cfg: ExperimentConfig) -> list[BerResult]:
    """Monte-Carlo xor BER at the relay, one result per SNR point."""
    x = cfg.effective_offset_range()
    pulse = cfg.pulse()
    share = max(1, cfg.samples_per_point // cfg.workers)
    results = []
    for i, snr in enumerate(cfg.snr_grid_db):
        err = tot = 0
        for b in range(cfg.workers):
            rng = _point_rng(cfg, "ber", i, b)
            if cfg.scenario == "perfect":
                e, n = _ber_perfect_batch(snr, share, rng)
            elif cfg.scenario == "phase_unsync":
                e, n = _ber_phase_batch(snr, share, rng, cfg.frame_length)
            else:
                e, n = _ber_time_batch(snr, x, share, rng, cfg.frame_length, pulse)
            err += e
            tot += n
        label = cfg.scenario if cfg.scenario != "time_unsync" else f"time_unsync_x{x:g}"
        results.append(BerResult(snr_db=float(snr), scenario=label, ber=err / tot,
                                 num_bits=tot, num_errors=err, seed=cfg.master_seed))
    if cfg.output_path:
        write_ber_csv(cfg.output_path, cfg, results)
    return results


# ---------------------------------------------------------------------------
# MI / penalty / chain runners


def run_mi(cfg: ExperimentConfig) -> list[mutual_info.MiEstimate]:
    """Mutual-information curve for the configured scenario."""
    est = mutual_info.mi_curve(
        cfg.scenario, cfg.snr_grid_db, cfg.samples_per_point, cfg.master_seed,
        offset_range=cfg.effective_offset_range() if cfg.scenario == "time_unsync" else None,
        pulse=cfg.pulse(), frame_len=cfg.frame_length, num_batches=cfg.workers)
    if cfg.output_path:
        write_mi_csv(cfg.output_path, cfg, est)
    return est


def penalty_summary(ctx: analysis.SinrContext) -> dict:
    """Scalar penalty/SIR summary reported in the penalty CSV footer."""
    avg_phase = analysis.avg_phase_penalty_db()
    pnc_sir = analysis.PNC_1D_SIR_DB
    return {
        "avg_phase_penalty_db": avg_phase,
        "worst_phase_penalty_db": analysis.phase_penalty_db(math.pi / 4),
        "avg_sinr_penalty_db": analysis.avg_sinr_penalty_db(ctx),
        "worst_sinr_penalty_db": analysis.worst_sinr_penalty_db(ctx),
        "sir_1d_traditional_db": analysis.sir_1d_traditional_db(4.0),
        "sir_1d_pnc_db": pnc_sir,
        "sir_1d_pnc_minus_avg_phase_db": pnc_sir + avg_phase,
    }


def run_penalty(cfg: ExperimentConfig):
    """Closed-form penalty curves plus the scalar summary footer."""
    ctx = analysis.SinrContext(snr0_db=10.0, rolloff=cfg.rolloff,
                               truncation_symbols=cfg.truncation)
    curves = analysis.emit_penalty_curves(ctx)
    summary = penalty_summary(ctx)
    if cfg.output_path:
        write_penalty_csv(cfg.output_path, cfg, curves, summary)
    return curves, summary


def run_chain(cfg: ExperimentConfig) -> str:
    """Serialized synchronization plan for the configured chain."""
    ccfg = chain.ChainConfig(num_nodes=cfg.chain_nodes, bg_sync_time=cfg.chain_bg_time,
                             period=cfg.chain_period, local_errors=cfg.chain_local_errors)
    plan = chain.make_plan(ccfg, halved_sync=cfg.chain_halved)
    text = chain.serialize_plan(plan)
    if cfg.output_path:
        with open(cfg.output_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    return text


def throughput_summary() -> dict:
    """Slot counts of the three exchange schedules and relative throughputs."""
    schemes = {
        "traditional": TRADITIONAL_SLOTS,
        "straightforward_nc": STRAIGHTFORWARD_NC_SLOTS,
        "pnc": PNC_SLOTS,
    }
    return {name: {"slots": slots,
                   "throughput_vs_traditional": TRADITIONAL_SLOTS / slots}
            for name, slots in schemes.items()}


# ---------------------------------------------------------------------------
# CSV output (utf-8, LF, '#' header comments)


def _fmt(v) -> str:
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _write_lines(path, lines):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def write_ber_csv(path, cfg: ExperimentConfig, results):
    lines = [
        "# figure: ber-vs-snr-sync-comparison",
        f"# scenario={cfg.scenario} offset_range={cfg.effective_offset_range()!r} "
        f"samples_per_point={cfg.samples_per_point} workers={cfg.workers} "
        f"seed={cfg.master_seed}",
        "snr_db,scenario,ber,num_bits,num_errors,seed",
    ]
    for r in results:
        lines.append(f"{_fmt(r.snr_db)},{r.scenario},{_fmt(r.ber)},"
                     f"{r.num_bits},{r.num_errors},{r.seed}")
    _write_lines(path, lines)


def write_mi_csv(path, cfg: ExperimentConfig, estimates):
    lines = [
        "# figure: mutual-information-vs-snr-sync-comparison",
        f"# scenario={cfg.scenario} offset_range={cfg.effective_offset_range()!r} "
        f"samples_per_point={cfg.samples_per_point} seed={cfg.master_seed}",
        "snr_db,scenario,mi_bits_per_dim,num_samples,num_workers,seed",
    ]
    for e in estimates:
        lines.append(f"{_fmt(e.snr_db)},{e.scenario},{_fmt(e.mi_bits_per_dim)},"
                     f"{e.num_samples},{cfg.workers},{e.seed}")
    _write_lines(path, lines)


def write_penalty_csv(path, cfg: ExperimentConfig, curves, summary):
    lines = [
        "# figure: sync-error-penalty-curves",
        f"# rolloff={cfg.rolloff!r} truncation={cfg.truncation} snr0_db=10.0",
        "curve,parameter,penalty_db",
    ]
    names = {"theta_rad": "phase", "dt_over_T": "time"}
    for curve in curves:
        cname = names.get(curve.parameter_name, curve.parameter_name)
        for p, v in curve.points:
            lines.append(f"{cname},{_fmt(p)},{_fmt(v)}")
    for key, val in summary.items():
        lines.append(f"# {key} = {_fmt(val)}")
    _write_lines(path, lines)


# ---------------------------------------------------------------------------
# horizontal (dB) curve comparison


def snr_at_level(snrs, values, level, log_scale=False):
    """SNR at which a curve crosses a target ordinate (linear interpolation).

    log_scale interpolates in log10 of the ordinate (use for BER curves).
    Returns nan when the curve never brackets the level.
    """
    s = np.asarray(snrs, dtype=float)
    v = np.asarray(values, dtype=float)
    if log_scale:
        good = v > 0
        s, v = s[good], np.log10(v[good])
        level = math.log10(level)
    for i in range(len(s) - 1):
        lo, hi = v[i], v[i + 1]
        if lo == hi:
            continue
        if (lo - level) * (hi - level) <= 0:
            return float(s[i] + (s[i + 1] - s[i]) * (level - lo) / (hi - lo))
    return math.nan


def horizontal_gap_db(ref_snrs, ref_values, test_snrs, test_values, level,
                      log_scale=False) -> float:
    """SNR gap between two curves at one ordinate: test crossing - ref crossing."""
    return (snr_at_level(test_snrs, test_values, level, log_scale)
            - snr_at_level(ref_snrs, ref_values, level, log_scale))


def max_horizontal_gap_db(ref_snrs, ref_values, test_snrs, test_values,
                          snr_lo, snr_hi) -> float:
    """Largest SNR gap of an increasing test curve to the reference curve.

    For each test point inside [snr_lo, snr_hi] whose ordinate falls inside
    the reference range, interpolate the reference SNR at that ordinate and
    take the worst (test - ref) difference.  The reference is monotonized
    (running maximum) so Monte-Carlo jitter cannot break the interpolation.
    """
    rs = np.asarray(ref_snrs, dtype=float)
    rv = np.maximum.accumulate(np.asarray(ref_values, dtype=float))
    worst = -math.inf
    for s, v in zip(test_snrs, test_values):
        if not snr_lo <= s <= snr_hi:
            continue
        if not rv[0] <= v <= rv[-1]:
            continue
        worst = max(worst, s - float(np.interp(v, rv, rs)))
    return worst
